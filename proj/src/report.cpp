#include "ideal/report.hpp"

namespace ideal {

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const json& j) {
    return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

json shapes_json(const std::vector<Complex>& shapes) {
    json arr = json::array();
    for (Complex z : shapes) arr.push_back(complex_json(z));
    return arr;
}

namespace {

json equation_json(const MonomialEquation& eq) {
    json j{{"a", eq.a}, {"b", eq.b}, {"sign", eq.sign}};
    if (!eq.label.empty()) j["label"] = eq.label;
    return j;
}

const char* slot_name(ShapeSlot s) {
    switch (s) {
        case ShapeSlot::Z: return "z";
        case ShapeSlot::ZPrime: return "z'";
        default: return "z''";
    }
}

}  // namespace

json validate_result(const Triangulation& tri) {
    json j;
    j["name"] = tri.name;
    j["tetrahedra"] = tri.tets.size();
    const auto classes = compute_edge_classes(tri);
    j["edge_class_count"] = classes.size();
    json jc = json::array();
    for (const auto& c : classes) {
        json members = json::array();
        for (const auto& m : c.members)
            members.push_back(json{{"tet", m.tet}, {"edge", m.edge}, {"slot", slot_name(m.slot)}});
        jc.push_back(members);
    }
    j["edge_classes"] = jc;
    json eqs = json::array();
    for (const auto& eq : build_gluing_equations(tri, classes)) eqs.push_back(equation_json(eq));
    j["derived_equations"] = eqs;
    if (!tri.explicit_equations.empty()) {
        json ex = json::array();
        for (const auto& eq : tri.explicit_equations) ex.push_back(equation_json(eq));
        j["explicit_equations"] = ex;
    }
    json curves = json::object();
    for (const auto& [label, eq] : tri.curves) curves[label] = equation_json(eq);
    j["curves"] = curves;
    return j;
}

json solve_result(const EquationSystem& sys, const ShapeAssignment& solution) {
    json j;
    j["shapes"] = shapes_json(solution.shapes);
    j["positively_oriented"] = solution.positively_oriented();
    j["volume"] = volume(solution);
    double resid = 0.0;
    for (Complex r : eval_residuals(sys, solution)) resid = std::max(resid, std::abs(r));
    for (const auto& [label, eq] : sys.curves) {
        HolonomyValue h = holonomy(sys, label, solution);
        if (!h.pole) resid = std::max(resid, std::abs(h.value - 1.0));
        j["holonomies"][label] = h.pole ? json{{"pole", true}} : complex_json(h.value);
    }
    j["max_residual"] = resid;
    return j;
}

json fill_result(const DegenerationReport& rep) {
    json j;
    j["outcome"] = to_string(rep.outcome);
    j["t_reached"] = rep.t_reached;
    j["steps_taken"] = rep.steps_taken;
    j["final_shapes"] = shapes_json(rep.final_shapes.shapes);
    j["volume"] = rep.volume;
    json collapsed = json::array();
    for (const auto& c : rep.collapsed)
        collapsed.push_back(json{{"tet", c.tet}, {"limit", to_string(c.limit)}});
    j["collapsed"] = collapsed;
    json hols = json::object();
    for (const auto& [label, h] : rep.holonomy_values)
        hols[label] = h.pole ? json{{"pole", true}} : complex_json(h.value);
    j["holonomies"] = hols;
    if (rep.root_of_unity) {
        const auto& r = *rep.root_of_unity;
        j["root_of_unity"] = json{{"lambda", complex_json(r.lambda)},
                                  {"order", r.order},
                                  {"trace", complex_json(r.trace)}};
    }
    return j;
}

json tangent_result(const EquationSystem& sys, const ShapeAssignment& at, double rank_tol) {
    json j;
    j["shapes"] = shapes_json(at.shapes);
    j["nullity"] = tangent_nullity(sys, at, rank_tol);
    j["singular_values"] = edge_singular_values(sys, at);
    return j;
}

json ptb_result(Complex gamma) {
    json j;
    j["gamma"] = complex_json(gamma);
    const auto p = ptb::x0_point(gamma);
    j["character"] = json{{"alpha", complex_json(p.alpha)}, {"beta", complex_json(p.beta)},
                          {"tau", complex_json(p.tau)},     {"trAT", complex_json(p.trAT)},
                          {"trBT", complex_json(p.trBT)},   {"trABT", complex_json(p.trABT)},
                          {"trLT", complex_json(p.trLT)},   {"trL", complex_json(p.trL)}};
    const auto rep = ptb::build_representation(p);
    j["trace_residuals"] = json{{"max", ptb::verify_star_system(p, rep).max()}};
    j["plane_curve_residual"] = ptb::plane_curve_check(p, rep);

    json limits = json::array();
    for (auto dir : {ptb::LimitDirection::GammaToZeroPlus, ptb::LimitDirection::GammaToZeroMinus,
                     ptb::LimitDirection::GammaToInfinityPlus,
                     ptb::LimitDirection::GammaToInfinityMinus}) {
        const auto lim = ptb::ideal_point_limits(dir);
        json l;
        l["direction"] = ptb::to_string(dir);
        l["finite_slope"] = lim.finite_slope;
        l["root_of_unity"] = json{{"lambda", complex_json(lim.root.lambda)},
                                  {"order", lim.root.order}};
        l["alpha_limit"] = complex_json(lim.alpha_limit);
        l["gamma_over_alpha_limit"] = complex_json(lim.gamma_over_alpha_limit);
        limits.push_back(l);
    }
    j["ideal_point_limits"] = limits;

    json complete = json::array();
    for (const auto& c : ptb::find_complete_character())
        complete.push_back(json{{"alpha", complex_json(c.alpha)},
                                {"gamma", complex_json(c.gamma)},
                                {"tau", complex_json(c.tau)},
                                {"trL", complex_json(c.trL)}});
    j["complete_characters"] = complete;

    json surfaces = json::array();
    for (const auto& s : ptb::known_surfaces())
        surfaces.push_back(json{{"name", s.name},
                                {"slope", s.slope},
                                {"boundary_components", s.boundary_components},
                                {"genus", s.genus}});
    j["surfaces"] = surfaces;
    return j;
}

json run_report(const std::string& command, const std::string& input, const SolveOptions& opts,
                json result, double wall_time_s) {
    json j;
    j["command"] = command;
    j["input"] = input;
    j["tolerances"] = json{{"newton", opts.newton_tol},
                           {"degeneracy", opts.degeneracy_delta},
                           {"root", opts.root_tol}};
    j["result"] = std::move(result);
    j["wall_time_s"] = wall_time_s;
    return j;
}

}  // namespace ideal
