#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ideal/report.hpp"

using namespace ideal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInconclusive = 4;

struct GlobalOpts {
    std::string output = "json";
    double tol = -1.0;  // unset
    int max_steps = -1;
    bool quiet = false;
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

SolveOptions make_options(const GlobalOpts& g) {
    SolveOptions opts;
    if (g.tol > 0) opts.newton_tol = g.tol;
    if (g.max_steps > 0) opts.max_newton_iterations = g.max_steps;
    return opts;
}

Triangulation load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_triangulation(buf.str());
}

std::vector<Complex> parse_shape_list(const std::string& s) {
    std::vector<Complex> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        size_t comma = tok.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("shape entries are re,im pairs separated by spaces");
        out.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    }
    if (out.empty()) throw std::invalid_argument("empty shape list");
    return out;
}

void emit(const GlobalOpts& g, const json& report, const std::string& text_summary) {
    if (g.quiet) return;
    if (g.output == "text")
        std::cout << text_summary << "\n";
    else
        std::cout << report.dump(2) << "\n";
}

EquationSystem system_for_mode(const Triangulation& tri, const std::string& mode,
                               const SolveOptions& opts) {
    if (mode == "explicit") return EquationSystem::explicit_mode(tri);
    if (mode == "derived") return derived_mode_consistent(tri, opts);
    // auto: explicit when the file has equations, derived otherwise
    return tri.explicit_equations.empty() ? derived_mode_consistent(tri, opts)
                                          : EquationSystem::explicit_mode(tri);
}

ShapeAssignment seed_for(const Triangulation& tri, const EquationSystem& sys,
                         const std::string& seed_arg) {
    if (!seed_arg.empty()) return ShapeAssignment{parse_shape_list(seed_arg)};
    if (!tri.seed.empty()) return ShapeAssignment{tri.seed};
    return sys.default_seed();
}

int cmd_validate(const GlobalOpts& g, const std::string& path) {
    Timer timer;
    Triangulation tri = load(path);
    json result = validate_result(tri);
    json report = run_report("validate", path, make_options(g), result, timer.seconds());
    std::ostringstream text;
    text << tri.name << ": " << tri.tets.size() << " tetrahedra, "
         << result["edge_class_count"].get<size_t>() << " edge classes, " << tri.curves.size()
         << " curves";
    emit(g, report, text.str());
    return kExitOk;
}

int cmd_solve(const GlobalOpts& g, const std::string& path, const std::string& mode,
              const std::string& seed_arg) {
    Timer timer;
    Triangulation tri = load(path);
    SolveOptions opts = make_options(g);
    EquationSystem sys = system_for_mode(tri, mode, opts);
    ShapeAssignment sol = solve_complete(sys, seed_for(tri, sys, seed_arg), opts);
    json result = solve_result(sys, sol);
    json report = run_report("solve", path, opts, result, timer.seconds());
    std::ostringstream text;
    text << "volume " << result["volume"].get<double>() << ", max residual "
         << result["max_residual"].get<double>();
    emit(g, report, text.str());
    return kExitOk;
}

int cmd_fill(const GlobalOpts& g, const std::string& path, const std::string& curve, int n,
             const std::string& mode, const std::string& seed_arg) {
    Timer timer;
    Triangulation tri = load(path);
    SolveOptions opts = make_options(g);
    EquationSystem sys = system_for_mode(tri, mode, opts);
    if (!sys.curves.count(curve)) throw ParseError(0, "no curve named '" + curve + "'");
    ShapeAssignment complete = solve_complete(sys, seed_for(tri, sys, seed_arg), opts);
    DegenerationReport rep = continue_filling(sys, curve, n, complete, opts);
    json result = fill_result(rep);
    json report = run_report("fill", path, opts, result, timer.seconds());
    std::ostringstream text;
    text << curve << " 1/" << n << ": " << to_string(rep.outcome) << " at t=" << rep.t_reached;
    if (rep.root_of_unity)
        text << ", root of unity order " << rep.root_of_unity->order;
    emit(g, report, text.str());
    return rep.outcome == Outcome::Inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_search(const GlobalOpts& g, const std::string& path, const std::string& orders_arg,
               const std::string& mode) {
    Timer timer;
    Triangulation tri = load(path);
    SolveOptions opts = make_options(g);
    EquationSystem sys = system_for_mode(tri, mode, opts);
    std::vector<int> orders;
    {
        std::stringstream ss(orders_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            int n = std::stoi(item);
            if (n < 1) throw std::invalid_argument("orders must be >= 1");
            orders.push_back(n);
        }
        std::sort(orders.begin(), orders.end());
    }
    ShapeAssignment complete = solve_complete(sys, seed_for(tri, sys, ""), opts);

    json rows = json::array();
    std::ostringstream text;
    bool any_inconclusive = false;
    for (const auto& [label, eq] : sys.curves) {  // map iteration: sorted by label
        for (int n : orders) {
            json row{{"curve", label}, {"n", n}};
            try {
                DegenerationReport rep = continue_filling(sys, label, n, complete, opts);
                row["outcome"] = to_string(rep.outcome);
                row["volume"] = rep.volume;
                if (rep.root_of_unity)
                    row["root_of_unity"] = json{{"lambda", complex_json(rep.root_of_unity->lambda)},
                                                {"order", rep.root_of_unity->order}};
                if (rep.outcome == Outcome::Inconclusive) any_inconclusive = true;
                text << label << " 1/" << n << ": " << to_string(rep.outcome);
                if (rep.root_of_unity) text << " (root order " << rep.root_of_unity->order << ")";
            } catch (const NumericalError& e) {
                row["error"] = e.what();
                any_inconclusive = true;
                text << label << " 1/" << n << ": error " << e.what();
            }
            text << "\n";
            rows.push_back(std::move(row));
        }
    }
    json result{{"rows", rows}};
    json report = run_report("search", path, opts, result, timer.seconds());
    std::string t = text.str();
    if (!t.empty()) t.pop_back();
    emit(g, report, t);
    return any_inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_tangent(const GlobalOpts& g, const std::string& path, const std::string& at,
                const std::string& mode) {
    Timer timer;
    Triangulation tri = load(path);
    SolveOptions opts = make_options(g);
    EquationSystem sys = system_for_mode(tri, mode, opts);
    ShapeAssignment point{parse_shape_list(at)};
    if (point.shapes.size() != sys.num_shapes())
        throw std::invalid_argument("--at needs one re,im pair per tetrahedron");
    json result = tangent_result(sys, point, opts.solver_floor);
    json report = run_report("tangent", path, opts, result, timer.seconds());
    std::ostringstream text;
    text << "nullity " << result["nullity"].get<int>();
    emit(g, report, text.str());
    return kExitOk;
}

int cmd_ptb(const GlobalOpts& g, const std::string& gamma_arg, int samples, unsigned rng_seed) {
    Timer timer;
    SolveOptions opts = make_options(g);
    Complex gamma(1.0, 1.0);
    if (!gamma_arg.empty()) {
        auto v = parse_shape_list(gamma_arg);
        if (v.size() != 1) throw std::invalid_argument("--gamma takes a single re,im pair");
        gamma = v[0];
    }
    json result = ptb_result(gamma);

    // Residual table over random gamma in the annulus 0.3 < |gamma| < 3.
    std::mt19937 rng(rng_seed);
    std::uniform_real_distribution<double> radius(0.3, 3.0), angle(0.0, 2 * 3.14159265358979324);
    json table = json::array();
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double r = radius(rng), th = angle(rng);
        const Complex gs = std::polar(r, th);
        const auto p = ptb::x0_point(gs);
        const auto rep = ptb::build_representation(p);
        const double resid = std::max(ptb::verify_star_system(p, rep).max(),
                                      ptb::plane_curve_check(p, rep));
        worst = std::max(worst, resid);
        table.push_back(json{{"gamma", complex_json(gs)}, {"max_residual", resid}});
    }
    result["samples"] = table;
    result["worst_sample_residual"] = worst;

    json report = run_report("ptb", "builtin:ptb", opts, result, timer.seconds());
    std::ostringstream text;
    text << "gamma " << gamma.real() << "+" << gamma.imag() << "i: trace residual "
         << result["trace_residuals"]["max"].get<double>() << ", plane curve "
         << result["plane_curve_residual"].get<double>() << ", worst of " << samples
         << " samples " << worst;
    emit(g, report, text.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ideal triangulation deformations and character-variety checks"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--output", g.output, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--tol", g.tol, "Newton tolerance");
    app.add_option("--max-steps", g.max_steps, "Newton iteration cap");
    app.add_flag("--quiet", g.quiet, "suppress report output");

    std::string path, mode = "auto", seed_arg, curve, at, orders = "3", gamma_arg;
    int n = 3, samples = 5;
    unsigned rng_seed = 0;

    auto* validate = app.add_subcommand("validate", "parse a file and summarize it");
    validate->add_option("path", path)->required();

    auto* solve = app.add_subcommand("solve", "solve for the complete structure");
    solve->add_option("path", path)->required();
    solve->add_option("--mode", mode, "explicit, derived, or auto");
    solve->add_option("--seed", seed_arg, "initial shapes, 're,im re,im ...'");

    auto* fill = app.add_subcommand("fill", "continuation toward a 1/n orbifold filling");
    fill->add_option("path", path)->required();
    fill->add_option("--curve", curve)->required();
    fill->add_option("--n", n)->required();
    fill->add_option("--mode", mode);
    fill->add_option("--seed", seed_arg);

    auto* search = app.add_subcommand("search", "fill every curve at each order and tabulate");
    search->add_option("path", path)->required();
    search->add_option("--orders", orders, "comma-separated orders, e.g. 2,3");
    search->add_option("--mode", mode);

    auto* tangent = app.add_subcommand("tangent", "edge-system tangent nullity at a point");
    tangent->add_option("path", path)->required();
    tangent->add_option("--at", at, "shapes, 're,im re,im ...'")->required();
    tangent->add_option("--mode", mode);

    auto* ptb = app.add_subcommand("ptb", "punctured-torus-bundle verification suite");
    ptb->add_option("--gamma", gamma_arg, "base point, 're,im'");
    ptb->add_option("--samples", samples, "random residual samples");
    ptb->add_option("--seed", rng_seed, "RNG seed for the samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*validate) return cmd_validate(g, path);
        if (*solve) return cmd_solve(g, path, mode, seed_arg);
        if (*fill) return cmd_fill(g, path, curve, n, mode, seed_arg);
        if (*search) return cmd_search(g, path, orders, mode);
        if (*tangent) return cmd_tangent(g, path, at, mode);
        if (*ptb) return cmd_ptb(g, gamma_arg, samples, rng_seed);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
