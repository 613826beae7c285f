#include "ideal/deformation.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ideal {

namespace {

constexpr double kPi = std::numbers::pi;

Complex ipow(Complex z, int e) {
    if (e < 0) return 1.0 / ipow(z, -e);
    Complex r = 1.0;
    while (e) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

// Denominator-cleared equation  P(z) = rhs * Q(z)  with P, Q products of
// z_i^{p} (1-z_i)^{q}, p,q >= 0.  Valid at degenerate points.
struct ClearedEquation {
    std::vector<int> ap, bp;  // exponents of P
    std::vector<int> am, bm;  // exponents of Q
    Complex rhs;
};

ClearedEquation clear_equation(const MonomialEquation& eq, Complex rhs) {
    ClearedEquation c;
    const size_t n = eq.a.size();
    c.ap.resize(n); c.bp.resize(n); c.am.resize(n); c.bm.resize(n);
    for (size_t i = 0; i < n; ++i) {
        c.ap[i] = std::max(eq.a[i], 0);
        c.am[i] = std::max(-eq.a[i], 0);
        c.bp[i] = std::max(eq.b[i], 0);
        c.bm[i] = std::max(-eq.b[i], 0);
    }
    c.rhs = rhs;
    return c;
}

Complex monomial_value(const std::vector<int>& p, const std::vector<int>& q,
                       const std::vector<Complex>& z) {
    Complex r = 1.0;
    for (size_t i = 0; i < z.size(); ++i) r *= ipow(z[i], p[i]) * ipow(1.0 - z[i], q[i]);
    return r;
}

// d/dz_i of a nonnegative-exponent monomial.
Complex monomial_derivative(const std::vector<int>& p, const std::vector<int>& q,
                            const std::vector<Complex>& z, size_t i) {
    Complex rest = 1.0;
    for (size_t j = 0; j < z.size(); ++j)
        if (j != i) rest *= ipow(z[j], p[j]) * ipow(1.0 - z[j], q[j]);
    Complex f = p[i] ? double(p[i]) * ipow(z[i], p[i] - 1) * ipow(1.0 - z[i], q[i]) : Complex(0);
    Complex g = q[i] ? double(q[i]) * ipow(z[i], p[i]) * ipow(1.0 - z[i], q[i] - 1) : Complex(0);
    return (f - g) * rest;
}

Eigen::VectorXcd cleared_residuals(const std::vector<ClearedEquation>& eqs,
                                   const std::vector<Complex>& z) {
    Eigen::VectorXcd F(eqs.size());
    for (size_t j = 0; j < eqs.size(); ++j)
        F(j) = monomial_value(eqs[j].ap, eqs[j].bp, z) -
               eqs[j].rhs * monomial_value(eqs[j].am, eqs[j].bm, z);
    return F;
}

Eigen::MatrixXcd cleared_jacobian(const std::vector<ClearedEquation>& eqs,
                                  const std::vector<Complex>& z) {
    Eigen::MatrixXcd J(eqs.size(), z.size());
    for (size_t j = 0; j < eqs.size(); ++j)
        for (size_t i = 0; i < z.size(); ++i)
            J(j, i) = monomial_derivative(eqs[j].ap, eqs[j].bp, z, i) -
                      eqs[j].rhs * monomial_derivative(eqs[j].am, eqs[j].bm, z, i);
    return J;
}

struct NewtonResult {
    std::vector<Complex> shapes;
    bool converged = false;
    double residual = 0.0;
    int iterations = 0;
};

// Damped Gauss-Newton with SVD pseudoinverse on the stacked cleared system.
NewtonResult newton_solve(const std::vector<ClearedEquation>& eqs, std::vector<Complex> z,
                          double tol, int max_iterations) {
    NewtonResult best;
    best.shapes = z;
    best.residual = cleared_residuals(eqs, z).cwiseAbs().maxCoeff();
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXcd F = cleared_residuals(eqs, z);
        double rmax = F.cwiseAbs().maxCoeff();
        if (rmax < best.residual) {
            best.residual = rmax;
            best.shapes = z;
        }
        if (rmax < tol) {
            best.converged = true;
            best.iterations = it;
            return best;
        }
        Eigen::MatrixXcd J = cleared_jacobian(eqs, z);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-14);
        Eigen::VectorXcd dz = svd.solve(-F);
        // halve the step until the residual norm drops
        double base = F.norm();
        double lambda = 1.0;
        std::vector<Complex> zt = z;
        bool moved = false;
        for (int k = 0; k < 40; ++k) {
            for (size_t i = 0; i < z.size(); ++i) zt[i] = z[i] + lambda * dz(i);
            if (cleared_residuals(eqs, zt).norm() < base) {
                moved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!moved) break;  // stuck at a local minimum of the residual
        z = zt;
    }
    double rmax = cleared_residuals(eqs, z).cwiseAbs().maxCoeff();
    if (rmax < best.residual) {
        best.residual = rmax;
        best.shapes = z;
    }
    best.converged = best.residual < tol;
    best.iterations = max_iterations;
    return best;
}

std::vector<ClearedEquation> edge_system(const EquationSystem& sys) {
    std::vector<ClearedEquation> eqs;
    eqs.reserve(sys.equations.size());
    for (const auto& e : sys.equations) eqs.push_back(clear_equation(e, Complex(e.sign)));
    return eqs;
}

// Target h = u for a curve:  sign * P/Q = u  <=>  P = (u * sign) Q  (sign = +-1).
ClearedEquation curve_target(const MonomialEquation& c, Complex u) {
    return clear_equation(c, u * double(c.sign));
}

Complex li2(Complex z);

// Li2 via the Bernoulli series in u = -log(1-z); converges fast once z is
// reduced to |z| <= 1, Re z <= 1/2.
Complex li2_series(Complex z) {
    static const double coeff[] = {
        // B_n / (n+1)! for n = 0,1,2,4,6,...,26 (odd n > 1 vanish)
        1.0,
        -1.0 / 4.0,
        1.0 / 36.0,
        -1.0 / 3600.0,
        1.0 / 211680.0,
        -1.0 / 10886400.0,
        1.0 / 526901760.0,
        -4.0647616451442255e-11,
        8.9216910204564526e-13,
        -1.9939295860721076e-14,
        4.5189800296199182e-16,
        -1.0356517612181247e-17,
        2.3952186210261867e-19,
        -5.5817858743250093e-21,
    };
    Complex u = -std::log(1.0 - z);
    Complex u2 = u * u;
    Complex sum = u * coeff[0] + u2 * coeff[1];
    Complex upow = u * u2;  // u^(2k+1), k = 1
    for (int k = 2; k < 14; ++k) {
        Complex term = upow * coeff[k];
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        upow *= u2;
    }
    return sum;
}

Complex li2(Complex z) {
    if (z == Complex(0)) return 0.0;
    if (z == Complex(1)) return kPi * kPi / 6.0;
    if (std::abs(z) > 1.0) {
        Complex lg = std::log(-z);
        return -li2(1.0 / z) - kPi * kPi / 6.0 - 0.5 * lg * lg;
    }
    if (z.real() > 0.5)
        return kPi * kPi / 6.0 - std::log(z) * std::log(1.0 - z) - li2(1.0 - z);
    return li2_series(z);
}

bool near_degenerate(Complex z, double delta) {
    return std::abs(z) <= delta || std::abs(z - 1.0) <= delta || std::abs(z) >= 1.0 / delta;
}

}  // namespace

bool ShapeAssignment::nondegenerate(double delta) const {
    return std::none_of(shapes.begin(), shapes.end(),
                        [&](Complex z) { return near_degenerate(z, delta); });
}

bool ShapeAssignment::positively_oriented() const {
    return std::all_of(shapes.begin(), shapes.end(), [](Complex z) { return z.imag() > 0.0; });
}

size_t EquationSystem::num_shapes() const {
    if (!equations.empty()) return equations.front().a.size();
    if (!curves.empty()) return curves.begin()->second.a.size();
    return 0;
}

ShapeAssignment EquationSystem::default_seed() const {
    return ShapeAssignment{std::vector<Complex>(num_shapes(), Complex(0.5, 0.866))};
}

EquationSystem EquationSystem::explicit_mode(const Triangulation& tri) {
    if (tri.explicit_equations.empty())
        throw NumericalError("file carries no explicit equations");
    return EquationSystem{tri.explicit_equations, tri.curves};
}

EquationSystem EquationSystem::derived_mode(const Triangulation& tri) {
    auto classes = compute_edge_classes(tri);
    return EquationSystem{build_gluing_equations(tri, classes), tri.curves};
}

EquationSystem derived_mode_consistent(const Triangulation& tri, const SolveOptions& opts) {
    EquationSystem derived = EquationSystem::derived_mode(tri);
    if (tri.explicit_equations.empty()) return derived;
    EquationSystem expl = EquationSystem::explicit_mode(tri);
    ShapeAssignment seed = tri.seed.empty() ? expl.default_seed() : ShapeAssignment{tri.seed};
    ShapeAssignment sol = solve_complete(expl, seed, opts);
    auto transform = match_labeling(derived.equations, sol);
    for (auto& [label, c] : derived.curves) c = relabel_equation(c, transform);
    return derived;
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::HyperbolicSolution: return "HYPERBOLIC_SOLUTION";
        case Outcome::IdealPointDegeneration: return "IDEAL_POINT_DEGENERATION";
        default: return "INCONCLUSIVE";
    }
}

std::string to_string(CollapseLimit l) {
    switch (l) {
        case CollapseLimit::Zero: return "0";
        case CollapseLimit::One: return "1";
        default: return "inf";
    }
}

std::vector<Complex> eval_residuals(const EquationSystem& sys, const ShapeAssignment& s) {
    std::vector<Complex> out;
    out.reserve(sys.equations.size());
    for (const auto& eq : sys.equations) {
        Complex f = 1.0;
        for (size_t i = 0; i < s.shapes.size(); ++i) {
            Complex z = s.shapes[i];
            if ((z == Complex(0) && eq.a[i] < 0) || (z == Complex(1) && eq.b[i] < 0))
                throw DegenerateEvaluation("equation '" + eq.label +
                                           "' divides by zero at tetrahedron " + std::to_string(i));
            f *= ipow(z, eq.a[i]) * ipow(1.0 - z, eq.b[i]);
        }
        out.push_back(f - double(eq.sign));
    }
    return out;
}

std::vector<std::vector<Complex>> eval_jacobian(const EquationSystem& sys,
                                                const ShapeAssignment& s) {
    auto residuals = eval_residuals(sys, s);
    std::vector<std::vector<Complex>> J(sys.equations.size());
    for (size_t j = 0; j < sys.equations.size(); ++j) {
        const auto& eq = sys.equations[j];
        Complex f = residuals[j] + double(eq.sign);
        J[j].resize(s.shapes.size());
        for (size_t i = 0; i < s.shapes.size(); ++i) {
            Complex z = s.shapes[i];
            if ((z == Complex(0) && eq.a[i] != 0) || (z == Complex(1) && eq.b[i] != 0))
                throw DegenerateEvaluation("jacobian of '" + eq.label +
                                           "' is singular at tetrahedron " + std::to_string(i));
            Complex term = 0.0;
            if (eq.a[i]) term += double(eq.a[i]) / z;
            if (eq.b[i]) term -= double(eq.b[i]) / (1.0 - z);
            J[j][i] = f * term;
        }
    }
    return J;
}

HolonomyValue holonomy(const EquationSystem& sys, const std::string& curve,
                       const ShapeAssignment& s) {
    auto it = sys.curves.find(curve);
    if (it == sys.curves.end()) throw NumericalError("unknown curve '" + curve + "'");
    const auto& c = it->second;
    Complex f = double(c.sign);
    for (size_t i = 0; i < s.shapes.size(); ++i) {
        Complex z = s.shapes[i];
        if ((z == Complex(0) && c.a[i] < 0) || (z == Complex(1) && c.b[i] < 0))
            return {Complex(0), true};
        f *= ipow(z, c.a[i]) * ipow(1.0 - z, c.b[i]);
    }
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag()) || std::abs(f) > 1e6)
        return {f, true};
    return {f, false};
}

ShapeAssignment solve_complete(const EquationSystem& sys, const ShapeAssignment& seed,
                               const SolveOptions& opts) {
    if (sys.curves.empty())
        throw NumericalError("completeness solve needs at least one peripheral curve");
    std::vector<ClearedEquation> eqs = edge_system(sys);
    for (const auto& [label, c] : sys.curves) eqs.push_back(curve_target(c, Complex(1.0)));

    NewtonResult r = newton_solve(eqs, seed.shapes, opts.newton_tol, opts.max_newton_iterations);
    if (!r.converged)
        throw NoConvergence("no convergence after " + std::to_string(opts.max_newton_iterations) +
                            " iterations, residual " + std::to_string(r.residual));
    ShapeAssignment result{r.shapes};
    if (!result.nondegenerate(opts.degeneracy_delta))
        throw DegenerateLimit("iterates left the nondegenerate region");
    if (!result.positively_oriented())
        throw DegenerateLimit("solution is not positively oriented");
    return result;
}

double bloch_wigner(Complex z) {
    if (std::abs(z.imag()) < 1e-14) return 0.0;  // D vanishes on the real line
    return li2(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

double volume(const ShapeAssignment& s, double delta) {
    double v = 0.0;
    for (Complex z : s.shapes)
        if (!near_degenerate(z, delta)) v += bloch_wigner(z);
    return v;
}

std::vector<double> edge_singular_values(const EquationSystem& sys, const ShapeAssignment& s) {
    auto eqs = edge_system(sys);
    Eigen::MatrixXcd J = cleared_jacobian(eqs, s.shapes);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
    std::vector<double> sv(svd.singularValues().data(),
                           svd.singularValues().data() + svd.singularValues().size());
    return sv;
}

int tangent_nullity(const EquationSystem& sys, const ShapeAssignment& s, double rank_tol) {
    auto sv = edge_singular_values(sys, s);
    if (sv.empty()) return static_cast<int>(s.shapes.size());
    double cutoff = rank_tol * sv.front();
    int rank = 0;
    for (double v : sv)
        if (v > cutoff) ++rank;
    return static_cast<int>(s.shapes.size()) - rank;
}

RootOfUnity detect_root_of_unity(Complex h, std::optional<Complex> finite_trace_hint,
                                 int max_order, double tol) {
    double mod = std::abs(h);
    if (std::abs(mod - 1.0) > tol)
        throw NotUnitModulus("|h| = " + std::to_string(mod) + " is off the unit circle");
    Complex lambda = std::sqrt(h / mod);  // principal root on the unit circle

    auto order_of = [&](Complex l) -> int {
        Complex p = 1.0;
        for (int k = 1; k <= max_order; ++k) {
            p *= l;
            if (std::abs(p - 1.0) < tol) return k;
        }
        return 0;  // not found
    };

    Complex cand[2] = {lambda, -lambda};
    int ord[2] = {order_of(cand[0]), order_of(cand[1])};

    // Default to the principal root; a finite peripheral trace, when known,
    // disambiguates the sign of lambda instead.
    int pick = 0;
    if (finite_trace_hint) {
        Complex hint = *finite_trace_hint;
        pick = std::abs(cand[0] + 1.0 / cand[0] - hint) <= std::abs(cand[1] + 1.0 / cand[1] - hint)
                   ? 0
                   : 1;
    }
    if (!ord[pick] && ord[1 - pick]) pick = 1 - pick;
    if (!ord[pick])
        throw OrderNotFound("no order <= " + std::to_string(max_order) + " fits lambda");
    return {cand[pick], ord[pick], cand[pick] + 1.0 / cand[pick]};
}

DegenerationReport continue_filling(const EquationSystem& sys, const std::string& curve, int n,
                                    const ShapeAssignment& start, const SolveOptions& opts) {
    auto cit = sys.curves.find(curve);
    if (cit == sys.curves.end()) throw NumericalError("unknown curve '" + curve + "'");
    const MonomialEquation& fill = cit->second;
    if (n < 1) throw NumericalError("filling order must be >= 1");

    auto system_at = [&](Complex u) {
        std::vector<ClearedEquation> eqs = edge_system(sys);
        eqs.push_back(curve_target(fill, u));
        return eqs;
    };
    // n = 1 keeps the target at 1 throughout (the full loop around the circle
    // would needlessly leave the complete structure).
    auto target = [&](double t) {
        return n == 1 ? Complex(1.0) : std::exp(Complex(0, 2.0 * kPi * t / double(n)));
    };

    std::vector<Complex> z = start.shapes;
    double t = 0.0;
    double dt = opts.initial_step;
    int steps = 0;
    bool reached_end = false;

    while (t < 1.0) {
        double t_try = std::min(t + dt, 1.0);
        NewtonResult r =
            newton_solve(system_at(target(t_try)), z, opts.newton_tol, opts.max_newton_iterations);
        if (r.converged && ShapeAssignment{r.shapes}.nondegenerate(opts.solver_floor)) {
            z = r.shapes;
            t = t_try;
            ++steps;
            dt = std::min(dt * 2.0, opts.initial_step);
            if (t >= 1.0) reached_end = true;
        } else {
            dt *= 0.5;
            if (dt < opts.min_step) break;
        }
    }

    // Polish at the full-precision floor.  Near an ideal point the loop above
    // stalls at pseudo-solutions a distance ~sqrt(newton_tol) from the limit;
    // pushing the residual to rounding level moves the point onto the limit
    // within ~1e-7 and makes the collapsed classification unambiguous.
    double t_final = t;
    {
        NewtonResult full = newton_solve(system_at(target(1.0)), z, 5e-15, 80);
        if (full.residual <= opts.newton_tol) {
            z = full.shapes;
            t_final = 1.0;
        } else if (!reached_end) {
            NewtonResult here = newton_solve(system_at(target(t)), z, 5e-15, 80);
            if (here.residual <= opts.newton_tol) z = here.shapes;
        }
    }

    DegenerationReport rep;
    rep.final_shapes = ShapeAssignment{z};
    rep.steps_taken = steps;
    rep.t_reached = t_final;

    for (size_t i = 0; i < z.size(); ++i) {
        if (std::abs(z[i]) <= opts.degeneracy_delta)
            rep.collapsed.push_back({int(i), CollapseLimit::Zero});
        else if (std::abs(z[i] - 1.0) <= opts.degeneracy_delta)
            rep.collapsed.push_back({int(i), CollapseLimit::One});
        else if (std::abs(z[i]) >= 1.0 / opts.degeneracy_delta)
            rep.collapsed.push_back({int(i), CollapseLimit::Infinity});
    }

    // The filling curve's holonomy is the achieved target; evaluating the
    // monomial at a near-collapsed point loses ~|Q|^-1 digits.
    rep.holonomy_values[curve] = {target(t_final), false};
    for (const auto& [label, c] : sys.curves) {
        if (label == curve) continue;
        rep.holonomy_values[label] = holonomy(sys, label, rep.final_shapes);
    }

    if (!rep.collapsed.empty()) {
        rep.outcome = Outcome::IdealPointDegeneration;
    } else if (t_final >= 1.0 && rep.final_shapes.positively_oriented()) {
        rep.outcome = Outcome::HyperbolicSolution;
    } else {
        rep.outcome = Outcome::Inconclusive;
    }

    if (rep.outcome == Outcome::IdealPointDegeneration) {
        for (const auto& [label, hv] : rep.holonomy_values) {
            if (hv.pole) continue;
            if (std::abs(std::abs(hv.value) - 1.0) > opts.root_tol) continue;
            try {
                rep.root_of_unity =
                    detect_root_of_unity(hv.value, std::nullopt, opts.root_max_order, opts.root_tol);
                break;
            } catch (const NumericalError&) {
            }
        }
    }

    rep.volume = volume(rep.final_shapes, opts.degeneracy_delta);
    return rep;
}

std::vector<int> match_labeling(const std::vector<MonomialEquation>& target,
                                const ShapeAssignment& reference_solution) {
    const size_t n = reference_solution.shapes.size();
    if (n > 12) throw NumericalError("labeling search limited to 12 tetrahedra");
    std::vector<int> combo(n, 0);
    size_t total = 1;
    for (size_t i = 0; i < n; ++i) total *= 3;
    for (size_t code = 0; code < total; ++code) {
        size_t c = code;
        for (size_t i = 0; i < n; ++i) {
            combo[i] = int(c % 3);
            c /= 3;
        }
        ShapeAssignment w = relabel_shapes(reference_solution, combo);
        EquationSystem probe{target, {}};
        bool ok = true;
        try {
            for (Complex r : eval_residuals(probe, w))
                if (std::abs(r) > 1e-8) { ok = false; break; }
        } catch (const DegenerateEvaluation&) {
            ok = false;
        }
        if (ok) return combo;
    }
    throw NumericalError("no per-tetrahedron relabeling matches the reference solution");
}

MonomialEquation relabel_equation(const MonomialEquation& eq, const std::vector<int>& transform) {
    MonomialEquation out = eq;
    for (size_t i = 0; i < transform.size(); ++i) {
        int a = eq.a[i], b = eq.b[i];
        // With w the relabeled shape:  w = z'  gives  z = -(1-w)/w,  1-z = 1/w;
        //                              w = z'' gives  z = 1/(1-w),   1-z = -w/(1-w).
        if (transform[i] == 1) {
            out.a[i] = -(a + b);
            out.b[i] = a;
            if (a & 1) out.sign = -out.sign;
        } else if (transform[i] == 2) {
            out.a[i] = b;
            out.b[i] = -(a + b);
            if (b & 1) out.sign = -out.sign;
        }
    }
    return out;
}

ShapeAssignment relabel_shapes(const ShapeAssignment& s, const std::vector<int>& transform) {
    ShapeAssignment out = s;
    for (size_t i = 0; i < transform.size(); ++i) {
        Complex z = s.shapes[i];
        if (transform[i] == 1)
            out.shapes[i] = 1.0 / (1.0 - z);
        else if (transform[i] == 2)
            out.shapes[i] = (z - 1.0) / z;
    }
    return out;
}

}  // namespace ideal
