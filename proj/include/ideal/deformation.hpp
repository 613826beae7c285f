#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ideal/triangulation.hpp"

namespace ideal {

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class NoConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class DegenerateLimit : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class DegenerateEvaluation : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class NotUnitModulus : public NumericalError {
public:
    using NumericalError::NumericalError;
};
class OrderNotFound : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// One complex edge parameter per tetrahedron.
struct ShapeAssignment {
    std::vector<Complex> shapes;

    /// No coordinate within delta of 0 or 1, and none of modulus > 1/delta.
    bool nondegenerate(double delta) const;
    bool positively_oriented() const;  // all Im z_i > 0
};

struct EquationSystem {
    std::vector<MonomialEquation> equations;          // edge equations
    std::map<std::string, MonomialEquation> curves;   // peripheral holonomies

    size_t num_shapes() const;
    ShapeAssignment default_seed() const;  // 0.5 + 0.866i per tetrahedron

    /// Edge equations taken verbatim from the file's `equation` blocks.
    static EquationSystem explicit_mode(const Triangulation& tri);
    /// Edge equations built from the gluing table; curves as given.
    static EquationSystem derived_mode(const Triangulation& tri);
};

struct SolveOptions {
    double newton_tol = 1e-12;
    int max_newton_iterations = 50;
    double degeneracy_delta = 1e-6;   // "collapsed" classification
    double solver_floor = 1e-9;       // nondegeneracy floor during continuation
    double pole_threshold = 1e6;
    double initial_step = 0.01;
    double min_step = 1e-9;
    int root_max_order = 12;
    double root_tol = 1e-6;
};

struct RootOfUnity {
    Complex lambda;  // on the unit circle
    int order;       // minimal n with lambda^n = 1 within tolerance
    Complex trace;   // lambda + 1/lambda
};

enum class Outcome { HyperbolicSolution, IdealPointDegeneration, Inconclusive };
std::string to_string(Outcome o);

enum class CollapseLimit { Zero, One, Infinity };
std::string to_string(CollapseLimit l);

struct CollapsedTet {
    int tet;  // 0-based
    CollapseLimit limit;
};

struct HolonomyValue {
    Complex value{};   // meaningful only when !pole
    bool pole = false;
};

struct DegenerationReport {
    Outcome outcome = Outcome::Inconclusive;
    ShapeAssignment final_shapes;
    std::vector<CollapsedTet> collapsed;
    std::map<std::string, HolonomyValue> holonomy_values;
    std::optional<RootOfUnity> root_of_unity;
    double volume = 0.0;
    int steps_taken = 0;
    double t_reached = 0.0;  // homotopy parameter at the last accepted point
};

/// Residual vector of the edge equations in monomial form:
/// entry j = prod_i z_i^{a_i} (1-z_i)^{b_i} - sign_j.
/// Throws DegenerateEvaluation when a zero base meets a negative exponent.
std::vector<Complex> eval_residuals(const EquationSystem& sys, const ShapeAssignment& s);

/// Analytic Jacobian of eval_residuals: entry (j,i) = f_j(s) * (a_i/z_i - b_i/(1-z_i)).
/// Row-major, one row per equation.
std::vector<std::vector<Complex>> eval_jacobian(const EquationSystem& sys,
                                                const ShapeAssignment& s);

/// Holonomy of a named curve: sign * prod z^a (1-z)^b.  Poles are reported,
/// not thrown.
HolonomyValue holonomy(const EquationSystem& sys, const std::string& curve,
                       const ShapeAssignment& s);

/// Gauss-Newton solve of [edge equations; every curve's holonomy = 1].
ShapeAssignment solve_complete(const EquationSystem& sys, const ShapeAssignment& seed,
                               const SolveOptions& opts = {});

/// Path continuation of [edge equations; h_curve = exp(2 pi i t / n)] for t: 0 -> 1.
DegenerationReport continue_filling(const EquationSystem& sys, const std::string& curve, int n,
                                    const ShapeAssignment& start, const SolveOptions& opts = {});

/// Bloch-Wigner dilogarithm D(z) = Im(Li2(z)) + arg(1-z) log|z|.
double bloch_wigner(Complex z);

/// Sum of D(z_i); shapes within delta of {0,1,inf} contribute 0.
double volume(const ShapeAssignment& s, double delta = 1e-6);

/// Number of singular values of the edge-equation Jacobian (denominator-cleared
/// form, valid at degenerate points) below rank_tol * sigma_max.
int tangent_nullity(const EquationSystem& sys, const ShapeAssignment& s, double rank_tol = 1e-9);

/// Singular values of the cleared edge-equation Jacobian, descending.
std::vector<double> edge_singular_values(const EquationSystem& sys, const ShapeAssignment& s);

/// lambda with lambda^2 = h and minimal order n <= max_order such that
/// |lambda^n - 1| < tol.  The sign of lambda is fixed by finite_trace_hint
/// (minimal |lambda + 1/lambda - hint|) when given, otherwise the
/// smaller-order candidate wins.
RootOfUnity detect_root_of_unity(Complex h, std::optional<Complex> finite_trace_hint,
                                 int max_order = 12, double tol = 1e-6);

/// Per-tetrahedron relabeling mapping the labeling of `reference` equations to
/// the labeling of `target` equations, discovered by matching cross-ratio
/// companions of a common solution.  Entry i is 0 (identity), 1 (z'), or 2 (z'').
/// Throws NumericalError when no consistent relabeling exists.
std::vector<int> match_labeling(const std::vector<MonomialEquation>& target,
                                const ShapeAssignment& reference_solution);

/// Rewrite an exponent-vector equation through a per-tetrahedron relabeling.
MonomialEquation relabel_equation(const MonomialEquation& eq, const std::vector<int>& transform);

/// Apply a per-tetrahedron relabeling to a shape vector.
ShapeAssignment relabel_shapes(const ShapeAssignment& s, const std::vector<int>& transform);

/// Derived-mode system with the curves rewritten into the builder's labeling.
/// When the file carries explicit equations the relabeling between the two
/// conventions is discovered at the explicit-mode complete solution; otherwise
/// the curves are taken verbatim.
EquationSystem derived_mode_consistent(const Triangulation& tri, const SolveOptions& opts = {});

}  // namespace ideal
