#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ideal/deformation.hpp"
#include "ideal/sl2.hpp"

namespace ideal {
namespace ptb {

class ExcludedLocus : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class WrongComponentOrReducible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class ComponentMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class BranchDegeneracy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class InconclusiveLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Trace coordinates of a point of the component X0 of the character variety
/// of the once-punctured-torus bundle with monodromy (-1,-2;-2,-5).
/// On X0:  2*alpha = beta*gamma,  2*alpha^2 - gamma^2 - 4 = 0,
/// 2*tau = -i*gamma^2.
struct CharacterPoint {
    Complex alpha, beta, gamma, tau;
    Complex trAT, trBT, trABT, trLT, trL;
};

/// Explicit matrices: A, B generate the fiber group, T conjugates by the
/// monodromy phi(a) = b^-1 a^-1 b^-1, phi(b) = b a (b^-1 a^-1 b^-1)^3.
struct PtbRepresentation {
    Mat2 A, B, T;
    Mat2 phi_a, phi_b;  // images of the monodromy words under (A, B)
};

/// The monodromy words on the fiber generators.
Word monodromy_a();
Word monodromy_b();

/// Point of X0 over gamma.  negative_sheet negates (alpha, beta).
/// Throws ExcludedLocus for gamma in {0, +-2, +-2i}.
CharacterPoint x0_point(Complex gamma, bool negative_sheet = false);

/// (A, B) from the trace coordinates, then T as the one-dimensional nullspace
/// of {T A = phi(a) T, T B = phi(b) T}, det-normalized with the sign fixed by
/// tr T = tau.
PtbRepresentation build_representation(const CharacterPoint& p);

struct StarResiduals {
    double trAT, trBT, trABT, trLT, four_tau_sq;  // |4 tau^2 + gamma^4|
    double max() const;
};

/// Matrix traces of AT, BT, ABT, LT against their closed forms, plus
/// |4 tau^2 + gamma^4|.
StarResiduals verify_star_system(const CharacterPoint& p, const PtbRepresentation& r);

/// Minimal |x*y + i*x + i*y + 1| over the four eigenvalue-branch combinations
/// (x an eigenvalue of T, y of L*T, L the commutator image).
double plane_curve_check(const CharacterPoint& p, const PtbRepresentation& r);

enum class LimitDirection {
    GammaToZeroPlus,      // gamma = +10^-k
    GammaToZeroMinus,     // gamma = -10^-k
    GammaToInfinityPlus,  // gamma = +10^k
    GammaToInfinityMinus  // gamma = -10^k
};
std::string to_string(LimitDirection d);

struct IdealPointReport {
    LimitDirection direction;
    struct Sample {
        Complex gamma, trT, trLT, alpha;
    };
    std::vector<Sample> samples;
    Complex finite_trace_limit;  // tr T for gamma->0, tr LT for gamma->inf
    std::string finite_slope;    // "t" or "lt"
    RootOfUnity root;            // lambda = +-i, order 4
    Complex alpha_limit;         // +-sqrt(2) for gamma->0
    Complex gamma_over_alpha_limit;  // +-sqrt(2) for gamma->inf
};

/// Trace limits along gamma = 10^{+-k}, k = 1..max_k, with a geometric ratio
/// test certifying monotone convergence.
IdealPointReport ideal_point_limits(LimitDirection direction, int max_k = 6);

/// The two X0 points with tr L = -2 (parabolic fiber boundary):
/// alpha^2 = 2 +- 2i, where tr T = +-2.
std::vector<CharacterPoint> find_complete_character();

/// Incompressible surfaces of the bundle besides the fiber (static data;
/// slopes with respect to a basis where the fiber has slope infinity).
struct SurfaceInfo {
    const char* name;
    const char* slope;
    int boundary_components;
    int genus;
};
const std::vector<SurfaceInfo>& known_surfaces();

}  // namespace ptb
}  // namespace ideal
