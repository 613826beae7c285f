#include "ideal/ptb.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace ideal {
namespace ptb {

namespace {

const Complex kI(0.0, 1.0);

Mat2 commutator(const Mat2& A, const Mat2& B) {
    return A * B * A.inverse() * B.inverse();
}

}  // namespace

Word monodromy_a() { return Word::from_string("BAB"); }

Word monodromy_b() { return Word::from_string("ba") * (monodromy_a() * monodromy_a() * monodromy_a()); }

CharacterPoint x0_point(Complex gamma, bool negative_sheet) {
    for (Complex bad : {Complex(0, 0), Complex(2, 0), Complex(-2, 0), Complex(0, 2), Complex(0, -2)}) {
        if (std::abs(gamma - bad) < 1e-12)
            throw ExcludedLocus("gamma on the excluded locus {0, +-2, +-2i}");
    }
    CharacterPoint p;
    p.gamma = gamma;
    p.alpha = principal_sqrt((gamma * gamma + 4.0) / 2.0);
    p.beta = 2.0 * p.alpha / gamma;
    if (negative_sheet) {
        p.alpha = -p.alpha;
        p.beta = -p.beta;
    }
    p.tau = -kI * gamma * gamma / 2.0;
    p.trAT = (p.beta / p.gamma) * p.tau;
    p.trBT = 2.0 * p.beta * (p.alpha * p.alpha - 3.0) * p.tau / (gamma * gamma);
    p.trABT = 2.0 * p.tau / gamma;
    p.trLT = -4.0 / p.tau;
    p.trL = p.alpha * p.alpha + p.beta * p.beta + gamma * gamma - p.alpha * p.beta * gamma - 2.0;
    return p;
}

namespace {

// Rows of (T G - P T) = 0 with T flattened as (t00, t01, t10, t11).
void conjugation_rows(Eigen::MatrixXcd& M, int base, const Mat2& G, const Mat2& P) {
    const Complex g[2][2] = {{G.m00, G.m01}, {G.m10, G.m11}};
    const Complex pm[2][2] = {{P.m00, P.m01}, {P.m10, P.m11}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const int r = base + 2 * i + j;
            for (int k = 0; k < 2; ++k) {
                M(r, 2 * i + k) += g[k][j];
                M(r, 2 * k + j) -= pm[i][k];
            }
        }
}

}  // namespace

PtbRepresentation build_representation(const CharacterPoint& p) {
    PtbRepresentation rep;
    FundamentalPair pair = make_fundamental_pair(p.alpha, p.beta, p.gamma);
    rep.A = pair.A;
    rep.B = pair.B;
    rep.phi_a = eval_matrix(monodromy_a(), rep.A, rep.B);
    rep.phi_b = eval_matrix(monodromy_b(), rep.A, rep.B);

    // The monodromy must fix the character: off X0 (or at a reducible point)
    // the conjugation equations have no nonzero solution.  Roundoff in the
    // word products grows like a power of the largest trace, so this guard
    // scales accordingly; it only has to catch O(trace)-sized mismatches.
    const double scale =
        std::pow(1.0 + std::abs(p.alpha) + std::abs(p.beta) + std::abs(p.gamma), 4.0);
    if (std::abs(rep.phi_a.trace() - p.alpha) > 1e-8 * scale ||
        std::abs(rep.phi_b.trace() - p.beta) > 1e-8 * scale ||
        std::abs((rep.phi_a * rep.phi_b).trace() - p.gamma) > 1e-8 * scale)
        throw WrongComponentOrReducible("character is not fixed by the monodromy");

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(8, 4);
    conjugation_rows(M, 0, rep.A, rep.phi_a);
    conjugation_rows(M, 4, rep.B, rep.phi_b);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(3) > 1e-6 * sv(2))
        throw ComponentMismatch("intertwiner nullspace is not one dimensional");
    Eigen::Vector4cd t = svd.matrixV().col(3);

    Mat2 T{t(0), t(1), t(2), t(3)};
    T = T * (1.0 / principal_sqrt(T.det()));
    if (std::abs(T.trace() - p.tau) > std::abs(T.trace() + p.tau)) T = T * Complex(-1.0, 0.0);
    rep.T = T;
    return rep;
}

double StarResiduals::max() const {
    return std::max({trAT, trBT, trABT, trLT, four_tau_sq});
}

StarResiduals verify_star_system(const CharacterPoint& p, const PtbRepresentation& r) {
    StarResiduals res;
    res.trAT = std::abs((r.A * r.T).trace() - p.trAT);
    res.trBT = std::abs((r.B * r.T).trace() - p.trBT);
    res.trABT = std::abs((r.A * r.B * r.T).trace() - p.trABT);
    res.trLT = std::abs((commutator(r.A, r.B) * r.T).trace() - p.trLT);
    res.four_tau_sq = std::abs(4.0 * p.tau * p.tau + p.gamma * p.gamma * p.gamma * p.gamma);
    return res;
}

double plane_curve_check(const CharacterPoint& p, const PtbRepresentation& r) {
    (void)p;
    const Mat2 LT = commutator(r.A, r.B) * r.T;
    if (std::abs(r.T.det() - 1.0) > 1e-9 || std::abs(LT.det() - 1.0) > 1e-9)
        throw BranchDegeneracy("eigenvalue branches undefined: determinant is not 1");
    auto ex = r.T.eigenvalues();
    auto ey = LT.eigenvalues();
    double best = std::numeric_limits<double>::infinity();
    for (Complex x : ex)
        for (Complex y : ey)
            best = std::min(best, std::abs(x * y + kI * x + kI * y + 1.0));
    return best;
}

std::string to_string(LimitDirection d) {
    switch (d) {
        case LimitDirection::GammaToZeroPlus: return "gamma->0+";
        case LimitDirection::GammaToZeroMinus: return "gamma->0-";
        case LimitDirection::GammaToInfinityPlus: return "gamma->+inf";
        case LimitDirection::GammaToInfinityMinus: return "gamma->-inf";
    }
    return "?";
}

IdealPointReport ideal_point_limits(LimitDirection direction, int max_k) {
    const bool to_zero = direction == LimitDirection::GammaToZeroPlus ||
                         direction == LimitDirection::GammaToZeroMinus;
    const double sign = (direction == LimitDirection::GammaToZeroMinus ||
                         direction == LimitDirection::GammaToInfinityMinus)
                            ? -1.0
                            : 1.0;

    IdealPointReport rep;
    rep.direction = direction;
    std::vector<double> decaying;
    for (int k = 1; k <= max_k; ++k) {
        const Complex gamma = sign * std::pow(10.0, to_zero ? -k : k);
        CharacterPoint p = x0_point(gamma);
        IdealPointReport::Sample s;
        s.gamma = gamma;
        s.trT = p.tau;
        s.trLT = p.trLT;
        s.alpha = p.alpha;
        // The closed forms carry the table to extreme gamma; the matrix build
        // is only meaningful while the word products stay well conditioned.
        if (k <= 2) {
            PtbRepresentation r = build_representation(p);
            if (std::abs(r.T.trace() - s.trT) > 1e-8 * (1.0 + std::abs(s.trT)) ||
                std::abs((commutator(r.A, r.B) * r.T).trace() - s.trLT) >
                    1e-8 * (1.0 + std::abs(s.trLT)))
                throw InconclusiveLimit("matrix traces disagree with the closed forms");
        }
        rep.samples.push_back(s);
        decaying.push_back(std::abs(to_zero ? s.trT : s.trLT));
    }
    // The decaying trace shrinks by ~10^-2 per decade of gamma.
    for (size_t k = 1; k < decaying.size(); ++k) {
        const double ratio = decaying[k] / decaying[k - 1];
        if (!(ratio < 0.1))
            throw InconclusiveLimit("trace sequence is not decaying geometrically");
    }
    rep.finite_trace_limit = Complex(0, 0);
    rep.finite_slope = to_zero ? "t" : "lt";
    // The finite trace tends to 0, so the limiting eigenvalue lambda solves
    // lambda + 1/lambda = 0: a primitive 4th root of unity.
    rep.root = detect_root_of_unity(Complex(-1, 0), Complex(0, 0));
    const auto& last = rep.samples.back();
    if (to_zero) {
        rep.alpha_limit = last.alpha;
        rep.gamma_over_alpha_limit = Complex(0, 0);
    } else {
        rep.alpha_limit = Complex(0, 0);
        rep.gamma_over_alpha_limit = last.gamma / last.alpha;
    }
    return rep;
}

std::vector<CharacterPoint> find_complete_character() {
    // tr L = -2 on X0 forces alpha^4 - 4 alpha^2 + 8 = 0.
    std::vector<CharacterPoint> out;
    for (Complex a2 : {Complex(2, 2), Complex(2, -2)}) {
        const Complex gamma = principal_sqrt(2.0 * a2 - 4.0);
        CharacterPoint p = x0_point(gamma);
        out.push_back(p);
    }
    return out;
}

const std::vector<SurfaceInfo>& known_surfaces() {
    static const std::vector<SurfaceInfo> table = {
        {"S1", "0", 4, 0},
        {"S2", "1", 4, 0},
        {"S3", "1/2", 2, 1},
    };
    return table;
}

}  // namespace ptb
}  // namespace ideal
