#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ideal/ptb.hpp"

using namespace ideal;
using namespace ideal::ptb;

namespace {

const Complex kI(0.0, 1.0);

double conjugation_residual(const PtbRepresentation& r) {
    Mat2 Ti = r.T.inverse();
    return std::max((r.T * r.A * Ti).max_abs_diff(r.phi_a),
                    (r.T * r.B * Ti).max_abs_diff(r.phi_b));
}

}  // namespace

TEST_CASE("monodromy words") {
    CHECK(monodromy_a().to_string() == "BAB");
    CHECK(monodromy_b().to_string() == "baBABBABBAB");
}

TEST_CASE("component coordinates obey the defining relations") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 30; ++k) {
        Complex gamma(u(rng), u(rng));
        if (std::abs(gamma) < 0.1) continue;
        CharacterPoint p = x0_point(gamma);
        CHECK(std::abs(2.0 * p.alpha - p.beta * p.gamma) < 1e-10);
        CHECK(std::abs(2.0 * p.alpha * p.alpha - gamma * gamma - 4.0) < 1e-10);
        CHECK(std::abs(4.0 * p.tau * p.tau + gamma * gamma * gamma * gamma) < 1e-10);
        CHECK(std::abs(p.trLT + 4.0 / p.tau) < 1e-12);

        CharacterPoint q = x0_point(gamma, true);
        CHECK(std::abs(q.alpha + p.alpha) < 1e-12);
        CHECK(std::abs(q.beta + p.beta) < 1e-12);
        CHECK(std::abs(q.trL - p.trL) < 1e-10);  // trL is even in (alpha, beta)
    }
}

TEST_CASE("excluded locus") {
    CHECK_THROWS_AS(x0_point(Complex(0, 0)), ExcludedLocus);
    CHECK_THROWS_AS(x0_point(Complex(2, 0)), ExcludedLocus);
    CHECK_THROWS_AS(x0_point(Complex(-2, 0)), ExcludedLocus);
    CHECK_THROWS_AS(x0_point(Complex(0, 2)), ExcludedLocus);
    CHECK_THROWS_AS(x0_point(Complex(0, -2)), ExcludedLocus);
}

TEST_CASE("representation at the base point") {
    CharacterPoint p = x0_point(Complex(1, 1));
    CHECK(std::abs(p.tau - Complex(1, 0)) < 1e-12);

    PtbRepresentation r = build_representation(p);
    CHECK(std::abs(r.T.det() - 1.0) < 1e-10);
    CHECK(std::abs(r.T.trace() - p.tau) < 1e-10);
    CHECK(conjugation_residual(r) < 1e-10);

    StarResiduals res = verify_star_system(p, r);
    CHECK(res.max() < 1e-10);
    CHECK(plane_curve_check(p, r) < 1e-10);

    // tr(A^2 T) is constant +-2i on the component.
    Complex a2t = (r.A * r.A * r.T).trace();
    CHECK(std::min(std::abs(a2t - 2.0 * kI), std::abs(a2t + 2.0 * kI)) < 1e-10);
}

TEST_CASE("random sample suite on the annulus") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> radius(0.3, 3.0), angle(0.0, 6.283185307179586);
    int checked = 0;
    for (int k = 0; k < 20; ++k) {
        Complex gamma = std::polar(radius(rng), angle(rng));
        CharacterPoint p = x0_point(gamma);
        PtbRepresentation r = build_representation(p);

        CHECK(std::abs(r.phi_a.trace() - p.alpha) < 1e-8);
        CHECK(std::abs(r.phi_b.trace() - p.beta) < 1e-8);
        CHECK(std::abs((r.phi_a * r.phi_b).trace() - p.gamma) < 1e-8);
        CHECK(verify_star_system(p, r).max() < 1e-8);
        CHECK(plane_curve_check(p, r) < 1e-8);

        Complex a2t = (r.A * r.A * r.T).trace();
        CHECK(std::min(std::abs(a2t - 2.0 * kI), std::abs(a2t + 2.0 * kI)) < 1e-8);
        ++checked;
    }
    CHECK(checked == 20);
}

TEST_CASE("off-component characters are rejected") {
    CharacterPoint p = x0_point(Complex(1, 1));
    p.beta += 0.05;  // leave the component but stay irreducible
    CHECK_THROWS_AS(build_representation(p), WrongComponentOrReducible);
}

TEST_CASE("ideal point limits") {
    for (auto dir : {LimitDirection::GammaToZeroPlus, LimitDirection::GammaToZeroMinus}) {
        IdealPointReport rep = ideal_point_limits(dir);
        REQUIRE(rep.samples.size() == 6);
        CHECK(rep.finite_slope == "t");
        CHECK(std::abs(rep.samples.back().trT) < 1e-6);
        CHECK(rep.root.order == 4);
        CHECK(std::abs(rep.root.lambda * rep.root.lambda + 1.0) < 1e-9);  // lambda = +-i
        CHECK(std::abs(rep.root.trace) < 1e-9);
        CHECK(std::abs(std::abs(rep.alpha_limit) - std::sqrt(2.0)) < 1e-6);
    }
    for (auto dir : {LimitDirection::GammaToInfinityPlus, LimitDirection::GammaToInfinityMinus}) {
        IdealPointReport rep = ideal_point_limits(dir);
        CHECK(rep.finite_slope == "lt");
        CHECK(std::abs(rep.samples.back().trLT) < 1e-6);
        CHECK(rep.root.order == 4);
        CHECK(std::abs(std::abs(rep.gamma_over_alpha_limit) - std::sqrt(2.0)) < 1e-6);
    }
    // The two signed directions land on opposite sqrt(2) branches at infinity.
    Complex plus = ideal_point_limits(LimitDirection::GammaToInfinityPlus).gamma_over_alpha_limit;
    Complex minus = ideal_point_limits(LimitDirection::GammaToInfinityMinus).gamma_over_alpha_limit;
    CHECK(std::abs(plus + minus) < 1e-6);
}

TEST_CASE("complete characters") {
    auto pts = find_complete_character();
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
        CHECK(std::abs(p.trL + 2.0) < 1e-9);
        CHECK(std::min(std::abs(p.tau - 2.0), std::abs(p.tau + 2.0)) < 1e-9);
        // alpha^4 - 4 alpha^2 + 8 = 0
        Complex a2 = p.alpha * p.alpha;
        CHECK(std::abs(a2 * a2 - 4.0 * a2 + 8.0) < 1e-9);
        // Still a genuine point of the component.
        PtbRepresentation r = build_representation(p);
        CHECK(verify_star_system(p, r).max() < 1e-8);
    }
    CHECK(std::abs(pts[0].alpha * pts[0].alpha - Complex(2, 2)) < 1e-9);
    CHECK(std::abs(pts[1].alpha * pts[1].alpha - Complex(2, -2)) < 1e-9);
}

TEST_CASE("surface table") {
    const auto& s = known_surfaces();
    REQUIRE(s.size() == 3);
    CHECK(s[0].boundary_components == 4);
    CHECK(s[0].genus == 0);
    CHECK(s[1].boundary_components == 4);
    CHECK(s[1].genus == 0);
    CHECK(s[2].boundary_components == 2);
    CHECK(s[2].genus == 1);
    CHECK(std::string(s[2].slope) == "1/2");
}
