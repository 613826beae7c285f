#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ideal/sl2.hpp"

using namespace ideal;

namespace {

std::mt19937 rng(42);

Complex rand_complex(double lo = -1.5, double hi = 1.5) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng)};
}

Mat2 rand_unimodular() {
    // Random entries, then fix the determinant through one entry.
    while (true) {
        Complex a = rand_complex(), b = rand_complex(), c = rand_complex();
        if (std::abs(a) < 0.2) continue;
        Complex d = (1.0 + b * c) / a;
        return {a, b, c, d};
    }
}

// All freely reduced words of length <= max_len.
void reduced_words(std::vector<Word>& out, std::vector<int>& cur, int max_len) {
    out.push_back(Word{cur});
    if ((int)cur.size() == max_len) return;
    for (int l : {1, -1, 2, -2}) {
        if (!cur.empty() && cur.back() == -l) continue;
        cur.push_back(l);
        reduced_words(out, cur, max_len);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("mat2 basics") {
    Mat2 m = rand_unimodular();
    CHECK(std::abs(m.det() - 1.0) < 1e-12);
    CHECK((m * m.inverse()).max_abs_diff(Mat2::identity()) < 1e-12);
    CHECK_THROWS(Mat2::unimodular(1, 0, 0, 2));

    auto ev = m.eigenvalues();
    CHECK(std::abs(ev[0] * ev[1] - 1.0) < 1e-10);
    CHECK(std::abs(ev[0] + ev[1] - m.trace()) < 1e-10);

    Mat2 p = matrix_power(m, 5);
    CHECK(p.max_abs_diff(m * m * m * m * m) < 1e-10);
    CHECK(matrix_power(m, -2).max_abs_diff(m.inverse() * m.inverse()) < 1e-10);
    CHECK(matrix_power(m, 0).max_abs_diff(Mat2::identity()) == 0);
}

TEST_CASE("word algebra") {
    Word w = Word::from_string("abAB");
    CHECK(w.to_string() == "abAB");
    CHECK(w.inverse().to_string() == "baBA");
    CHECK((Word::from_string("ab") * Word::from_string("B")).to_string() == "a");
    CHECK((w * w.inverse()).letters.empty());
    CHECK_THROWS(Word::from_string("axb"));

    // The canonical form identifies cyclic rotations and inversion.
    CHECK(Word::from_string("ab").canonical() == Word::from_string("ba").canonical());
    CHECK(Word::from_string("ab").canonical() == Word::from_string("BA").canonical());
    CHECK(Word::from_string("aab").canonical() == Word::from_string("aba").canonical());
    CHECK(Word::from_string("ab").canonical() != Word::from_string("aB").canonical());
}

TEST_CASE("trace reduction base cases") {
    CHECK(trace_reduce(Word{}).to_string() == "2");
    CHECK(trace_reduce(Word::from_string("a")).to_string() == "a");
    CHECK(trace_reduce(Word::from_string("b")).to_string() == "b");
    CHECK(trace_reduce(Word::from_string("ab")).to_string() == "g");
    // tr X = tr X^-1
    CHECK(trace_reduce(Word::from_string("A")).to_string() == "a");
    CHECK(trace_reduce(Word::from_string("BA")).to_string() == "g");
    // tr XY = tr YX
    CHECK(trace_reduce(Word::from_string("ba")).to_string() == "g");
    // tr ab^-1 = ab - g
    CHECK(trace_reduce(Word::from_string("aB")).to_string() == "a*b - g");
}

TEST_CASE("commutator trace is the fricke polynomial") {
    TracePolynomial p = trace_reduce(Word::from_string("abAB"));
    std::map<std::array<int, 3>, double> expect = {
        {{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}, {{1, 1, 1}, -1}, {{0, 0, 0}, -2}};
    CHECK(p.terms == expect);
}

TEST_CASE("reduced polynomials have integer coefficients") {
    std::vector<Word> words;
    std::vector<int> cur;
    reduced_words(words, cur, 6);
    for (const Word& w : words) {
        for (const auto& [mono, coeff] : trace_reduce(w).terms) {
            CHECK(coeff == doctest::Approx(std::round(coeff)).epsilon(1e-12));
            CHECK(std::abs(coeff) >= 1.0);  // zero terms are dropped
        }
    }
}

TEST_CASE("trace polynomials match matrix traces") {
    std::vector<Word> words;
    std::vector<int> cur;
    reduced_words(words, cur, 6);

    for (int pair_i = 0; pair_i < 20; ++pair_i) {
        Mat2 A = rand_unimodular(), B = rand_unimodular();
        Complex alpha = A.trace(), beta = B.trace(), gamma = (A * B).trace();
        for (const Word& w : words) {
            Complex direct = eval_word(w, A, B);
            Complex via_poly = trace_reduce(w).eval(alpha, beta, gamma);
            CHECK(std::abs(direct - via_poly) < 1e-10);
        }
    }

    // A few longer random words.
    std::uniform_int_distribution<int> len(9, 14), letter(0, 3);
    const int alphabet[4] = {1, -1, 2, -2};
    for (int k = 0; k < 50; ++k) {
        std::vector<int> ls;
        int want = len(rng);
        while ((int)ls.size() < want) {
            int l = alphabet[letter(rng)];
            if (!ls.empty() && ls.back() == -l) continue;
            ls.push_back(l);
        }
        Word w{ls};
        Mat2 A = rand_unimodular(), B = rand_unimodular();
        Complex direct = eval_word(w, A, B);
        Complex via_poly = trace_reduce(w).eval(A.trace(), B.trace(), (A * B).trace());
        CHECK(std::abs(direct - via_poly) < 1e-8 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("fundamental pair reproduces its traces") {
    for (int k = 0; k < 50; ++k) {
        Complex alpha = rand_complex(-2.5, 2.5), beta = rand_complex(-2.5, 2.5),
                gamma = rand_complex(-2.5, 2.5);
        Complex kappa = alpha * alpha + beta * beta + gamma * gamma - alpha * beta * gamma - 4.0;
        if (std::abs(kappa) < 1e-6) continue;
        FundamentalPair p = make_fundamental_pair(alpha, beta, gamma);
        CHECK(std::abs(p.A.det() - 1.0) < 1e-10);
        CHECK(std::abs(p.B.det() - 1.0) < 1e-10);
        CHECK(std::abs(p.A.trace() - alpha) < 1e-10);
        CHECK(std::abs(p.B.trace() - beta) < 1e-10);
        CHECK(std::abs((p.A * p.B).trace() - gamma) < 1e-10);
    }
}

TEST_CASE("reducible characters are rejected") {
    // alpha = beta = gamma = 2 gives kappa = 0 (the identity character).
    CHECK_THROWS_AS(make_fundamental_pair(2, 2, 2), ReducibleCharacter);
}

TEST_CASE("principal square root conventions") {
    CHECK(principal_sqrt(Complex(4, 0)) == Complex(2, 0));
    CHECK(principal_sqrt(Complex(-4, 0)) == Complex(0, 2));
    CHECK(principal_sqrt(Complex(0, 2)).real() == doctest::Approx(1.0));
    CHECK(principal_sqrt(Complex(0, 2)).imag() == doctest::Approx(1.0));
    Complex w = principal_sqrt(Complex(-1, -1));
    CHECK(w.imag() >= 0);
    CHECK(std::abs(w * w - Complex(-1, -1)) < 1e-12);
}
