#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ideal {

using Complex = std::complex<double>;

class ReducibleCharacter : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 2x2 complex matrix.  Group elements are unimodular (det = 1).
struct Mat2 {
    Complex m00{1}, m01{0}, m10{0}, m11{1};

    Complex trace() const { return m00 + m11; }
    Complex det() const { return m00 * m11 - m01 * m10; }
    Mat2 inverse() const;  // for det-1 matrices: adjugate
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator*(Complex s) const { return {s * m00, s * m01, s * m10, s * m11}; }
    Mat2 operator-() const { return {-m00, -m01, -m10, -m11}; }

    static Mat2 identity() { return {}; }
    /// Checked constructor for group elements; throws when |det - 1| > 1e-9.
    static Mat2 unimodular(Complex a, Complex b, Complex c, Complex d);

    std::array<Complex, 2> eigenvalues() const;  // for det-1 matrices
    double max_abs_diff(const Mat2& o) const;
};

Mat2 matrix_power(Mat2 m, int e);  // negative e uses the inverse

/// Freely reduced word over {a, a^-1, b, b^-1}.  Letters encode as
/// +1 = a, -1 = a^-1, +2 = b, -2 = b^-1.
struct Word {
    std::vector<int> letters;

    static Word from_string(const std::string& s);  // "abAB": A = a^-1, B = b^-1
    std::string to_string() const;
    Word inverse() const;
    Word operator*(const Word& o) const;  // concatenate and freely reduce
    size_t length() const { return letters.size(); }

    /// Lexicographically minimal representative over cyclic rotations of the
    /// word and of its inverse.  Traces are invariant under both.
    Word canonical() const;

    bool operator==(const Word&) const = default;
    bool operator<(const Word& o) const {
        return letters.size() != o.letters.size() ? letters.size() < o.letters.size()
                                                  : letters < o.letters;
    }
};

Word freely_reduce(std::vector<int> letters);

/// Sparse polynomial in (alpha, beta, gamma) = (tr A, tr B, tr AB):
/// map (i,j,k) -> coefficient of alpha^i beta^j gamma^k.  Word traces have
/// integer coefficients.
struct TracePolynomial {
    std::map<std::array<int, 3>, double> terms;

    static TracePolynomial constant(double c);
    static TracePolynomial variable(int which);  // 0 = alpha, 1 = beta, 2 = gamma

    TracePolynomial operator+(const TracePolynomial& o) const;
    TracePolynomial operator-(const TracePolynomial& o) const;
    TracePolynomial operator*(const TracePolynomial& o) const;

    Complex eval(Complex alpha, Complex beta, Complex gamma) const;
    /// Canonical text form "c*a^i*b^j*g^k + ...", terms sorted by (i,j,k) descending.
    std::string to_string() const;

    bool operator==(const TracePolynomial&) const = default;
};

/// Fricke reduction: the polynomial p with p(tr A, tr B, tr AB) = tr(w(A,B))
/// for every pair A, B in SL(2,C).
TracePolynomial trace_reduce(const Word& w);

/// The word evaluated on concrete matrices, and its trace.
Mat2 eval_matrix(const Word& w, const Mat2& A, const Mat2& B);
Complex eval_word(const Word& w, const Mat2& A, const Mat2& B);

struct FundamentalPair {
    Mat2 A, B;
    /// Set when alpha or beta is +-2: the eigenvalue gauge is not
    /// diagonalizable there, but the pair is still constructed.
    bool branch_degenerate = false;
};

/// Matrices A = ((x,1),(0,1/x)), B = ((y,0),(z,1/y)) with the requested
/// traces.  x solves x + 1/x = alpha on the principal branch (sqrt with
/// nonnegative imaginary part, nonnegative real part when purely real).
/// Throws ReducibleCharacter when alpha^2+beta^2+gamma^2-alpha*beta*gamma-4
/// vanishes within tolerance.
FundamentalPair make_fundamental_pair(Complex alpha, Complex beta, Complex gamma,
                                      double reducible_tol = 1e-10);

/// Principal square root used throughout: nonnegative imaginary part,
/// nonnegative real part when the imaginary part vanishes.
Complex principal_sqrt(Complex w);

}  // namespace ideal
