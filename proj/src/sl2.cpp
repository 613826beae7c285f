#include "ideal/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace ideal {

Mat2 Mat2::inverse() const { return {m11, -m01, -m10, m00}; }

Mat2 Mat2::operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
}

Mat2 Mat2::unimodular(Complex a, Complex b, Complex c, Complex d) {
    Mat2 m{a, b, c, d};
    if (std::abs(m.det() - 1.0) > 1e-9)
        throw std::invalid_argument("matrix is not unimodular: det = " +
                                    std::to_string(std::abs(m.det())));
    return m;
}

std::array<Complex, 2> Mat2::eigenvalues() const {
    Complex t = trace();
    Complex d = std::sqrt(t * t - 4.0);
    return {(t + d) / 2.0, (t - d) / 2.0};
}

double Mat2::max_abs_diff(const Mat2& o) const {
    return std::max({std::abs(m00 - o.m00), std::abs(m01 - o.m01), std::abs(m10 - o.m10),
                     std::abs(m11 - o.m11)});
}

Mat2 matrix_power(Mat2 m, int e) {
    if (e < 0) {
        m = m.inverse();
        e = -e;
    }
    Mat2 r = Mat2::identity();
    while (e) {
        if (e & 1) r = r * m;
        m = m * m;
        e >>= 1;
    }
    return r;
}

Word freely_reduce(std::vector<int> letters) {
    std::vector<int> out;
    for (int l : letters) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return Word{out};
}

Word Word::from_string(const std::string& s) {
    std::vector<int> letters;
    for (char c : s) {
        switch (c) {
            case 'a': letters.push_back(1); break;
            case 'A': letters.push_back(-1); break;
            case 'b': letters.push_back(2); break;
            case 'B': letters.push_back(-2); break;
            case ' ': break;
            default: throw std::invalid_argument("word letters are a, A, b, B");
        }
    }
    return freely_reduce(letters);
}

std::string Word::to_string() const {
    std::string s;
    for (int l : letters) s += (l == 1 ? 'a' : l == -1 ? 'A' : l == 2 ? 'b' : 'B');
    return s;
}

Word Word::inverse() const {
    std::vector<int> inv(letters.rbegin(), letters.rend());
    for (int& l : inv) l = -l;
    return Word{inv};
}

Word Word::operator*(const Word& o) const {
    std::vector<int> cat = letters;
    cat.insert(cat.end(), o.letters.begin(), o.letters.end());
    return freely_reduce(cat);
}

namespace {

// Cyclic reduction: strip cancelling first/last letters.
std::vector<int> cyclically_reduce(std::vector<int> w) {
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
    }
    return w;
}

// Letter order a < b < a^-1 < b^-1, so all-positive representatives win.
int letter_rank(int l) { return l == 1 ? 0 : l == 2 ? 1 : l == -1 ? 2 : 3; }

bool rank_less(const std::vector<int>& x, const std::vector<int>& y) {
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (letter_rank(x[i]) != letter_rank(y[i])) return letter_rank(x[i]) < letter_rank(y[i]);
    }
    return x.size() < y.size();
}

std::vector<int> invert_letters(const std::vector<int>& w) {
    std::vector<int> inv(w.rbegin(), w.rend());
    for (int& l : inv) l = -l;
    return inv;
}

}  // namespace

Word Word::canonical() const {
    std::vector<int> w = cyclically_reduce(letters);
    if (w.empty()) return Word{};
    std::vector<int> best;
    auto consider = [&](const std::vector<int>& v) {
        for (size_t r = 0; r < v.size(); ++r) {
            std::vector<int> rot(v.begin() + r, v.end());
            rot.insert(rot.end(), v.begin(), v.begin() + r);
            if (best.empty() || rank_less(rot, best)) best = rot;
        }
    };
    consider(w);
    consider(invert_letters(w));
    return Word{best};
}

TracePolynomial TracePolynomial::constant(double c) {
    TracePolynomial p;
    if (c != 0.0) p.terms[{0, 0, 0}] = c;
    return p;
}

TracePolynomial TracePolynomial::variable(int which) {
    TracePolynomial p;
    std::array<int, 3> key{0, 0, 0};
    key[which] = 1;
    p.terms[key] = 1.0;
    return p;
}

TracePolynomial TracePolynomial::operator+(const TracePolynomial& o) const {
    TracePolynomial r = *this;
    for (const auto& [k, c] : o.terms) {
        double v = (r.terms[k] += c);
        if (v == 0.0) r.terms.erase(k);
    }
    return r;
}

TracePolynomial TracePolynomial::operator-(const TracePolynomial& o) const {
    TracePolynomial r = *this;
    for (const auto& [k, c] : o.terms) {
        double v = (r.terms[k] -= c);
        if (v == 0.0) r.terms.erase(k);
    }
    return r;
}

TracePolynomial TracePolynomial::operator*(const TracePolynomial& o) const {
    TracePolynomial r;
    for (const auto& [k1, c1] : terms)
        for (const auto& [k2, c2] : o.terms) {
            std::array<int, 3> k{k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]};
            double v = (r.terms[k] += c1 * c2);
            if (v == 0.0) r.terms.erase(k);
        }
    return r;
}

Complex TracePolynomial::eval(Complex alpha, Complex beta, Complex gamma) const {
    auto ipow = [](Complex z, int e) {
        Complex r = 1.0;
        for (int i = 0; i < e; ++i) r *= z;
        return r;
    };
    Complex sum = 0.0;
    for (const auto& [k, c] : terms) sum += c * ipow(alpha, k[0]) * ipow(beta, k[1]) * ipow(gamma, k[2]);
    return sum;
}

std::string TracePolynomial::to_string() const {
    if (terms.empty()) return "0";
    // sorted by (i,j,k) descending
    std::vector<std::pair<std::array<int, 3>, double>> sorted(terms.begin(), terms.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : sorted) {
        double coeff = c;
        if (first) {
            if (coeff < 0) { out << "-"; coeff = -coeff; }
        } else {
            out << (coeff < 0 ? " - " : " + ");
            coeff = std::abs(coeff);
        }
        first = false;
        bool has_var = k[0] || k[1] || k[2];
        bool unit = coeff == 1.0 && has_var;
        if (!unit) {
            if (coeff == std::floor(coeff))
                out << static_cast<long long>(coeff);
            else
                out << coeff;
        }
        const char* names[3] = {"a", "b", "g"};
        bool printed = !unit;
        for (int v = 0; v < 3; ++v) {
            if (!k[v]) continue;
            if (printed) out << "*";
            out << names[v];
            if (k[v] > 1) out << "^" << k[v];
            printed = true;
        }
    }
    return out.str();
}

namespace {

using Key = std::vector<int>;

struct Reducer {
    std::map<Key, TracePolynomial> memo;

    TracePolynomial reduce(const std::vector<int>& input) {
        Key key = Word{input}.canonical().letters;
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        TracePolynomial result = compute(key);
        memo.emplace(std::move(key), result);
        return result;
    }

    // Trace of a single generator (or its inverse): tr(X) = tr(X^-1).
    static TracePolynomial letter_trace(int l) {
        return TracePolynomial::variable(std::abs(l) == 1 ? 0 : 1);
    }

    TracePolynomial compute(const std::vector<int>& key) {
        if (key.empty()) return TracePolynomial::constant(2.0);
        if (key.size() == 1) return letter_trace(key[0]);
        if (key.size() == 2 && key[0] == 1 && key[1] == 2) return TracePolynomial::variable(2);

        // Work on the representative with the fewest inverse letters; the
        // recursion then strictly descends in (#inverses, length).
        std::vector<int> w = key;
        size_t negs = static_cast<size_t>(std::count_if(w.begin(), w.end(), [](int l) { return l < 0; }));
        if (2 * negs > w.size()) w = invert_letters(w);

        // Eliminate inverse letters:  rotate one to the end, w = P x^-1, then
        // tr(P x^-1) = tr(P) tr(x) - tr(P x).
        for (size_t pos = 0; pos < w.size(); ++pos) {
            if (w[pos] >= 0) continue;
            std::vector<int> rot(w.begin() + pos + 1, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + pos + 1);
            int x = -rot.back();  // positive generator
            std::vector<int> P(rot.begin(), rot.end() - 1);
            std::vector<int> Px = P;
            Px.push_back(x);
            return reduce(P) * letter_trace(x) - reduce(freely_reduce(Px).letters);
        }

        // Positive word with a repeated letter (cyclically):  w ~ x x v, and
        // tr(x (x v)) = tr(x) tr(x v) - tr(v).
        for (size_t pos = 0; pos < w.size(); ++pos) {
            if (w[pos] != w[(pos + 1) % w.size()]) continue;
            std::vector<int> rot(w.begin() + pos, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + pos);
            int x = rot[0];
            std::vector<int> xv(rot.begin() + 1, rot.end());
            std::vector<int> v(rot.begin() + 2, rot.end());
            return letter_trace(x) * reduce(xv) - reduce(v);
        }

        // Alternating positive word (ab)^k, k >= 2, as a power of the block:
        // tr(C^k) = tr(C) tr(C^{k-1}) - tr(C^{k-2}).
        std::vector<int> shorter(w.begin(), w.end() - 2);
        std::vector<int> shortest(w.begin(), w.end() - 4);
        return TracePolynomial::variable(2) * reduce(shorter) - reduce(shortest);
    }
};

std::mutex g_memo_mutex;
Reducer g_reducer;

}  // namespace

TracePolynomial trace_reduce(const Word& w) {
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    return g_reducer.reduce(w.letters);
}

Mat2 eval_matrix(const Word& w, const Mat2& A, const Mat2& B) {
    Mat2 prod = Mat2::identity();
    const Mat2 Ai = A.inverse(), Bi = B.inverse();
    for (int l : w.letters) {
        switch (l) {
            case 1: prod = prod * A; break;
            case -1: prod = prod * Ai; break;
            case 2: prod = prod * B; break;
            default: prod = prod * Bi; break;
        }
    }
    return prod;
}

Complex eval_word(const Word& w, const Mat2& A, const Mat2& B) {
    return eval_matrix(w, A, B).trace();
}

Complex principal_sqrt(Complex w) {
    Complex s = std::sqrt(w);
    if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) s = -s;
    return s;
}

FundamentalPair make_fundamental_pair(Complex alpha, Complex beta, Complex gamma,
                                      double reducible_tol) {
    Complex kappa = alpha * alpha + beta * beta + gamma * gamma - alpha * beta * gamma;
    if (std::abs(kappa - 4.0) < reducible_tol)
        throw ReducibleCharacter("commutator trace is 2: character is reducible");

    Complex x = (alpha + principal_sqrt(alpha * alpha - 4.0)) / 2.0;
    Complex y = (beta + principal_sqrt(beta * beta - 4.0)) / 2.0;
    Complex z = gamma - x * y - 1.0 / (x * y);

    FundamentalPair pair;
    pair.A = Mat2{x, 1.0, 0.0, 1.0 / x};
    pair.B = Mat2{y, 0.0, z, 1.0 / y};
    pair.branch_degenerate =
        std::abs(alpha - 2.0) < 1e-12 || std::abs(alpha + 2.0) < 1e-12 ||
        std::abs(beta - 2.0) < 1e-12 || std::abs(beta + 2.0) < 1e-12;
    return pair;
}

}  // namespace ideal
