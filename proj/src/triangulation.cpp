#include "ideal/triangulation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace ideal {

Perm4 Perm4::inverse() const {
    Perm4 inv;
    for (int i = 0; i < 4; ++i) inv.image[image[i]] = i;
    return inv;
}

bool Perm4::is_bijection() const {
    std::array<bool, 4> seen{};
    for (int v : image) {
        if (v < 0 || v > 3 || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Perm4 Perm4::from_string(const std::string& s) {
    if (s.size() != 4) throw std::invalid_argument("permutation must have 4 digits: " + s);
    Perm4 p;
    for (int i = 0; i < 4; ++i) {
        if (s[i] < '0' || s[i] > '3') throw std::invalid_argument("bad permutation digit: " + s);
        p.image[i] = s[i] - '0';
    }
    if (!p.is_bijection()) throw std::invalid_argument("not a bijection of {0,1,2,3}: " + s);
    return p;
}

std::string Perm4::to_string() const {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[i] = char('0' + image[i]);
    return s;
}

namespace {

constexpr std::array<std::pair<int, int>, 6> kEdges = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

std::string strip(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<int> parse_int_tuple(const std::string& s, int lineno) {
    // "(1,0,-1,2)"
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError(lineno, "expected parenthesized integer tuple, got '" + s + "'");
    std::vector<int> out;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ParseError(lineno, "bad integer '" + item + "'");
        }
    }
    return out;
}

MonomialEquation parse_equation_line(std::istringstream& in, const std::string& kind, int lineno) {
    MonomialEquation eq;
    if (!(in >> eq.label)) throw ParseError(lineno, kind + " is missing a label");
    std::string tok;
    bool have_a = false, have_b = false, have_sign = false;
    while (in >> tok) {
        if (tok.rfind("a=", 0) == 0) {
            eq.a = parse_int_tuple(tok.substr(2), lineno);
            have_a = true;
        } else if (tok.rfind("b=", 0) == 0) {
            eq.b = parse_int_tuple(tok.substr(2), lineno);
            have_b = true;
        } else if (tok.rfind("sign=", 0) == 0) {
            std::string v = tok.substr(5);
            if (v == "+1" || v == "1")
                eq.sign = 1;
            else if (v == "-1")
                eq.sign = -1;
            else
                throw ParseError(lineno, "sign must be +1 or -1, got '" + v + "'");
            have_sign = true;
        } else {
            throw ParseError(lineno, "unexpected token '" + tok + "' in " + kind);
        }
    }
    if (!have_a || !have_b || !have_sign)
        throw ParseError(lineno, kind + " needs a=(...), b=(...) and sign=");
    if (eq.a.size() != eq.b.size())
        throw ParseError(lineno, "exponent vectors a and b have different lengths");
    return eq;
}

}  // namespace

int edge_index(int u, int v) {
    if (u > v) std::swap(u, v);
    for (int e = 0; e < 6; ++e)
        if (kEdges[e] == std::pair<int, int>{u, v}) return e;
    throw std::invalid_argument("bad edge vertices");
}

std::pair<int, int> edge_vertices(int e) { return kEdges.at(e); }

ShapeSlot edge_slot(int e) {
    switch (e) {
        case 0: case 5: return ShapeSlot::Z;            // {0,1},{2,3}
        case 1: case 4: return ShapeSlot::ZPrime;       // {0,2},{1,3}
        default: return ShapeSlot::ZDoublePrime;        // {0,3},{1,2}
    }
}

Triangulation parse_triangulation(const std::string& text) {
    Triangulation tri;
    std::istringstream input(text);
    std::string raw;
    int lineno = 0;
    int n = -1;
    int rows_seen = 0;
    std::vector<int> row_line;  // line number of each gluing row, for diagnostics

    while (std::getline(input, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty()) continue;
        std::istringstream in(line);
        std::string key;
        in >> key;

        if (key == "name") {
            if (!(in >> tri.name)) throw ParseError(lineno, "name line is missing a value");
        } else if (key == "tetrahedra") {
            if (!(in >> n) || n <= 0) throw ParseError(lineno, "tetrahedra count must be positive");
            tri.tets.resize(n);
            row_line.resize(n, -1);
        } else if (key == "equation") {
            tri.explicit_equations.push_back(parse_equation_line(in, "equation", lineno));
        } else if (key == "curve") {
            MonomialEquation c = parse_equation_line(in, "curve", lineno);
            tri.curves[c.label] = c;
        } else if (key == "seed") {
            std::string tok;
            while (in >> tok) {
                size_t comma = tok.find(',');
                if (comma == std::string::npos)
                    throw ParseError(lineno, "seed entries are re,im pairs");
                try {
                    tri.seed.emplace_back(std::stod(tok.substr(0, comma)),
                                          std::stod(tok.substr(comma + 1)));
                } catch (const std::exception&) {
                    throw ParseError(lineno, "bad seed entry '" + tok + "'");
                }
            }
        } else if (!key.empty() && std::isdigit(static_cast<unsigned char>(key[0]))) {
            // gluing row:  <i>: <k>:(pppp) x4
            if (n < 0) throw ParseError(lineno, "gluing row before 'tetrahedra' line");
            if (key.back() != ':') throw ParseError(lineno, "row index must end with ':'");
            int i;
            try {
                i = std::stoi(key.substr(0, key.size() - 1));
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad row index '" + key + "'");
            }
            if (i < 0 || i >= n) throw ParseError(lineno, "row index out of range");
            if (row_line[i] != -1) throw ParseError(lineno, "duplicate row for tetrahedron " + std::to_string(i));
            row_line[i] = lineno;
            for (int j = 0; j < 4; ++j) {
                std::string entry;
                if (!(in >> entry)) throw ParseError(lineno, "row needs four face entries");
                size_t colon = entry.find(':');
                if (colon == std::string::npos || entry.size() < colon + 7 ||
                    entry[colon + 1] != '(' || entry.back() != ')')
                    throw ParseError(lineno, "face entry must look like k:(pppp), got '" + entry + "'");
                FaceGluing g;
                try {
                    g.neighbor = std::stoi(entry.substr(0, colon));
                    g.perm = Perm4::from_string(entry.substr(colon + 2, 4));
                } catch (const std::exception& e) {
                    throw ParseError(lineno, e.what());
                }
                if (g.neighbor < 0 || g.neighbor >= n)
                    throw ParseError(lineno, "face entry points at tetrahedron " +
                                                 std::to_string(g.neighbor) + ", but only " +
                                                 std::to_string(n) + " exist");
                tri.tets[i].faces[j] = g;
            }
            std::string extra;
            if (in >> extra) throw ParseError(lineno, "trailing data '" + extra + "' after four entries");
            ++rows_seen;
        } else {
            throw ParseError(lineno, "unrecognized line '" + line + "'");
        }
    }

    if (n < 0) throw ParseError(lineno, "missing 'tetrahedra' line");
    if (rows_seen != n)
        throw ParseError(lineno, "expected " + std::to_string(n) + " gluing rows, found " +
                                     std::to_string(rows_seen));

    // Involutivity: the entry on the other side must be (i, sigma^{ -1 }).
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < 4; ++j) {
            const FaceGluing& g = tri.tets[i].faces[j];
            const FaceGluing& back = tri.tets[g.neighbor].faces[g.perm(j)];
            if (back.neighbor != i || !(back.perm == g.perm.inverse()))
                throw ParseError(row_line[i],
                                 "non-involutive gluing: face " + std::to_string(j) + " of tet " +
                                     std::to_string(i) + " maps to face " +
                                     std::to_string(g.perm(j)) + " of tet " +
                                     std::to_string(g.neighbor) + ", which does not map back");
        }
    }

    for (const auto& eq : tri.explicit_equations)
        if (eq.a.size() != static_cast<size_t>(n))
            throw ParseError(0, "equation '" + eq.label + "' has wrong exponent length");
    for (const auto& [label, c] : tri.curves)
        if (c.a.size() != static_cast<size_t>(n))
            throw ParseError(0, "curve '" + label + "' has wrong exponent length");
    if (!tri.seed.empty() && tri.seed.size() != static_cast<size_t>(n))
        throw ParseError(0, "seed has wrong length");

    return tri;
}

namespace {

std::string tuple_to_string(const std::vector<int>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

void write_equation(std::ostream& out, const std::string& kind, const MonomialEquation& eq) {
    out << kind << " " << eq.label << " a=" << tuple_to_string(eq.a)
        << " b=" << tuple_to_string(eq.b) << " sign=" << (eq.sign > 0 ? "+1" : "-1") << "\n";
}

}  // namespace

std::string serialize_triangulation(const Triangulation& tri) {
    std::ostringstream out;
    out << "name " << tri.name << "\n";
    out << "tetrahedra " << tri.tets.size() << "\n";
    for (size_t i = 0; i < tri.tets.size(); ++i) {
        out << i << ":";
        for (int j = 0; j < 4; ++j) {
            const FaceGluing& g = tri.tets[i].faces[j];
            out << " " << g.neighbor << ":(" << g.perm.to_string() << ")";
        }
        out << "\n";
    }
    for (const auto& eq : tri.explicit_equations) write_equation(out, "equation", eq);
    for (const auto& [label, c] : tri.curves) write_equation(out, "curve", c);
    if (!tri.seed.empty()) {
        out << "seed";
        for (const Complex& z : tri.seed) {
            out << " " << z.real() << "," << z.imag();
        }
        out << "\n";
    }
    return out.str();
}

std::vector<EdgeClass> compute_edge_classes(const Triangulation& tri) {
    const int n = static_cast<int>(tri.tets.size());
    std::vector<int> parent(6 * n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < 4; ++j) {
            const FaceGluing& g = tri.tets[i].faces[j];
            for (int e = 0; e < 6; ++e) {
                auto [u, v] = edge_vertices(e);
                if (u == j || v == j) continue;  // edge not on face j
                int e2 = edge_index(g.perm(u), g.perm(v));
                int ra = find(6 * i + e), rb = find(6 * g.neighbor + e2);
                if (ra != rb) parent[ra] = rb;
            }
        }
    }

    std::map<int, EdgeClass> groups;
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < 6; ++e)
            groups[find(6 * i + e)].members.push_back({i, e, edge_slot(e)});

    std::vector<EdgeClass> classes;
    classes.reserve(groups.size());
    for (auto& [root, cls] : groups) classes.push_back(std::move(cls));
    return classes;
}

std::vector<MonomialEquation> build_gluing_equations(const Triangulation& tri,
                                                     const std::vector<EdgeClass>& classes) {
    const int n = static_cast<int>(tri.tets.size());
    std::vector<MonomialEquation> eqs;
    eqs.reserve(classes.size());
    for (size_t c = 0; c < classes.size(); ++c) {
        MonomialEquation eq;
        eq.a.assign(n, 0);
        eq.b.assign(n, 0);
        eq.sign = 1;
        eq.label = "edge" + std::to_string(c + 1);
        for (const auto& m : classes[c].members) {
            switch (m.slot) {
                case ShapeSlot::Z: eq.a[m.tet] += 1; break;
                case ShapeSlot::ZPrime: eq.b[m.tet] -= 1; break;
                case ShapeSlot::ZDoublePrime:
                    eq.a[m.tet] -= 1;
                    eq.b[m.tet] += 1;
                    eq.sign = -eq.sign;
                    break;
            }
        }
        eqs.push_back(std::move(eq));
    }
    return eqs;
}

}  // namespace ideal
