#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ideal {

using Complex = std::complex<double>;

/// Parse failure with the 1-based line number of the offending input.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Permutation of {0,1,2,3}, stored as its image string: perm[i] = sigma(i).
struct Perm4 {
    std::array<int, 4> image{0, 1, 2, 3};

    int operator()(int i) const { return image[i]; }
    Perm4 inverse() const;
    bool is_bijection() const;

    static Perm4 from_string(const std::string& s);  // "0132" -> sigma(0)sigma(1)sigma(2)sigma(3)
    std::string to_string() const;

    bool operator==(const Perm4&) const = default;
};

struct FaceGluing {
    int neighbor = -1;  // tetrahedron index
    Perm4 perm;

    bool operator==(const FaceGluing&) const = default;
};

struct Tetrahedron {
    std::array<FaceGluing, 4> faces;  // indexed by the opposite vertex

    bool operator==(const Tetrahedron&) const = default;
};

/// A multiplicative equation  prod_i z_i^{a_i} (1-z_i)^{b_i} = sign,  sign in {+1,-1}.
/// Also used for peripheral holonomies, where the value sign * prod(...) is the
/// holonomy of the curve.
struct MonomialEquation {
    std::vector<int> a;
    std::vector<int> b;
    int sign = 1;
    std::string label;

    bool operator==(const MonomialEquation&) const = default;
};

struct Triangulation {
    std::string name;
    std::vector<Tetrahedron> tets;

    // Optional blocks from the input file.
    std::vector<MonomialEquation> explicit_equations;
    std::map<std::string, MonomialEquation> curves;
    std::vector<Complex> seed;  // empty means "use the default seed"

    bool operator==(const Triangulation&) const = default;
};

/// Which companion of the tetrahedron's shape parameter sits on an edge:
/// z, z' = 1/(1-z), or z'' = (z-1)/z.
enum class ShapeSlot { Z, ZPrime, ZDoublePrime };

/// The six edges of a tetrahedron indexed 0..5:
///   0:{0,1} 1:{0,2} 2:{0,3} 3:{1,2} 4:{1,3} 5:{2,3}
int edge_index(int u, int v);
std::pair<int, int> edge_vertices(int e);

/// Slot convention: {0,1},{2,3} carry z; {0,2},{1,3} carry z'; {0,3},{1,2} carry z''.
ShapeSlot edge_slot(int e);

struct EdgeClass {
    struct Member {
        int tet;
        int edge;  // 0..5, see edge_index
        ShapeSlot slot;

        bool operator==(const Member&) const = default;
    };
    std::vector<Member> members;
};

Triangulation parse_triangulation(const std::string& text);
std::string serialize_triangulation(const Triangulation& tri);

/// Orbits of the 6n tetrahedron edges under the face-gluing maps.
std::vector<EdgeClass> compute_edge_classes(const Triangulation& tri);

/// One equation per edge class.  Each member contributes its slot:
///   z   -> a += 1
///   z'  -> b -= 1           (z' = 1/(1-z))
///   z'' -> a -= 1, b += 1, flips the sign   (z'' = -(1-z)/z)
std::vector<MonomialEquation> build_gluing_equations(const Triangulation& tri,
                                                     const std::vector<EdgeClass>& classes);

}  // namespace ideal
