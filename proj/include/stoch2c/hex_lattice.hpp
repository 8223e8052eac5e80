#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>

namespace stoch2c {

// Axial coordinates on the triangular lattice spanned by e1 and e2 (60 deg
// apart).  The closed region of the k-th subdivision of a triangle is the
// hexagon of radius s = 2^(k-1): |a| <= s, |b| <= s, |a+b| <= s.
struct Axial {
    std::int32_t a = 0;
    std::int32_t b = 0;
    friend auto operator<=>(const Axial&, const Axial&) = default;
};

inline Axial operator+(Axial p, Axial q) { return {p.a + q.a, p.b + q.b}; }
inline Axial operator-(Axial p, Axial q) { return {p.a - q.a, p.b - q.b}; }
inline Axial operator*(std::int32_t c, Axial p) { return {c * p.a, c * p.b}; }

inline std::int32_t hex_norm(Axial p) {
    std::int32_t m = std::abs(p.a);
    if (std::abs(p.b) > m) m = std::abs(p.b);
    if (std::abs(p.a + p.b) > m) m = std::abs(p.a + p.b);
    return m;
}

inline bool in_hexagon(Axial p, std::int32_t s) { return hex_norm(p) <= s; }

// Unit lattice directions in rotational (counterclockwise) order.
inline constexpr std::array<Axial, 6> kHexDirections{
    Axial{1, 0}, Axial{0, 1}, Axial{-1, 1}, Axial{-1, 0}, Axial{0, -1}, Axial{1, -1}};

// A unit lattice triangle.  up: {(a,b),(a+1,b),(a,b+1)};
// down: {(a+1,b),(a,b+1),(a+1,b+1)}.
struct TriCell {
    Axial origin;
    bool up = true;
    friend auto operator<=>(const TriCell&, const TriCell&) = default;
};

inline std::array<Axial, 3> tri_corners(const TriCell& t) {
    const Axial o = t.origin;
    if (t.up) return {o, Axial{o.a + 1, o.b}, Axial{o.a, o.b + 1}};
    return {Axial{o.a + 1, o.b}, Axial{o.a, o.b + 1}, Axial{o.a + 1, o.b + 1}};
}

// True when both endpoints of the unit edge (p, q) lie on a common side line
// of the radius-s hexagon, i.e. the edge is contained in the boundary.
inline bool edge_on_hex_boundary(Axial p, Axial q, std::int32_t s) {
    if (p.a == q.a && std::abs(p.a) == s) return true;
    if (p.b == q.b && std::abs(p.b) == s) return true;
    if (p.a + p.b == q.a + q.b && std::abs(p.a + p.b) == s) return true;
    return false;
}

// Triangles around an interior vertex v, in rotational order starting with
// the triangle spanned towards +e1,+e2.
inline std::array<TriCell, 6> tris_around_vertex(Axial v) {
    return {TriCell{{v.a, v.b}, true},      TriCell{{v.a - 1, v.b}, false},
            TriCell{{v.a - 1, v.b}, true},  TriCell{{v.a - 1, v.b - 1}, false},
            TriCell{{v.a, v.b - 1}, true},  TriCell{{v.a, v.b - 1}, false}};
}

} // namespace stoch2c
