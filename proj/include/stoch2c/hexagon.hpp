#pragma once

#include "stoch2c/complex.hpp"
#include "stoch2c/hex_lattice.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace stoch2c {

// An open hexagon in V_k: a convex domain whose six sides run parallel to
// the sides of V_k.  Sides are listed counterclockwise in the order of
// kHexDirections; the anchor is the corner where side 5 ends and side 0
// starts.  A proper hexagon has all six side lengths >= 1; rows added along
// a side of length 1 collapse that side, so results of add_row may carry a
// single zero side and report is_proper() == false.
class Hexagon {
public:
    // Proper hexagons only: every side >= 1, walk closes up, fits in V_k.
    static Hexagon create(int k, Axial anchor, const std::array<std::int32_t, 6>& sides);

    // The hexagon filling all of V_k.
    static Hexagon full_vk(int k);

    int k() const { return k_; }
    std::int32_t vk_side() const { return s_; }
    Axial anchor() const { return anchor_; }
    const std::array<std::int32_t, 6>& sides() const { return len_; }

    bool is_proper() const;
    bool equals_vk() const;
    std::array<Axial, 6> corners() const;  // P0 .. P5 (P0 = anchor)
    std::int64_t boundary_edges() const;   // b = sum of side lengths

    struct Counts {
        std::int64_t f0 = 0, f1 = 0, f2 = 0, b = 0;
    };
    // Direct lattice count of the open cells and of the boundary edges.
    Counts open_counts() const;

    bool side_on_vk_boundary(int j) const;  // zero-length sides never are
    int longest_side() const;               // first index attaining the max length
    std::int32_t longest_length() const;
    // First side of maximal length not contained in the boundary of V_k.
    std::optional<int> longest_side_off_boundary() const;

    Hexagon translated(Axial d) const;  // throws if the image leaves V_k

    friend bool operator==(const Hexagon&, const Hexagon&) = default;

private:
    Hexagon() = default;
    static Hexagon make(int k, Axial anchor, const std::array<std::int32_t, 6>& sides, bool require_proper);

    int k_ = 0;
    std::int32_t s_ = 0;
    Axial anchor_{};
    std::array<std::int32_t, 6> len_{};

    friend Hexagon add_row(const Hexagon&);
};

// A translate of h whose longest side is not contained in the boundary of
// V_k, found by a deterministic search over offsets by increasing distance
// (h itself is checked first).  Throws when h == V_k.
Hexagon shift_longest_side_inward(const Hexagon& h);

// Enlarges h by a full row of triangles along its longest off-boundary side
// (throws when every longest side lies on the boundary, or when the row
// would exit V_k).  Adds t-1 open vertices, 3t-2 open edges and 2t-1
// triangles, where t is the side length.
Hexagon add_row(const Hexagon& h);

// Lattice form of the planar isoperimetric inequality:
// f2 <= b^2 / (sqrt(3) * pi) + 1e-9.
bool isoperimetric_check(const Hexagon& h);

// Every proper hexagon contained in V_k, each exactly once.
template <typename Fn>
void for_each_hexagon_in_vk(int k, Fn&& fn);

namespace detail {
bool hexagon_candidate_fits(Axial anchor, const std::array<std::int32_t, 6>& sides, std::int32_t s);
}

template <typename Fn>
void for_each_hexagon_in_vk(int k, Fn&& fn) {
    const std::int32_t s = static_cast<std::int32_t>(std::int64_t{1} << (k - 1));
    for (std::int32_t l0 = 1; l0 <= 2 * s; ++l0)
        for (std::int32_t l1 = 1; l1 <= 2 * s; ++l1)
            for (std::int32_t l2 = 1; l2 <= 2 * s; ++l2)
                for (std::int32_t l3 = 1; l3 <= 2 * s; ++l3) {
                    const std::int32_t l4 = l0 + l1 - l3;
                    const std::int32_t l5 = l2 + l3 - l0;
                    if (l4 < 1 || l5 < 1) continue;
                    const std::array<std::int32_t, 6> sides{l0, l1, l2, l3, l4, l5};
                    for (std::int32_t a = -s; a <= s; ++a)
                        for (std::int32_t b = -s; b <= s; ++b) {
                            const Axial anchor{a, b};
                            if (!in_hexagon(anchor, s)) continue;
                            if (!detail::hexagon_candidate_fits(anchor, sides, s)) continue;
                            fn(Hexagon::create(k, anchor, sides));
                        }
                }
}

} // namespace stoch2c
