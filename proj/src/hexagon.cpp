#include "stoch2c/hexagon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stoch2c {

namespace detail {

bool hexagon_candidate_fits(Axial anchor, const std::array<std::int32_t, 6>& sides, std::int32_t s) {
    Axial p = anchor;
    for (int j = 0; j < 6; ++j) {
        if (!in_hexagon(p, s)) return false;
        p = p + sides[static_cast<std::size_t>(j)] * kHexDirections[static_cast<std::size_t>(j)];
    }
    return p == anchor;
}

} // namespace detail

Hexagon Hexagon::make(int k, Axial anchor, const std::array<std::int32_t, 6>& sides, bool require_proper) {
    if (k < 1) throw std::invalid_argument("Hexagon: k must be >= 1");
    Hexagon h;
    h.k_ = k;
    h.s_ = static_cast<std::int32_t>(std::int64_t{1} << (k - 1));
    h.anchor_ = anchor;
    h.len_ = sides;
    for (std::int32_t l : sides) {
        if (l < 0) throw std::invalid_argument("Hexagon: negative side length");
        if (require_proper && l < 1)
            throw std::invalid_argument("Hexagon: a hexagon has six sides of positive length");
    }
    Axial p = anchor;
    for (int j = 0; j < 6; ++j) {
        if (!in_hexagon(p, h.s_)) throw std::invalid_argument("Hexagon: corner outside V_k");
        p = p + sides[static_cast<std::size_t>(j)] * kHexDirections[static_cast<std::size_t>(j)];
    }
    if (p != anchor) throw std::invalid_argument("Hexagon: sides do not close up");
    return h;
}

Hexagon Hexagon::create(int k, Axial anchor, const std::array<std::int32_t, 6>& sides) {
    return make(k, anchor, sides, true);
}

Hexagon Hexagon::full_vk(int k) {
    const auto s = static_cast<std::int32_t>(std::int64_t{1} << (k - 1));
    return create(k, Axial{0, -s}, {s, s, s, s, s, s});
}

bool Hexagon::is_proper() const {
    return std::all_of(len_.begin(), len_.end(), [](std::int32_t l) { return l >= 1; });
}

std::array<Axial, 6> Hexagon::corners() const {
    std::array<Axial, 6> c;
    Axial p = anchor_;
    for (int j = 0; j < 6; ++j) {
        c[static_cast<std::size_t>(j)] = p;
        p = p + len_[static_cast<std::size_t>(j)] * kHexDirections[static_cast<std::size_t>(j)];
    }
    return c;
}

std::int64_t Hexagon::boundary_edges() const {
    std::int64_t b = 0;
    for (std::int32_t l : len_) b += l;
    return b;
}

namespace {

struct Bounds {
    std::int32_t amin, amax, bmin, bmax, cmin, cmax;  // c = a + b

    bool contains(Axial p) const {
        return p.a >= amin && p.a <= amax && p.b >= bmin && p.b <= bmax && p.a + p.b >= cmin &&
               p.a + p.b <= cmax;
    }
    bool strictly_inside(Axial p) const {
        return p.a > amin && p.a < amax && p.b > bmin && p.b < bmax && p.a + p.b > cmin &&
               p.a + p.b < cmax;
    }
    // both endpoints on one tight constraint line
    bool edge_on_boundary(Axial p, Axial q) const {
        if (p.a == q.a && (p.a == amin || p.a == amax)) return true;
        if (p.b == q.b && (p.b == bmin || p.b == bmax)) return true;
        if (p.a + p.b == q.a + q.b && (p.a + p.b == cmin || p.a + p.b == cmax)) return true;
        return false;
    }
};

Bounds bounds_of(const Hexagon& h) {
    const auto cs = h.corners();
    Bounds b{cs[0].a, cs[0].a, cs[0].b, cs[0].b, cs[0].a + cs[0].b, cs[0].a + cs[0].b};
    for (const Axial& p : cs) {
        b.amin = std::min(b.amin, p.a);
        b.amax = std::max(b.amax, p.a);
        b.bmin = std::min(b.bmin, p.b);
        b.bmax = std::max(b.bmax, p.b);
        b.cmin = std::min(b.cmin, p.a + p.b);
        b.cmax = std::max(b.cmax, p.a + p.b);
    }
    return b;
}

} // namespace

Hexagon::Counts Hexagon::open_counts() const {
    const Bounds bd = bounds_of(*this);
    Counts c;
    for (std::int32_t a = bd.amin; a <= bd.amax; ++a)
        for (std::int32_t b = bd.bmin; b <= bd.bmax; ++b) {
            const Axial p{a, b};
            if (bd.contains(p)) {
                if (bd.strictly_inside(p)) ++c.f0;
                for (Axial d : {Axial{1, 0}, Axial{0, 1}, Axial{1, -1}}) {
                    const Axial q = p + d;
                    if (!bd.contains(q)) continue;
                    if (bd.edge_on_boundary(p, q))
                        ++c.b;
                    else
                        ++c.f1;
                }
            }
            for (bool up : {true, false}) {
                const auto tc = tri_corners(TriCell{p, up});
                if (bd.contains(tc[0]) && bd.contains(tc[1]) && bd.contains(tc[2])) ++c.f2;
            }
        }
    return c;
}

bool Hexagon::side_on_vk_boundary(int j) const {
    const auto ju = static_cast<std::size_t>(j);
    if (len_[ju] == 0) return false;
    const Axial p = corners()[ju];
    const Axial d = kHexDirections[ju];
    if (d.a == 0) return std::abs(p.a) == s_;           // side along constant a
    if (d.b == 0) return std::abs(p.b) == s_;           // constant b
    return std::abs(p.a + p.b) == s_;                   // constant a+b
}

int Hexagon::longest_side() const {
    int best = 0;
    for (int j = 1; j < 6; ++j)
        if (len_[static_cast<std::size_t>(j)] > len_[static_cast<std::size_t>(best)]) best = j;
    return best;
}

std::int32_t Hexagon::longest_length() const { return len_[static_cast<std::size_t>(longest_side())]; }

std::optional<int> Hexagon::longest_side_off_boundary() const {
    const std::int32_t t = longest_length();
    for (int j = 0; j < 6; ++j)
        if (len_[static_cast<std::size_t>(j)] == t && !side_on_vk_boundary(j)) return j;
    return std::nullopt;
}

bool Hexagon::equals_vk() const {
    return std::all_of(len_.begin(), len_.end(), [&](std::int32_t l) { return l == s_; });
}

Hexagon Hexagon::translated(Axial d) const { return make(k_, anchor_ + d, len_, false); }

Hexagon shift_longest_side_inward(const Hexagon& h) {
    if (h.equals_vk()) throw std::invalid_argument("shift_longest_side_inward: h is all of V_k");
    const std::int32_t s = h.vk_side();
    for (std::int32_t r = 0; r <= 2 * s; ++r)
        for (std::int32_t a = -r; a <= r; ++a)
            for (std::int32_t b = -r; b <= r; ++b) {
                const Axial d{a, b};
                if (hex_norm(d) != r) continue;
                Hexagon cand = h;
                if (r > 0) {
                    bool fits = true;
                    Axial p = h.anchor() + d;
                    for (int j = 0; j < 6 && fits; ++j) {
                        if (!in_hexagon(p, s)) fits = false;
                        p = p + h.sides()[static_cast<std::size_t>(j)] * kHexDirections[static_cast<std::size_t>(j)];
                    }
                    if (!fits) continue;
                    cand = h.translated(d);
                }
                if (cand.longest_side_off_boundary()) return cand;
            }
    throw std::logic_error("shift_longest_side_inward: no admissible translate found");
}

Hexagon add_row(const Hexagon& h) {
    const auto side = h.longest_side_off_boundary();
    if (!side)
        throw std::invalid_argument("add_row: the longest side lies on the boundary of V_k");
    const int j = *side;
    auto sides = h.sides();
    sides[static_cast<std::size_t>(j)] -= 1;
    sides[static_cast<std::size_t>((j + 5) % 6)] += 1;
    sides[static_cast<std::size_t>((j + 1) % 6)] += 1;
    Axial anchor = h.anchor();
    if (j == 0) anchor = anchor + kHexDirections[5];   // side 5 extends past the old anchor
    if (j == 5) anchor = anchor - kHexDirections[0];   // side 0 now starts one step earlier
    try {
        return Hexagon::make(h.k(), anchor, sides, false);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("add_row: the row would exit V_k");
    }
}

bool isoperimetric_check(const Hexagon& h) {
    const auto c = h.open_counts();
    const double bound = static_cast<double>(c.b) * static_cast<double>(c.b) /
                         (std::sqrt(3.0) * 3.14159265358979323846);
    return static_cast<double>(c.f2) <= bound + 1e-9;
}

} // namespace stoch2c
