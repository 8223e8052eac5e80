#include "stoch2c/subdivision.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace stoch2c {

namespace {

std::int64_t pow2(int e) { return std::int64_t{1} << e; }
std::int64_t pow4(int e) { return std::int64_t{1} << (2 * e); }

std::int32_t index_of(const std::vector<Simplex>& sorted, const Simplex& s) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), s);
    if (it == sorted.end() || *it != s) return -1;
    return static_cast<std::int32_t>(it - sorted.begin());
}

} // namespace

FVector vk_fvector(int k) {
    if (k < 1) throw std::invalid_argument("vk_fvector: k must be >= 1");
    if (k > 30) throw std::invalid_argument("vk_fvector: k too large for 64-bit counts");
    return FVector{3 * pow4(k - 1) - 3 * pow2(k - 1) + 1,
                   9 * pow4(k - 1) - 3 * pow2(k - 1),
                   6 * pow4(k - 1)};
}

FVector fvector_subdivided(const SimplicialComplex2& s, int k) {
    if (k < 1) throw std::invalid_argument("fvector_subdivided: k must be >= 1");
    if (k > 20) throw std::invalid_argument("fvector_subdivided: k too large for 64-bit counts");
    const FVector f = s.f_vector();
    const FVector v = vk_fvector(k);
    return FVector{f.f0 + (pow2(k) - 1) * f.f1 + v.f0 * f.f2,
                   pow2(k) * f.f1 + v.f1 * f.f2,
                   v.f2 * f.f2};
}

SubdividedComplex SubdividedComplex::build(const SimplicialComplex2& base, int k) {
    if (k < 0) throw std::invalid_argument("subdivide_k: k must be >= 0");
    SubdividedComplex sc;
    sc.k_ = k;
    sc.base_ = base;
    if (k == 0) {
        sc.side_ = 0;
        sc.pieces_ = 1;
        sc.complex_ = base;
        return sc;
    }
    if (k > 14) throw std::invalid_argument("subdivide_k: constructive subdivision capped at k = 14");

    const std::int32_t s = static_cast<std::int32_t>(pow2(k - 1));
    const std::int32_t m = 2 * s;  // pieces per original edge
    sc.side_ = s;
    sc.pieces_ = m;

    const auto& VS = base.simplices(0);
    const auto& ES = base.simplices(1);
    const auto& TS = base.simplices(2);
    const auto n0 = static_cast<std::int64_t>(VS.size());
    const auto n1 = static_cast<std::int64_t>(ES.size());
    const auto n2 = static_cast<std::int64_t>(TS.size());

    sc.per_tri_ = 3 * static_cast<std::int64_t>(s) * s - 3 * s + 1;
    sc.edge_block_ = n0;
    sc.tri_block_ = n0 + n1 * (m - 1);
    const std::int64_t total = sc.tri_block_ + n2 * sc.per_tri_;

    sc.interior_points_.clear();
    for (std::int32_t a = -(s - 1); a <= s - 1; ++a)
        for (std::int32_t b = -(s - 1); b <= s - 1; ++b)
            if (in_hexagon({a, b}, s - 1)) sc.interior_points_.push_back({a, b});

    // Global ids: original vertices in sorted order, then the interior
    // points of each original edge, then the interior lattice points of each
    // original triangle; everything in canonical chart order.
    std::array<std::vector<Simplex>, 3> cells;
    cells[0].reserve(static_cast<std::size_t>(total));
    for (std::int64_t v = 0; v < total; ++v)
        cells[0].push_back(Simplex::vertex(static_cast<VertexId>(v)));

    auto vertex_global = [&](VertexId original) {
        return static_cast<VertexId>(index_of(VS, Simplex::vertex(original)));
    };
    auto edge_point = [&](std::int32_t edge_index, std::int32_t pos) -> VertexId {
        const Simplex& e = ES[static_cast<std::size_t>(edge_index)];
        if (pos == 0) return vertex_global(e[0]);
        if (pos == m) return vertex_global(e[1]);
        return static_cast<VertexId>(sc.edge_block_ + static_cast<std::int64_t>(edge_index) * (m - 1) +
                                     pos - 1);
    };

    std::vector<Simplex> edges;
    for (std::int32_t j = 0; j < n1; ++j)
        for (std::int32_t pos = 0; pos < m; ++pos) {
            VertexId x = edge_point(j, pos);
            VertexId y = edge_point(j, pos + 1);
            edges.push_back(Simplex::edge(std::min(x, y), std::max(x, y)));
        }

    std::vector<Simplex> tris;
    for (std::int32_t t = 0; t < n2; ++t) {
        for (std::int32_t a = -s; a <= s; ++a)
            for (std::int32_t b = -s; b <= s; ++b) {
                const Axial p{a, b};
                if (in_hexagon(p, s)) {
                    for (Axial d : {Axial{1, 0}, Axial{0, 1}, Axial{1, -1}}) {
                        const Axial q = p + d;
                        if (!in_hexagon(q, s)) continue;
                        VertexId x = sc.tri_lattice_vertex(t, p);
                        VertexId y = sc.tri_lattice_vertex(t, q);
                        edges.push_back(Simplex::edge(std::min(x, y), std::max(x, y)));
                    }
                }
                // a down cell's origin is not one of its corners, so the
                // containment test runs on the corners alone
                for (bool up : {true, false}) {
                    const auto corners = tri_corners(TriCell{p, up});
                    if (!in_hexagon(corners[0], s) || !in_hexagon(corners[1], s) ||
                        !in_hexagon(corners[2], s))
                        continue;
                    VertexId ids[3];
                    for (int i = 0; i < 3; ++i) ids[i] = sc.tri_lattice_vertex(t, corners[i]);
                    std::sort(ids, ids + 3);
                    tris.push_back(Simplex::triangle(ids[0], ids[1], ids[2]));
                }
            }
    }

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::sort(tris.begin(), tris.end());
    cells[1] = std::move(edges);
    cells[2] = std::move(tris);
    sc.complex_ = SimplicialComplex2::from_closed_unchecked(std::move(cells));
    return sc;
}

VertexId SubdividedComplex::tri_lattice_vertex(std::int32_t tri_index, Axial p) const {
    if (k_ < 1) throw std::logic_error("tri_lattice_vertex: charts require k >= 1");
    const auto& TS = base_.simplices(2);
    if (tri_index < 0 || tri_index >= static_cast<std::int32_t>(TS.size()))
        throw std::invalid_argument("tri_lattice_vertex: not a triangle of the base complex");
    const std::int32_t s = side_;
    if (!in_hexagon(p, s)) throw std::invalid_argument("tri_lattice_vertex: point outside chart");

    if (in_hexagon(p, s - 1)) {
        auto it = std::lower_bound(interior_points_.begin(), interior_points_.end(), p);
        const auto idx = static_cast<std::int64_t>(it - interior_points_.begin());
        return static_cast<VertexId>(tri_block_ + tri_index * per_tri_ + idx);
    }

    // Boundary: the hexagon sides C0..C5 carry the three original edges,
    // two consecutive sides each; positions are measured from the smaller
    // endpoint of the (sorted) original edge.
    const Simplex& tri = base_.simplices(2)[static_cast<std::size_t>(tri_index)];
    const VertexId u = tri[0], v = tri[1], w = tri[2];
    const auto& ES = base_.simplices(1);
    auto edge_point = [&](VertexId x, VertexId y, std::int32_t pos) -> VertexId {
        const Simplex e = Simplex::edge(x, y);
        const std::int32_t j = index_of(ES, e);
        if (pos == 0) return static_cast<VertexId>(index_of(base_.simplices(0), Simplex::vertex(x)));
        if (pos == pieces_) return static_cast<VertexId>(index_of(base_.simplices(0), Simplex::vertex(y)));
        return static_cast<VertexId>(edge_block_ + static_cast<std::int64_t>(j) * (pieces_ - 1) + pos - 1);
    };

    const std::int32_t a = p.a, b = p.b;
    if (a + b == s && a >= 0 && b >= 0) return edge_point(u, v, b);
    if (b == s) return edge_point(u, v, s - a);
    if (a == -s) return edge_point(v, w, s - b);
    if (a + b == -s && a <= 0) return edge_point(v, w, a + 2 * s);
    if (b == -s) return edge_point(u, w, 2 * s - a);
    return edge_point(u, w, -b);  // a == s
}

VertexId SubdividedComplex::vertex_at(const LatticeCoord& c) const {
    switch (c.chart.dim) {
        case 0: {
            const auto& VS = base_.simplices(0);
            if (c.chart.index < 0 || c.chart.index >= static_cast<std::int32_t>(VS.size()))
                throw std::invalid_argument("vertex_at: bad vertex chart");
            return static_cast<VertexId>(c.chart.index);
        }
        case 1: {
            const auto& ES = base_.simplices(1);
            if (c.chart.index < 0 || c.chart.index >= static_cast<std::int32_t>(ES.size()))
                throw std::invalid_argument("vertex_at: bad edge chart");
            if (c.edge_pos < 0 || c.edge_pos > pieces_)
                throw std::invalid_argument("vertex_at: edge position out of range");
            const Simplex& e = ES[static_cast<std::size_t>(c.chart.index)];
            if (c.edge_pos == 0)
                return static_cast<VertexId>(index_of(base_.simplices(0), Simplex::vertex(e[0])));
            if (c.edge_pos == pieces_)
                return static_cast<VertexId>(index_of(base_.simplices(0), Simplex::vertex(e[1])));
            return static_cast<VertexId>(edge_block_ + static_cast<std::int64_t>(c.chart.index) * (pieces_ - 1) +
                                         c.edge_pos - 1);
        }
        case 2: return tri_lattice_vertex(c.chart.index, c.tri_coord);
        default: throw std::invalid_argument("vertex_at: bad chart dimension");
    }
}

LatticeCoord SubdividedComplex::coord_of(VertexId v) const {
    if (k_ < 1) throw std::logic_error("coord_of: charts require k >= 1");
    const auto id = static_cast<std::int64_t>(v);
    if (id < 0 || id >= static_cast<std::int64_t>(complex_.simplices(0).size()))
        throw std::invalid_argument("coord_of: vertex id out of range");
    LatticeCoord c;
    if (id < edge_block_) {
        c.chart = ChartRef{0, static_cast<std::int32_t>(id)};
        return c;
    }
    if (id < tri_block_) {
        const std::int64_t off = id - edge_block_;
        c.chart = ChartRef{1, static_cast<std::int32_t>(off / (pieces_ - 1))};
        c.edge_pos = static_cast<std::int32_t>(off % (pieces_ - 1)) + 1;
        return c;
    }
    const std::int64_t off = id - tri_block_;
    c.chart = ChartRef{2, static_cast<std::int32_t>(off / per_tri_)};
    c.tri_coord = interior_points_[static_cast<std::size_t>(off % per_tri_)];
    return c;
}

OpenComplex SubdividedComplex::interior_of(std::int32_t tri_index) const {
    if (k_ < 1) throw std::invalid_argument("interior_of: requires k >= 1");
    const auto& TS = base_.simplices(2);
    if (tri_index < 0 || tri_index >= static_cast<std::int32_t>(TS.size()))
        throw std::invalid_argument("interior_of: not a triangle of the base complex");
    const std::int32_t s = side_;

    std::array<std::vector<Simplex>, 3> cells;
    for (std::int64_t i = 0; i < per_tri_; ++i)
        cells[0].push_back(Simplex::vertex(static_cast<VertexId>(tri_block_ + tri_index * per_tri_ + i)));

    for (std::int32_t a = -s; a <= s; ++a)
        for (std::int32_t b = -s; b <= s; ++b) {
            const Axial p{a, b};
            if (in_hexagon(p, s)) {
                for (Axial d : {Axial{1, 0}, Axial{0, 1}, Axial{1, -1}}) {
                    const Axial q = p + d;
                    if (!in_hexagon(q, s) || edge_on_hex_boundary(p, q, s)) continue;
                    VertexId x = tri_lattice_vertex(tri_index, p);
                    VertexId y = tri_lattice_vertex(tri_index, q);
                    cells[1].push_back(Simplex::edge(std::min(x, y), std::max(x, y)));
                }
            }
            for (bool up : {true, false}) {
                const auto corners = tri_corners(TriCell{p, up});
                if (!in_hexagon(corners[0], s) || !in_hexagon(corners[1], s) ||
                    !in_hexagon(corners[2], s))
                    continue;
                VertexId ids[3];
                for (int i = 0; i < 3; ++i) ids[i] = tri_lattice_vertex(tri_index, corners[i]);
                std::sort(ids, ids + 3);
                cells[2].push_back(Simplex::triangle(ids[0], ids[1], ids[2]));
            }
        }
    for (auto& v : cells) std::sort(v.begin(), v.end());
    return OpenComplex(k_, std::move(cells));
}

OpenComplex v_k_open(int k) {
    if (k < 1) throw std::invalid_argument("v_k_open: k must be >= 1");
    const SimplicialComplex2 unit = SimplicialComplex2::from_maximal_simplices({Simplex::triangle(0, 1, 2)});
    return SubdividedComplex::build(unit, k).interior_of(0);
}

} // namespace stoch2c
