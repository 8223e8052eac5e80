#include "stoch2c/domain.hpp"

#include "stoch2c/parallel.hpp"
#include "stoch2c/rng.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace stoch2c {

namespace {

SimplicialComplex2 unit_triangle() {
    return SimplicialComplex2::from_maximal_simplices({Simplex::triangle(0, 1, 2)});
}

std::pair<Axial, Axial> normalize_edge(Axial p, Axial q) { return p < q ? std::pair{p, q} : std::pair{q, p}; }

} // namespace

VkGeometry::VkGeometry(int k) : k_(k), sub_(SubdividedComplex::build(unit_triangle(), k)) {
    if (k < 1) throw std::invalid_argument("VkGeometry: k must be >= 1");
    s_ = sub_.side();

    for (std::int32_t a = -s_ + 1; a <= s_ - 1; ++a)
        for (std::int32_t b = -s_ + 1; b <= s_ - 1; ++b)
            if (in_hexagon({a, b}, s_ - 1)) verts_.push_back({a, b});

    for (std::int32_t a = -s_; a <= s_; ++a)
        for (std::int32_t b = -s_; b <= s_; ++b) {
            const Axial p{a, b};
            if (in_hexagon(p, s_)) {
                for (Axial d : {Axial{1, 0}, Axial{0, 1}, Axial{1, -1}}) {
                    const Axial q = p + d;
                    if (in_hexagon(q, s_) && !edge_on_hex_boundary(p, q, s_)) edges_.push_back({p, q});
                }
            }
            for (bool up : {true, false}) {
                const TriCell t{p, up};
                const auto c = tri_corners(t);
                if (in_hexagon(c[0], s_) && in_hexagon(c[1], s_) && in_hexagon(c[2], s_))
                    tris_.push_back(t);
            }
        }

    for (std::size_t i = 0; i < tris_.size(); ++i) tri_index_[tris_[i]] = static_cast<std::int32_t>(i);
    for (std::size_t i = 0; i < edges_.size(); ++i) edge_index_[edges_[i]] = static_cast<std::int32_t>(i);
    for (std::size_t i = 0; i < tris_.size(); ++i)
        tri_simplex_index_[triangle_simplex(i)] = static_cast<std::int32_t>(i);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        edge_simplex_index_[interior_edge_simplex(i)] = static_cast<std::int32_t>(i);

    words1_ = (edges_.size() + 63) / 64;
    words2_ = (tris_.size() + 63) / 64;
    vmask1_.assign(verts_.size() * words1_, 0);
    vmask2_.assign(verts_.size() * words2_, 0);
    emask2_.assign(edges_.size() * words2_, 0);

    for (std::size_t vi = 0; vi < verts_.size(); ++vi) {
        for (std::int32_t ti : tris_around(verts_[vi])) {
            if (ti < 0) throw std::logic_error("VkGeometry: interior vertex missing a triangle");
            vmask2_[vi * words2_ + static_cast<std::size_t>(ti) / 64] |= 1ull << (ti % 64);
        }
        for (std::int32_t ei : edges_around(verts_[vi])) {
            if (ei < 0) throw std::logic_error("VkGeometry: interior vertex missing an edge");
            vmask1_[vi * words1_ + static_cast<std::size_t>(ei) / 64] |= 1ull << (ei % 64);
        }
    }
    for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
        const auto [p, q] = edges_[ei];
        // the two flanking triangles of an interior edge always lie inside
        int found = 0;
        const Axial d = q - p;
        Axial thirds[2];
        if (d == Axial{1, 0}) {
            thirds[0] = {p.a, p.b + 1};
            thirds[1] = {p.a + 1, p.b - 1};
        } else if (d == Axial{0, 1}) {
            thirds[0] = {p.a + 1, p.b};
            thirds[1] = {p.a - 1, p.b + 1};
        } else {  // {1, -1}
            thirds[0] = {p.a + 1, p.b};
            thirds[1] = {p.a, p.b - 1};
        }
        for (const Axial r : thirds) {
            // identify the TriCell spanned by {p, q, r}
            Axial lo{std::min({p.a, q.a, r.a}), std::min({p.b, q.b, r.b})};
            for (bool up : {true, false}) {
                const TriCell t{lo, up};
                const auto c = tri_corners(t);
                const bool match = (c[0] == p || c[0] == q || c[0] == r) &&
                                   (c[1] == p || c[1] == q || c[1] == r) &&
                                   (c[2] == p || c[2] == q || c[2] == r);
                if (match) {
                    const std::int32_t ti = triangle_index(t);
                    if (ti >= 0) {
                        emask2_[ei * words2_ + static_cast<std::size_t>(ti) / 64] |= 1ull << (ti % 64);
                        ++found;
                    }
                }
            }
        }
        if (found != 2) throw std::logic_error("VkGeometry: interior edge without two flanking triangles");
    }
}

Simplex VkGeometry::triangle_simplex(std::size_t i) const {
    const auto c = tri_corners(tris_[i]);
    VertexId ids[3];
    for (int j = 0; j < 3; ++j) ids[j] = sub_.tri_lattice_vertex(0, c[static_cast<std::size_t>(j)]);
    std::sort(ids, ids + 3);
    return Simplex::triangle(ids[0], ids[1], ids[2]);
}

Simplex VkGeometry::interior_edge_simplex(std::size_t i) const {
    VertexId x = sub_.tri_lattice_vertex(0, edges_[i].first);
    VertexId y = sub_.tri_lattice_vertex(0, edges_[i].second);
    return Simplex::edge(std::min(x, y), std::max(x, y));
}

Simplex VkGeometry::interior_vertex_simplex(std::size_t i) const {
    return Simplex::vertex(sub_.tri_lattice_vertex(0, verts_[i]));
}

std::int32_t VkGeometry::triangle_index(const TriCell& t) const {
    auto it = tri_index_.find(t);
    return it == tri_index_.end() ? -1 : it->second;
}

std::int32_t VkGeometry::interior_edge_index(Axial p, Axial q) const {
    auto it = edge_index_.find(normalize_edge(p, q));
    return it == edge_index_.end() ? -1 : it->second;
}

std::int32_t VkGeometry::interior_vertex_index(Axial p) const {
    auto it = std::lower_bound(verts_.begin(), verts_.end(), p);
    if (it == verts_.end() || *it != p) return -1;
    return static_cast<std::int32_t>(it - verts_.begin());
}

std::array<std::int32_t, 6> VkGeometry::tris_around(Axial v) const {
    std::array<std::int32_t, 6> out;
    const auto cells = tris_around_vertex(v);
    for (std::size_t i = 0; i < 6; ++i) out[i] = triangle_index(cells[i]);
    return out;
}

std::array<std::int32_t, 6> VkGeometry::edges_around(Axial v) const {
    std::array<std::int32_t, 6> out;
    for (std::size_t i = 0; i < 6; ++i) out[i] = interior_edge_index(v, v + kHexDirections[i]);
    return out;
}

std::span<const std::uint64_t> VkGeometry::vertex_mask(DomainType d, std::size_t vi) const {
    if (d == DomainType::type2) return {vmask2_.data() + vi * words2_, words2_};
    return {vmask1_.data() + vi * words1_, words1_};
}

std::span<const std::uint64_t> VkGeometry::edge_mask_type2(std::size_t ei) const {
    return {emask2_.data() + ei * words2_, words2_};
}

std::int32_t VkGeometry::cell_index_of_simplex(DomainType d, const Simplex& s) const {
    const auto& m = d == DomainType::type2 ? tri_simplex_index_ : edge_simplex_index_;
    auto it = m.find(s);
    return it == m.end() ? -1 : it->second;
}

FVector eval_domain_mask(const VkGeometry& g, DomainType d, const CellMask& removed) {
    const std::size_t W = g.mask_words(d);
    auto disjoint = [&](std::span<const std::uint64_t> m) {
        for (std::size_t w = 0; w < W; ++w)
            if (m[w] & removed[w]) return false;
        return true;
    };
    std::int64_t pop = 0;
    for (std::size_t w = 0; w < W; ++w) pop += std::popcount(removed[w]);

    FVector f;
    for (std::size_t vi = 0; vi < g.num_interior_vertices(); ++vi)
        if (disjoint(g.vertex_mask(d, vi))) ++f.f0;
    if (d == DomainType::type2) {
        for (std::size_t ei = 0; ei < g.num_interior_edges(); ++ei)
            if (disjoint(g.edge_mask_type2(ei))) ++f.f1;
        f.f2 = static_cast<std::int64_t>(g.num_triangles()) - pop;
    } else {
        f.f1 = static_cast<std::int64_t>(g.num_interior_edges()) - pop;
        f.f2 = static_cast<std::int64_t>(g.num_triangles());
    }
    return f;
}

Domain make_domain_mask(const VkGeometry& g, DomainType d, CellMask removed) {
    if (removed.size() != g.mask_words(d))
        throw std::invalid_argument("make_domain_mask: wrong mask width");
    const std::size_t m = g.num_cells(d);
    if (m % 64 != 0) {
        const std::uint64_t tail = removed.back() >> (m % 64);
        if (tail != 0) throw std::invalid_argument("make_domain_mask: bits beyond the cell count");
    }
    Domain dom;
    dom.k = g.k();
    dom.type = d;
    dom.f = eval_domain_mask(g, d, removed);
    dom.removed = std::move(removed);
    return dom;
}

Domain make_domain(const VkGeometry& g, DomainType d, std::span<const Simplex> removed) {
    const int want_dim = d == DomainType::type2 ? 2 : 1;
    CellMask mask(g.mask_words(d), 0);
    for (const Simplex& s : removed) {
        if (s.dim() != want_dim)
            throw std::invalid_argument("make_domain: simplex dimension does not match the domain type");
        const std::int32_t i = g.cell_index_of_simplex(d, s);
        if (i >= 0) {
            mask_set(mask, static_cast<std::size_t>(i));
            continue;
        }
        // boundary simplices are legal no-ops; anything else is outside
        if (!g.subdivided().complex().contains(s))
            throw std::invalid_argument("make_domain: simplex is not in the subdivided triangle");
    }
    return make_domain_mask(g, d, std::move(mask));
}

OpenComplex Domain::cells(const VkGeometry& g) const {
    // Simplex-level survival: a cell dies iff it is a face of some removed
    // closed simplex.  Deliberately independent of the incidence masks.
    std::vector<Simplex> removed_simplices;
    for (std::size_t i = 0; i < g.num_cells(type); ++i)
        if (mask_test(removed, i))
            removed_simplices.push_back(type == DomainType::type2 ? g.triangle_simplex(i)
                                                                  : g.interior_edge_simplex(i));
    auto is_face_of_removed = [&](const Simplex& s) {
        for (const Simplex& r : removed_simplices) {
            bool face = true;
            for (VertexId v : s.vertices())
                if (!r.contains_vertex(v)) face = false;
            if (face) return true;
        }
        return false;
    };

    std::array<std::vector<Simplex>, 3> out;
    for (std::size_t i = 0; i < g.num_interior_vertices(); ++i) {
        Simplex s = g.interior_vertex_simplex(i);
        if (!is_face_of_removed(s)) out[0].push_back(s);
    }
    for (std::size_t i = 0; i < g.num_interior_edges(); ++i) {
        Simplex s = g.interior_edge_simplex(i);
        if (!is_face_of_removed(s)) out[1].push_back(s);
    }
    for (std::size_t i = 0; i < g.num_triangles(); ++i) {
        Simplex s = g.triangle_simplex(i);
        if (!is_face_of_removed(s)) out[2].push_back(s);
    }
    for (auto& v : out) std::sort(v.begin(), v.end());
    return OpenComplex(g.k(), std::move(out));
}

int SixTuple::count_o() const {
    int c = 0;
    for (char ch : w)
        if (ch == 'o') ++c;
    return c;
}

bool SixTuple::has_cyclic_fragment(std::string_view frag) const {
    if (frag.size() > 6) return false;
    for (std::size_t start = 0; start < 6; ++start) {
        bool ok = true;
        for (std::size_t i = 0; i < frag.size(); ++i)
            if (w[(start + i) % 6] != frag[i]) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

SixTuple six_tuple(const VkGeometry& g, const Domain& dom, Axial vertex) {
    if (!in_hexagon(vertex, g.side()))
        throw std::invalid_argument("six_tuple: vertex outside the subdivided triangle");
    SixTuple t;
    const auto around =
        dom.type == DomainType::type2 ? g.tris_around(vertex) : g.edges_around(vertex);
    for (std::size_t i = 0; i < 6; ++i) {
        const std::int32_t ci = around[i];
        const bool present = ci >= 0 && !mask_test(dom.removed, static_cast<std::size_t>(ci));
        t.w[i] = present ? 'o' : 'x';
    }
    return t;
}

namespace {

struct ScanState {
    std::uint64_t checked = 0;
    std::uint64_t bounds_viol = 0, cmp_viol = 0;
    std::vector<CellMask> bounds_ex, cmp_ex;
    std::int64_t min1_f0 = -1, min1_f1 = 0;
    std::int64_t min2_f0 = -1, min2_f2 = 0;

    void offer_min1(std::int64_t f0, std::int64_t f1) {
        if (min1_f0 < 0 || f0 * min1_f1 < min1_f0 * f1) {
            min1_f0 = f0;
            min1_f1 = f1;
        }
    }
    void offer_min2(std::int64_t f0, std::int64_t f2) {
        if (min2_f0 < 0 || f0 * min2_f2 < min2_f0 * f2) {
            min2_f0 = f0;
            min2_f2 = f2;
        }
    }
};

constexpr std::size_t kMaxExamples = 8;

ScanState merge_scan(ScanState a, ScanState b) {
    a.checked += b.checked;
    a.bounds_viol += b.bounds_viol;
    a.cmp_viol += b.cmp_viol;
    for (auto& m : b.bounds_ex)
        if (a.bounds_ex.size() < kMaxExamples) a.bounds_ex.push_back(std::move(m));
    for (auto& m : b.cmp_ex)
        if (a.cmp_ex.size() < kMaxExamples) a.cmp_ex.push_back(std::move(m));
    if (b.min1_f0 >= 0) a.offer_min1(b.min1_f0, b.min1_f1);
    if (b.min2_f0 >= 0) a.offer_min2(b.min2_f0, b.min2_f2);
    return a;
}

} // namespace

DomainScanReport scan_domains(const VkGeometry& g, DomainType d, const ScanMode& mode) {
    const std::size_t m = g.num_cells(d);
    const std::size_t W = g.mask_words(d);
    const FVector vk = vk_fvector(g.k());
    const std::int64_t vk_f0 = vk.f0;
    const std::int64_t vk_fd = d == DomainType::type2 ? vk.f2 : vk.f1;

    auto eval_one = [&](const CellMask& mask, bool is_empty_removal, ScanState& st) {
        const FVector f = eval_domain_mask(g, d, mask);
        ++st.checked;
        bool bounds_ok = true;
        if (f.f1 > 0) {
            if (!(3 * f.f0 < f.f1)) bounds_ok = false;
            st.offer_min1(f.f0, f.f1);
        }
        if (f.f2 > 0) {
            if (!(2 * f.f0 < f.f2)) bounds_ok = false;
            st.offer_min2(f.f0, f.f2);
        }
        if (!bounds_ok) {
            ++st.bounds_viol;
            if (st.bounds_ex.size() < kMaxExamples) st.bounds_ex.push_back(mask);
        }
        if (!is_empty_removal) {
            const std::int64_t fd = d == DomainType::type2 ? f.f2 : f.f1;
            if (fd > 0 && !(f.f0 * vk_fd < vk_f0 * fd)) {
                ++st.cmp_viol;
                if (st.cmp_ex.size() < kMaxExamples) st.cmp_ex.push_back(mask);
            }
        }
    };

    ScanState total;
    bool exhaustive = mode.kind == ScanMode::Kind::exhaustive;
    if (exhaustive) {
        const std::size_t ceiling = mode.allow_large ? 30 : 24;
        if (m > ceiling)
            throw std::invalid_argument(
                "scan_domains: exhaustive scan over 2^" + std::to_string(m) +
                " domains exceeds the ceiling" + (mode.allow_large ? "" : " (pass allow_large up to 2^30)"));
        const std::uint64_t subsets = 1ull << m;
        total = parallel_reduce(
            std::uint64_t{0}, subsets, ScanState{},
            [&](std::uint64_t lo, std::uint64_t hi) {
                ScanState st;
                CellMask mask(W);
                for (std::uint64_t x = lo; x < hi; ++x) {
                    mask[0] = x;
                    eval_one(mask, x == 0, st);
                }
                return st;
            },
            merge_scan);
    } else {
        const std::uint64_t seed_base = mix64(mode.seed ^ 0xD0A1417CF1BD9235ULL);
        const std::uint64_t tail_bits = m % 64;
        total = parallel_reduce(
            std::uint64_t{0}, mode.samples, ScanState{},
            [&](std::uint64_t lo, std::uint64_t hi) {
                ScanState st;
                CellMask mask(W);
                for (std::uint64_t i = lo; i < hi; ++i) {
                    bool empty = true;
                    for (std::size_t w = 0; w < W; ++w) {
                        mask[w] = mix64(hash_absorb(hash_absorb(seed_base, i), w));
                        if (w + 1 == W && tail_bits != 0) mask[w] &= (1ull << tail_bits) - 1;
                        empty = empty && mask[w] == 0;
                    }
                    eval_one(mask, empty, st);
                }
                return st;
            },
            merge_scan);
    }

    DomainScanReport r;
    r.k = g.k();
    r.type = d;
    r.exhaustive = exhaustive;
    r.domains_checked = total.checked;
    r.bounds.violations = total.bounds_viol;
    r.bounds.examples = std::move(total.bounds_ex);
    r.vk_comparison.violations = total.cmp_viol;
    r.vk_comparison.examples = std::move(total.cmp_ex);
    if (total.min1_f0 >= 0) r.min_mu1 = make_ratio(total.min1_f0, total.min1_f1);
    if (total.min2_f0 >= 0) r.min_mu2 = make_ratio(total.min2_f0, total.min2_f2);
    return r;
}

DomainScanReport verify_density_bounds(const VkGeometry& g, DomainType d, const ScanMode& mode) {
    return scan_domains(g, d, mode);
}

DomainScanReport verify_vk_comparison(const VkGeometry& g, DomainType d, const ScanMode& mode) {
    return scan_domains(g, d, mode);
}

} // namespace stoch2c
