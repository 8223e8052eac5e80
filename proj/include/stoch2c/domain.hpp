#pragma once

#include "stoch2c/hex_lattice.hpp"
#include "stoch2c/open_complex.hpp"
#include "stoch2c/ratio.hpp"
#include "stoch2c/subdivision.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stoch2c {

// Domains in V_k: the open complex interior to one subdivided triangle minus
// a set L of closed simplices of one fixed dimension ("type").  An open cell
// survives iff it is not contained in the boundary and is not a face of any
// removed closed simplex.  Domains are represented by the removed set as a
// bitmask over the cells of that dimension, which is what the exhaustive
// scans enumerate.

enum class DomainType : int { type1 = 1, type2 = 2 };

using CellMask = std::vector<std::uint64_t>;

inline bool mask_test(const CellMask& m, std::size_t i) { return (m[i / 64] >> (i % 64)) & 1u; }
inline void mask_set(CellMask& m, std::size_t i) { m[i / 64] |= 1ull << (i % 64); }

// Cell lists, incidence tables and chart ids for one V_k.
class VkGeometry {
public:
    explicit VkGeometry(int k);  // k >= 1

    int k() const { return k_; }
    std::int32_t side() const { return s_; }
    const SubdividedComplex& subdivided() const { return sub_; }

    std::size_t num_triangles() const { return tris_.size(); }
    std::size_t num_interior_edges() const { return edges_.size(); }
    std::size_t num_interior_vertices() const { return verts_.size(); }
    std::size_t num_cells(DomainType d) const {
        return d == DomainType::type2 ? num_triangles() : num_interior_edges();
    }
    std::size_t mask_words(DomainType d) const { return (num_cells(d) + 63) / 64; }

    const std::vector<TriCell>& triangles() const { return tris_; }
    const std::vector<std::pair<Axial, Axial>>& interior_edges() const { return edges_; }
    const std::vector<Axial>& interior_vertices() const { return verts_; }

    Simplex triangle_simplex(std::size_t i) const;
    Simplex interior_edge_simplex(std::size_t i) const;
    Simplex interior_vertex_simplex(std::size_t i) const;

    std::int32_t triangle_index(const TriCell& t) const;
    std::int32_t interior_edge_index(Axial p, Axial q) const;  // -1 if absent
    std::int32_t interior_vertex_index(Axial p) const;

    // Surrounding cells in rotational order; -1 marks a slot with no cell of
    // V_k (outside the hexagon or contained in its boundary).
    std::array<std::int32_t, 6> tris_around(Axial v) const;
    std::array<std::int32_t, 6> edges_around(Axial v) const;

    // Removal-incidence masks over cells of the given type.
    std::span<const std::uint64_t> vertex_mask(DomainType d, std::size_t vi) const;
    std::span<const std::uint64_t> edge_mask_type2(std::size_t ei) const;

    std::int32_t cell_index_of_simplex(DomainType d, const Simplex& s) const;  // -1 if absent

private:
    int k_;
    std::int32_t s_;
    SubdividedComplex sub_;
    std::vector<TriCell> tris_;
    std::vector<std::pair<Axial, Axial>> edges_;
    std::vector<Axial> verts_;
    std::map<TriCell, std::int32_t> tri_index_;
    std::map<std::pair<Axial, Axial>, std::int32_t> edge_index_;
    std::map<Simplex, std::int32_t> tri_simplex_index_;
    std::map<Simplex, std::int32_t> edge_simplex_index_;
    std::size_t words1_ = 0, words2_ = 0;
    std::vector<std::uint64_t> vmask1_, vmask2_, emask2_;  // flat, stride = words
};

struct Domain {
    int k = 0;
    DomainType type = DomainType::type2;
    CellMask removed;
    FVector f;  // open cell counts of the surviving complex

    std::optional<Ratio> mu(int i) const {
        if (f[i] == 0) return std::nullopt;
        return make_ratio(f.f0, f[i]);
    }

    // Materializes the surviving open cells (independent, simplex-level path;
    // the f field comes from the incidence masks).
    OpenComplex cells(const VkGeometry& g) const;
};

// L may contain boundary simplices of the subdivided triangle (legal no-ops
// for type 1); simplices of the wrong dimension or not present in the
// subdivision are rejected.
Domain make_domain(const VkGeometry& g, DomainType d, std::span<const Simplex> removed);
Domain make_domain_mask(const VkGeometry& g, DomainType d, CellMask removed);

// Cyclic word over {x, o} describing the six cells around a vertex of the
// closed subdivided triangle; virtual x's fill slots with no cell of V_k.
struct SixTuple {
    std::array<char, 6> w{};

    int count_o() const;
    int count_x() const { return 6 - count_o(); }
    bool has_cyclic_fragment(std::string_view frag) const;
    std::string to_string() const { return std::string(w.begin(), w.end()); }
};

SixTuple six_tuple(const VkGeometry& g, const Domain& dom, Axial vertex);

struct ScanMode {
    enum class Kind { exhaustive, sampled };
    Kind kind = Kind::exhaustive;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    bool allow_large = false;  // raises the exhaustive ceiling from 2^24 to 2^30

    static ScanMode exhaustive(bool allow_large_scan = false) {
        return ScanMode{Kind::exhaustive, 0, 0, allow_large_scan};
    }
    static ScanMode sampled(std::uint64_t samples, std::uint64_t seed) {
        return ScanMode{Kind::sampled, samples, seed, false};
    }
};

struct DomainCheckStats {
    std::uint64_t violations = 0;
    std::vector<CellMask> examples;  // first few counterexample removal sets
};

struct DomainScanReport {
    int k = 0;
    DomainType type = DomainType::type2;
    bool exhaustive = false;
    std::uint64_t domains_checked = 0;
    DomainCheckStats bounds;         // mu1 < 1/3 and mu2 < 1/2 whenever defined
    DomainCheckStats vk_comparison;  // mu_d(U) < mu_d(V_k) for U != V_k, when comparable
    std::optional<Ratio> min_mu1, min_mu2;  // minima among defined values
};

// One pass produces both verdicts; the named entry points just share it.
DomainScanReport scan_domains(const VkGeometry& g, DomainType d, const ScanMode& mode);
DomainScanReport verify_density_bounds(const VkGeometry& g, DomainType d, const ScanMode& mode);
DomainScanReport verify_vk_comparison(const VkGeometry& g, DomainType d, const ScanMode& mode);

// Counts of the surviving open cells for one removal mask (scan fast path,
// exposed for cross-checks).
FVector eval_domain_mask(const VkGeometry& g, DomainType d, const CellMask& removed);

} // namespace stoch2c
