#pragma once

#include "stoch2c/complex.hpp"
#include "stoch2c/hex_lattice.hpp"
#include "stoch2c/open_complex.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace stoch2c {

// The k-th subdivision: barycentric once, then k-1 rounds of edge-bisecting
// 4-to-1 triangle splits.  Combinatorially each original triangle becomes a
// hexagonal patch of side s = 2^(k-1) in the triangular lattice, with the
// original corners at alternating hexagon corners and the original edges
// running along two consecutive hexagon sides; original edges are split into
// 2^k pieces.  Construction works directly on those charts, so there is no
// floating-point geometry anywhere.

// Chart owner: an original simplex, identified by (dim, index into the
// base complex's canonical list of that dimension).
struct ChartRef {
    int dim = 0;
    std::int32_t index = 0;
    friend auto operator<=>(const ChartRef&, const ChartRef&) = default;
};

struct LatticeCoord {
    ChartRef chart;
    Axial tri_coord{};           // dim == 2 charts
    std::int32_t edge_pos = 0;   // dim == 1 charts: position in [0, 2^k]
};

class SubdividedComplex {
public:
    // k >= 0; k = 0 returns the base itself.
    static SubdividedComplex build(const SimplicialComplex2& base, int k);

    int k() const { return k_; }
    std::int32_t side() const { return side_; }          // 2^(k-1) for k >= 1, 0 for k = 0
    std::int32_t edge_pieces() const { return pieces_; } // 2^k
    const SimplicialComplex2& base() const { return base_; }
    const SimplicialComplex2& complex() const { return complex_; }

    // Chart lookups (k >= 1).  Boundary lattice points of a triangle chart
    // canonicalize to the owning edge/vertex chart, so shared faces resolve
    // to a single global id.
    VertexId vertex_at(const LatticeCoord& c) const;
    VertexId tri_lattice_vertex(std::int32_t tri_index, Axial p) const;
    LatticeCoord coord_of(VertexId v) const;

    // Open cells of the subdivision lying strictly inside original triangle
    // t; combinatorially a copy of V_k.  Throws unless t indexes a triangle
    // of the base.
    OpenComplex interior_of(std::int32_t tri_index) const;

private:
    int k_ = 0;
    std::int32_t side_ = 0;
    std::int32_t pieces_ = 1;
    SimplicialComplex2 base_;
    SimplicialComplex2 complex_;
    std::int64_t edge_block_ = 0;  // ids [edge_block_, tri_block_) are edge-chart points
    std::int64_t tri_block_ = 0;
    std::int64_t per_tri_ = 0;     // interior points per triangle chart
    std::vector<Axial> interior_points_;  // canonical order within one chart
};

// Closed-form f-vector of the k-th subdivision (k >= 1), no construction.
FVector fvector_subdivided(const SimplicialComplex2& s, int k);

// Closed-form f-vector of V_k, the open complex interior to one subdivided
// triangle: (3*4^(k-1) - 3*2^(k-1) + 1, 9*4^(k-1) - 3*2^(k-1), 6*4^(k-1)).
FVector vk_fvector(int k);

// V_k itself, with the global vertex ids of the subdivided unit triangle.
OpenComplex v_k_open(int k);

} // namespace stoch2c
