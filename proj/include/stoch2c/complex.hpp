#pragma once

#include "stoch2c/ratio.hpp"
#include "stoch2c/simplex.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace stoch2c {

struct FVector {
    std::int64_t f0 = 0;
    std::int64_t f1 = 0;
    std::int64_t f2 = 0;

    std::int64_t operator[](int i) const { return i == 0 ? f0 : (i == 1 ? f1 : f2); }
    friend bool operator==(const FVector&, const FVector&) = default;
};

// A closed (downward-closed) 2-dimensional simplicial complex.  Immutable
// after construction; stores per-dimension sorted simplex vectors so that
// iteration order is canonical and membership is O(log n).
class SimplicialComplex2 {
public:
    SimplicialComplex2() = default;

    // Downward closure of the given simplices.  Rejects malformed input and
    // exact duplicates in the list.  Idempotent on already-closed input.
    static SimplicialComplex2 from_maximal_simplices(std::span<const Simplex> maximal);
    static SimplicialComplex2 from_maximal_simplices(std::initializer_list<Simplex> maximal) {
        return from_maximal_simplices(std::span<const Simplex>(maximal.begin(), maximal.size()));
    }

    // Trusted constructor: vectors must be sorted, unique and downward closed.
    static SimplicialComplex2 from_closed_unchecked(std::array<std::vector<Simplex>, 3> cells);

    const std::vector<Simplex>& simplices(int dim) const { return cells_[static_cast<std::size_t>(dim)]; }
    bool contains(const Simplex& s) const;
    bool empty() const { return cells_[0].empty() && cells_[1].empty() && cells_[2].empty(); }

    FVector f_vector() const;
    std::int64_t euler_characteristic() const;

    // mu_i = f0/f_i, exact; disengaged when f_i = 0.
    std::optional<Ratio> mu(int i) const;

    // E(Y): simplices of the full complex on [n] that are missing from this
    // complex but whose entire boundary is present.  Throws if some vertex id
    // is >= n.
    std::vector<Simplex> external_set(VertexId n) const;

    // Union of the closed 2-simplices.
    SimplicialComplex2 pure_2_closure() const;

    // 1-skeleton with isolated vertices removed.
    SimplicialComplex2 skeleton_1_no_isolated() const;

    struct SurfaceReport {
        bool nonempty = false;
        bool pure_2 = false;            // every vertex and edge lies in a triangle
        bool edges_in_two_triangles = false;
        bool vertex_links_single_cycle = false;
        bool connected = false;
        bool closed_surface() const {
            return nonempty && pure_2 && edges_in_two_triangles && vertex_links_single_cycle && connected;
        }
    };
    SurfaceReport surface_report() const;
    bool is_closed_surface() const { return surface_report().closed_surface(); }

    VertexId max_vertex_id() const;  // -1 when empty

    friend auto operator<=>(const SimplicialComplex2&, const SimplicialComplex2&) = default;

private:
    std::array<std::vector<Simplex>, 3> cells_;
};

} // namespace stoch2c
