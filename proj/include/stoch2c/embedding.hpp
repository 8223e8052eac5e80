#pragma once

#include "stoch2c/complex.hpp"
#include "stoch2c/random_model.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace stoch2c {

// Simplicial embeddings: injective vertex maps carrying every simplex of the
// source to a simplex of the host.  Counting is over labeled injections (no
// quotient by automorphisms).

struct EmbeddingMap {
    // (source vertex, host vertex), sorted by source vertex
    std::vector<std::pair<VertexId, VertexId>> assignment;
};

enum class SearchOutcome { found, none, unknown };

struct EmbeddingSearchResult {
    SearchOutcome outcome = SearchOutcome::none;
    std::optional<EmbeddingMap> witness;
    std::uint64_t nodes_expanded = 0;
};

// Backtracking over a static source-vertex order (degree descending, then
// id); host candidates are filtered by degree, incident-triangle count and
// adjacency to the already-assigned image.  node_budget = 0 means unlimited;
// exceeding a budget yields outcome unknown, never none.
EmbeddingSearchResult find_embedding(const SimplicialComplex2& source, const SimplicialComplex2& host,
                                     std::uint64_t node_budget = 0);

// Exact number of injections realizing simplicial embeddings.
std::uint64_t count_embeddings(const SimplicialComplex2& source, const SimplicialComplex2& host);

// Oracle: tries every injection.  Requires
// falling_factorial(f0(host), f0(source)) <= 1e7.
std::uint64_t count_embeddings_bruteforce(const SimplicialComplex2& source,
                                          const SimplicialComplex2& host);

// Independent witness checker (injectivity + simplex preservation).
bool validate_embedding(const SimplicialComplex2& source, const SimplicialComplex2& host,
                        const EmbeddingMap& map);

// The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7,
// certified closed surface with Euler characteristic 0 at construction.
struct TorusTriangulation {
    SimplicialComplex2 complex;
};
TorusTriangulation torus_7();

// n (n-1) ... (n-f0+1) * p0^f0 * p1^f1 * p2^f2.
double expected_embedding_count(const SimplicialComplex2& source, VertexId n,
                                const ProbabilityTriple& p);
Ratio expected_embedding_count_exact(const SimplicialComplex2& source, VertexId n,
                                     const RationalProbabilityTriple& p);

// n^f0 * p0^f0 * p1^f1 * p2^f2 >= the expected count.
double embedding_probability_upper_bound(const SimplicialComplex2& source, VertexId n,
                                         const ProbabilityTriple& p);
Ratio embedding_probability_upper_bound_exact(const SimplicialComplex2& source, VertexId n,
                                              const RationalProbabilityTriple& p);

// Geometric-series union bound over all torus triangulations with
// u = c n p0 p1^3 p2^2; diverges when u >= 1.
struct UnionBound {
    bool diverged = false;
    double u = 0.0;
    double value = 0.0;  // u / (1 - u) when convergent
};
UnionBound torus_union_bound(VertexId n, const ProbabilityTriple& p, double c = 1.0);

// The threshold quantity n p0 p1^3 p2^2 (> 1 super-critical, < 1
// sub-critical) and its epsilon-shifted variant n p0 p1^(3+eps) p2^(2+eps).
struct ThresholdMargin {
    double margin = 0.0;
    double eps_margin = 0.0;
};
ThresholdMargin threshold_margin(VertexId n, const ProbabilityTriple& p, double epsilon = 0.0);

} // namespace stoch2c
