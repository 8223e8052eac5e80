#pragma once

#include "stoch2c/complex.hpp"
#include "stoch2c/ratio.hpp"
#include "stoch2c/simplex.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace stoch2c {

// Per-dimension inclusion probabilities.
struct ProbabilityTriple {
    double p0 = 0, p1 = 0, p2 = 0;

    ProbabilityTriple() = default;
    ProbabilityTriple(double a, double b, double c);
    double operator[](int i) const { return i == 0 ? p0 : (i == 1 ? p1 : p2); }

    friend bool operator==(const ProbabilityTriple&, const ProbabilityTriple&) = default;
};

// Exact-arithmetic variant used by the measure formula and the enumeration
// oracle.
struct RationalProbabilityTriple {
    Ratio p0, p1, p2;

    RationalProbabilityTriple(Ratio a, Ratio b, Ratio c);
    const Ratio& operator[](int i) const { return i == 0 ? p0 : (i == 1 ? p1 : p2); }
    ProbabilityTriple to_double() const {
        return ProbabilityTriple(ratio_to_double(p0), ratio_to_double(p1), ratio_to_double(p2));
    }
};

// One uniform per simplex of the full complex on [n], derived from a
// counter-based generator keyed by (seed, simplex).  All p-values are
// evaluated against the same draw, which makes the induced complexes
// monotone in p.
class CoupledSample {
public:
    static CoupledSample draw(VertexId n, std::uint64_t seed);  // throws if n < 1

    VertexId n() const { return n_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return u_[0].size() + u_[1].size() + u_[2].size(); }
    double uniform(const Simplex& s) const;

private:
    VertexId n_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<double> u_[3];
};

// X = { sigma : uniform(sigma) < p_dim } in canonical order.
std::vector<Simplex> sample_X(const CoupledSample& c, const ProbabilityTriple& p);

// Maximal simplicial complex contained in X, computed bottom-up.
SimplicialComplex2 lower_complex(std::span<const Simplex> X);

SimplicialComplex2 sample_Y(VertexId n, const ProbabilityTriple& p, std::uint64_t seed);

// Closed-form measure of a complex under the lower model:
//   P(Y) = prod_{sigma in Y} p_dim * prod_{sigma in E(Y)} (1 - p_dim).
Ratio probability_of(const SimplicialComplex2& Y, VertexId n, const RationalProbabilityTriple& p);

// Natural log of the above on the floating path; -inf when some required
// factor vanishes.
double log_probability_of(const SimplicialComplex2& Y, VertexId n, const ProbabilityTriple& p);

// Exhaustive pushforward oracle: iterates every subset X of the full complex
// on [n], weights it by the product measure and pushes it through
// lower_complex.  n <= 4 by default; allow_n5 raises the ceiling to 5 with a
// stderr warning (2^25 subsets).
std::map<SimplicialComplex2, Ratio> enumerate_distribution(VertexId n,
                                                           const RationalProbabilityTriple& p,
                                                           bool allow_n5 = false);

// All downward-closed subcomplexes of the full complex on [n] (n <= 4).
std::vector<SimplicialComplex2> enumerate_subcomplexes(VertexId n);

} // namespace stoch2c
