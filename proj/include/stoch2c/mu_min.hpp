#pragma once

#include "stoch2c/complex.hpp"

#include <cstdint>
#include <stdexcept>

namespace stoch2c {

// Minimization of mu_i = f0/f_i over nonempty subcomplexes with f_i > 0.
//
// The search space is reduced without changing the minimum:
//   i = 2: unions of closed 2-simplices (dropping lower strata never raises
//          f2 and only removes vertices);
//   i = 1: edge subsets of the 1-skeleton with isolated vertices removed.
// Exhaustive mode enumerates every subset of the reduced cell list; sampled
// mode draws uniform random subsets and runs a greedy single-toggle descent
// from each.

struct MuMinBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MuMinNoSubcomplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MuMinOptions {
    enum class Mode { exhaustive, sampled };
    Mode mode = Mode::exhaustive;
    std::uint64_t subset_budget = 1ull << 26;  // exhaustive: max subsets to enumerate
    std::uint64_t samples = 10000;             // sampled: restarts
    std::uint64_t seed = 0;
};

struct MuMinResult {
    Ratio value;
    SimplicialComplex2 witness;      // minimizing subcomplex (lexicographically least on ties)
    std::uint64_t subsets_examined = 0;
    bool exhaustive = false;
};

MuMinResult mu_min(const SimplicialComplex2& c, int i, const MuMinOptions& opt = {});

} // namespace stoch2c
