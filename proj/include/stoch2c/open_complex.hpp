#pragma once

#include "stoch2c/complex.hpp"
#include "stoch2c/ratio.hpp"
#include "stoch2c/simplex.hpp"

#include <array>
#include <optional>
#include <vector>

namespace stoch2c {

// A collection of open cells inside a subdivided 2-simplex, indexed by the
// global vertex ids of that subdivision.  Unlike a closed complex, a cell's
// faces need not be present.
class OpenComplex {
public:
    OpenComplex() = default;
    OpenComplex(int ambient_k, std::array<std::vector<Simplex>, 3> cells)
        : k_(ambient_k), cells_(std::move(cells)) {}

    int ambient_k() const { return k_; }
    const std::vector<Simplex>& cells(int dim) const { return cells_[static_cast<std::size_t>(dim)]; }

    FVector f_vector() const {
        return FVector{static_cast<std::int64_t>(cells_[0].size()),
                       static_cast<std::int64_t>(cells_[1].size()),
                       static_cast<std::int64_t>(cells_[2].size())};
    }

    // f0/f_i over open cells; disengaged when f_i = 0 (the value may be 0
    // when there are no vertices).
    std::optional<Ratio> mu(int i) const {
        const FVector f = f_vector();
        if (f[i] == 0) return std::nullopt;
        return make_ratio(f.f0, f[i]);
    }

    friend bool operator==(const OpenComplex&, const OpenComplex&) = default;

private:
    int k_ = 0;
    std::array<std::vector<Simplex>, 3> cells_;
};

inline std::optional<Ratio> open_mu(const OpenComplex& u, int i) { return u.mu(i); }

} // namespace stoch2c
