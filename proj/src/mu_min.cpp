#include "stoch2c/mu_min.hpp"

#include "stoch2c/parallel.hpp"
#include "stoch2c/rng.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <vector>

namespace stoch2c {

namespace {

struct CellSpace {
    std::vector<Simplex> cells;           // triangles (i=2) or edges (i=1), canonical order
    std::vector<VertexId> vertex_ids;     // dense vertex universe covered by cells
    std::size_t words = 0;                // coverage mask words
    std::vector<std::uint64_t> cover;     // per cell, words-wide vertex coverage mask

    std::size_t size() const { return cells.size(); }
};

CellSpace build_space(const SimplicialComplex2& c, int i) {
    CellSpace s;
    s.cells = c.simplices(i);
    std::vector<VertexId> vs;
    for (const Simplex& cell : s.cells)
        for (VertexId v : cell.vertices()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    s.vertex_ids = std::move(vs);
    s.words = (s.vertex_ids.size() + 63) / 64;
    std::map<VertexId, std::size_t> index;
    for (std::size_t j = 0; j < s.vertex_ids.size(); ++j) index[s.vertex_ids[j]] = j;
    s.cover.assign(s.cells.size() * s.words, 0);
    for (std::size_t j = 0; j < s.cells.size(); ++j)
        for (VertexId v : s.cells[j].vertices()) {
            std::size_t b = index[v];
            s.cover[j * s.words + b / 64] |= 1ull << (b % 64);
        }
    return s;
}

// Lexicographic order on subsets viewed as increasing index sequences.
bool subset_lex_less(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    auto word = [](const std::vector<std::uint64_t>& m, std::size_t i) {
        return i < m.size() ? m[i] : 0ull;
    };
    const std::size_t w = std::max(a.size(), b.size());
    std::size_t wa = 0, wb = 0;
    std::uint64_t ra = word(a, 0), rb = word(b, 0);
    for (;;) {
        while (ra == 0 && ++wa < w) ra = word(a, wa);
        while (rb == 0 && ++wb < w) rb = word(b, wb);
        if (ra == 0 || rb == 0) return ra == 0 && rb != 0;  // prefix is smaller
        const std::size_t ia = wa * 64 + static_cast<std::size_t>(std::countr_zero(ra));
        const std::size_t ib = wb * 64 + static_cast<std::size_t>(std::countr_zero(rb));
        if (ia != ib) return ia < ib;
        ra &= ra - 1;
        rb &= rb - 1;
    }
}

std::vector<std::uint64_t> to_words(std::uint64_t mask) { return {mask}; }

struct Best {
    bool has = false;
    std::int64_t f0 = 0, fi = 0;
    std::vector<std::uint64_t> mask;

    // true when (nf0/nfi) improves on the stored value
    void offer(std::int64_t nf0, std::int64_t nfi, const std::vector<std::uint64_t>& nmask) {
        if (!has) {
            has = true;
            f0 = nf0;
            fi = nfi;
            mask = nmask;
            return;
        }
        const std::int64_t lhs = nf0 * fi;
        const std::int64_t rhs = f0 * nfi;
        if (lhs < rhs || (lhs == rhs && subset_lex_less(nmask, mask))) {
            f0 = nf0;
            fi = nfi;
            mask = nmask;
        }
    }
};

Best merge_best(Best a, Best b) {
    if (!b.has) return a;
    if (!a.has) return b;
    a.offer(b.f0, b.fi, b.mask);
    return a;
}

SimplicialComplex2 witness_from_mask(const CellSpace& s, const std::vector<std::uint64_t>& mask) {
    std::vector<Simplex> chosen;
    for (std::size_t j = 0; j < s.size(); ++j)
        if (mask[j / 64] & (1ull << (j % 64))) chosen.push_back(s.cells[j]);
    return SimplicialComplex2::from_maximal_simplices(chosen);
}

MuMinResult exhaustive_scan(const CellSpace& s, const MuMinOptions& opt) {
    const std::size_t m = s.size();
    if (m > 62 || (1ull << m) > opt.subset_budget)
        throw MuMinBudgetError("mu_min: exhaustive search space 2^" + std::to_string(m) +
                               " exceeds the subset budget");
    const std::size_t W = s.words;
    const std::size_t low_bits = std::min<std::size_t>(m, 16);
    const std::size_t high_bits = m - low_bits;

    auto build_table = [&](std::size_t bits, std::size_t shift) {
        std::vector<std::uint64_t> tab((1ull << bits) * W, 0);
        for (std::uint64_t x = 1; x < (1ull << bits); ++x) {
            const std::uint64_t prev = x & (x - 1);
            const std::size_t j = shift + static_cast<std::size_t>(std::countr_zero(x));
            for (std::size_t w = 0; w < W; ++w)
                tab[x * W + w] = tab[prev * W + w] | s.cover[j * W + w];
        }
        return tab;
    };
    const std::vector<std::uint64_t> low_tab = build_table(low_bits, 0);
    const std::vector<std::uint64_t> high_tab = high_bits ? build_table(high_bits, low_bits)
                                                          : std::vector<std::uint64_t>(W, 0);
    const std::uint64_t low_mask = (low_bits == 64) ? ~0ull : ((1ull << low_bits) - 1);

    const std::uint64_t subsets = 1ull << m;
    Best best = parallel_reduce(
        std::uint64_t{1}, subsets, Best{},
        [&](std::uint64_t b, std::uint64_t e) {
            Best local;
            for (std::uint64_t mask = b; mask < e; ++mask) {
                const std::uint64_t lo = mask & low_mask;
                const std::uint64_t hi = mask >> low_bits;
                std::int64_t f0 = 0;
                for (std::size_t w = 0; w < W; ++w)
                    f0 += std::popcount(low_tab[lo * W + w] | high_tab[hi * W + w]);
                const std::int64_t fi = std::popcount(mask);
                local.offer(f0, fi, to_words(mask));
            }
            return local;
        },
        merge_best);

    MuMinResult r;
    r.value = make_ratio(best.f0, best.fi);
    r.witness = witness_from_mask(s, best.mask);
    r.subsets_examined = subsets - 1;
    r.exhaustive = true;
    return r;
}

MuMinResult sampled_scan(const CellSpace& s, const MuMinOptions& opt) {
    const std::size_t m = s.size();
    const std::size_t mask_words = (m + 63) / 64;
    const std::size_t nv = s.vertex_ids.size();
    CounterRng rng(opt.seed);

    std::vector<std::uint16_t> count(nv, 0);
    std::vector<std::uint64_t> mask(mask_words, 0);
    std::int64_t f0 = 0, fi = 0;

    auto vertex_positions = [&](std::size_t j, auto&& fn) {
        for (std::size_t w = 0; w < s.words; ++w) {
            std::uint64_t bits = s.cover[j * s.words + w];
            while (bits) {
                fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    };
    auto toggle_delta = [&](std::size_t j, bool adding) {
        std::int64_t d = 0;
        vertex_positions(j, [&](std::size_t v) {
            if (adding && count[v] == 0) ++d;
            if (!adding && count[v] == 1) --d;
        });
        return d;
    };
    auto commit = [&](std::size_t j, bool adding) {
        vertex_positions(j, [&](std::size_t v) { count[v] += adding ? 1 : -1; });
        mask[j / 64] ^= 1ull << (j % 64);
        fi += adding ? 1 : -1;
    };

    Best best;
    std::uint64_t examined = 0;
    for (std::uint64_t trial = 0; trial < opt.samples; ++trial) {
        std::fill(count.begin(), count.end(), 0);
        std::fill(mask.begin(), mask.end(), 0);
        f0 = fi = 0;
        for (std::size_t j = 0; j < m; ++j)
            if (rng.next_u64() & 1) {
                f0 += toggle_delta(j, true);
                commit(j, true);
            }
        ++examined;
        if (fi > 0) best.offer(f0, fi, mask);
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t j = 0; j < m; ++j) {
                const bool adding = !(mask[j / 64] & (1ull << (j % 64)));
                const std::int64_t nfi = fi + (adding ? 1 : -1);
                if (nfi == 0) continue;
                const std::int64_t nf0 = f0 + toggle_delta(j, adding);
                ++examined;
                // accept only strict mu decrease
                if (fi == 0 || nf0 * fi < f0 * nfi) {
                    commit(j, adding);
                    f0 = nf0;
                    improved = true;
                    if (fi > 0) best.offer(f0, fi, mask);
                }
            }
        }
    }
    if (!best.has)
        throw MuMinNoSubcomplexError("mu_min: sampled search found no subset with f_i > 0");
    MuMinResult r;
    r.value = make_ratio(best.f0, best.fi);
    r.witness = witness_from_mask(s, best.mask);
    r.subsets_examined = examined;
    r.exhaustive = false;
    return r;
}

} // namespace

MuMinResult mu_min(const SimplicialComplex2& c, int i, const MuMinOptions& opt) {
    if (i != 1 && i != 2) throw std::invalid_argument("mu_min: i must be 1 or 2");
    CellSpace s = build_space(c, i);
    if (s.size() == 0)
        throw MuMinNoSubcomplexError("mu_min: no subcomplex with f_" + std::to_string(i) + " > 0");
    if (opt.mode == MuMinOptions::Mode::exhaustive) return exhaustive_scan(s, opt);
    return sampled_scan(s, opt);
}

} // namespace stoch2c
