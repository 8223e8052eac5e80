#include "stoch2c/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace stoch2c {

namespace {

// Compact host view: dense vertex indices, adjacency bitsets, and a
// pair -> third-vertex bitset table so triangle constraints reduce to ANDs.
struct HostView {
    std::vector<VertexId> vids;
    std::map<VertexId, std::uint32_t> index;
    std::size_t words = 0;
    std::vector<std::uint64_t> adj;       // nv * words
    std::vector<std::int32_t> degree;     // incident edges
    std::vector<std::int32_t> tri_degree; // incident triangles
    std::unordered_map<std::uint64_t, std::size_t> pair_slot;
    std::vector<std::uint64_t> pair_thirds;  // slot * words

    explicit HostView(const SimplicialComplex2& host) {
        for (const Simplex& v : host.simplices(0)) vids.push_back(v[0]);
        for (std::size_t i = 0; i < vids.size(); ++i) index[vids[i]] = static_cast<std::uint32_t>(i);
        const std::size_t nv = vids.size();
        words = (nv + 63) / 64;
        adj.assign(nv * words, 0);
        degree.assign(nv, 0);
        tri_degree.assign(nv, 0);
        for (const Simplex& e : host.simplices(1)) {
            const std::uint32_t a = index[e[0]], b = index[e[1]];
            adj[a * words + b / 64] |= 1ull << (b % 64);
            adj[b * words + a / 64] |= 1ull << (a % 64);
            ++degree[a];
            ++degree[b];
        }
        pair_slot.reserve(host.simplices(2).size() * 3);
        for (const Simplex& t : host.simplices(2)) {
            const std::uint32_t v[3] = {index[t[0]], index[t[1]], index[t[2]]};
            for (int i = 0; i < 3; ++i) {
                const std::uint32_t a = v[i], b = v[(i + 1) % 3], c = v[(i + 2) % 3];
                const std::uint64_t key = pack_pair(a, b);
                auto [it, fresh] = pair_slot.try_emplace(key, pair_thirds.size() / words);
                if (fresh) pair_thirds.resize(pair_thirds.size() + words, 0);
                pair_thirds[it->second * words + c / 64] |= 1ull << (c % 64);
                ++tri_degree[v[i]];  // each corner once per triangle across the rotations
            }
        }
    }

    static std::uint64_t pack_pair(std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    // nullptr when no host triangle spans the pair
    const std::uint64_t* thirds(std::uint32_t a, std::uint32_t b) const {
        auto it = pair_slot.find(pack_pair(a, b));
        return it == pair_slot.end() ? nullptr : pair_thirds.data() + it->second * words;
    }
};

struct SourceView {
    std::vector<VertexId> order;                       // static assignment order
    std::vector<std::int32_t> degree, tri_degree;      // per order position
    std::vector<std::vector<int>> earlier_neighbors;   // positions assigned before, S-adjacent
    std::vector<std::vector<std::pair<int, int>>> earlier_tri_pairs;  // S-triangles completed here

    explicit SourceView(const SimplicialComplex2& s) {
        std::map<VertexId, std::int32_t> deg, tdeg;
        for (const Simplex& v : s.simplices(0)) deg[v[0]] = 0;
        for (const Simplex& v : s.simplices(0)) tdeg[v[0]] = 0;
        for (const Simplex& e : s.simplices(1)) {
            ++deg[e[0]];
            ++deg[e[1]];
        }
        for (const Simplex& t : s.simplices(2))
            for (VertexId v : t.vertices()) ++tdeg[v];

        // Descending degree; ties go to the vertex that closes the most
        // triangles (then edges) with the already-ordered prefix, so the
        // search meets its constraints early.  Deterministic throughout.
        {
            std::vector<VertexId> remaining;
            for (const Simplex& v : s.simplices(0)) remaining.push_back(v[0]);
            std::set<VertexId> chosen;
            while (!remaining.empty()) {
                std::size_t best = 0;
                auto key = [&](VertexId v) {
                    int tri_closed = 0, edges_in = 0;
                    for (const Simplex& t : s.simplices(2))
                        if (t.contains_vertex(v)) {
                            int in = 0;
                            for (VertexId w : t.vertices())
                                if (w != v && chosen.count(w)) ++in;
                            if (in == 2) ++tri_closed;
                        }
                    for (const Simplex& e : s.simplices(1))
                        if (e.contains_vertex(v) && chosen.count(e[0] == v ? e[1] : e[0])) ++edges_in;
                    return std::tuple(deg[v], tri_closed, edges_in, -v);
                };
                auto best_key = key(remaining[0]);
                for (std::size_t i = 1; i < remaining.size(); ++i) {
                    auto k = key(remaining[i]);
                    if (k > best_key) {
                        best_key = k;
                        best = i;
                    }
                }
                order.push_back(remaining[best]);
                chosen.insert(remaining[best]);
                remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
            }
        }

        std::map<VertexId, int> pos;
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
        degree.resize(order.size());
        tri_degree.resize(order.size());
        earlier_neighbors.resize(order.size());
        earlier_tri_pairs.resize(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            degree[i] = deg[order[i]];
            tri_degree[i] = tdeg[order[i]];
        }
        for (const Simplex& e : s.simplices(1)) {
            int a = pos[e[0]], b = pos[e[1]];
            if (a > b) std::swap(a, b);
            earlier_neighbors[static_cast<std::size_t>(b)].push_back(a);
        }
        for (const Simplex& t : s.simplices(2)) {
            int ps[3] = {pos[t[0]], pos[t[1]], pos[t[2]]};
            std::sort(ps, ps + 3);
            earlier_tri_pairs[static_cast<std::size_t>(ps[2])].push_back({ps[0], ps[1]});
        }
        for (auto& v : earlier_neighbors) std::sort(v.begin(), v.end());
    }
};

struct Searcher {
    const SourceView& sv;
    const HostView& hv;
    std::uint64_t budget = 0;  // 0 = unlimited
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    bool count_all = false;
    std::uint64_t count = 0;
    std::vector<std::uint32_t> assigned;          // host index per order position
    std::vector<std::uint64_t> used;              // bitset over host vertices
    std::vector<std::uint64_t> eligible;          // per-depth scratch: candidate bitset
    std::vector<std::uint64_t> admissible;        // per-depth static degree filter
    bool found = false;

    Searcher(const SourceView& s, const HostView& h) : sv(s), hv(h) {
        const std::size_t W = hv.words;
        assigned.assign(sv.order.size(), 0);
        used.assign(W, 0);
        eligible.assign(W * std::max<std::size_t>(sv.order.size(), 1), 0);
        admissible.assign(W * std::max<std::size_t>(sv.order.size(), 1), 0);
        for (std::size_t d = 0; d < sv.order.size(); ++d)
            for (std::uint32_t hvx = 0; hvx < hv.vids.size(); ++hvx)
                if (hv.degree[hvx] >= sv.degree[d] && hv.tri_degree[hvx] >= sv.tri_degree[d])
                    admissible[d * W + hvx / 64] |= 1ull << (hvx % 64);
    }

    bool run() {
        if (sv.order.empty()) {
            // empty source embeds via the empty map
            found = true;
            count = 1;
            return true;
        }
        dfs(0);
        return found;
    }

    void dfs(std::size_t depth) {
        if (budget_hit || (found && !count_all)) return;
        const std::size_t W = hv.words;
        std::uint64_t* cand = eligible.data() + depth * W;
        const std::uint64_t* base = admissible.data() + depth * W;

        for (std::size_t w = 0; w < W; ++w) cand[w] = base[w] & ~used[w];
        for (int ep : sv.earlier_neighbors[depth]) {
            const std::uint64_t* row = hv.adj.data() + assigned[static_cast<std::size_t>(ep)] * W;
            for (std::size_t w = 0; w < W; ++w) cand[w] &= row[w];
        }
        for (const auto& [pa, pb] : sv.earlier_tri_pairs[depth]) {
            const std::uint64_t* row = hv.thirds(assigned[static_cast<std::size_t>(pa)],
                                                 assigned[static_cast<std::size_t>(pb)]);
            if (!row) return;  // no host triangle spans this image pair
            for (std::size_t w = 0; w < W; ++w) cand[w] &= row[w];
        }

        for (std::size_t w = 0; w < W; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                if (budget_hit || (found && !count_all)) return;
                const auto h = static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
                ++nodes;
                if (budget && nodes > budget) {
                    budget_hit = true;
                    return;
                }
                assigned[depth] = h;
                if (depth + 1 == sv.order.size()) {
                    found = true;
                    ++count;
                    if (!count_all) return;
                } else {
                    used[h / 64] |= 1ull << (h % 64);
                    dfs(depth + 1);
                    used[h / 64] &= ~(1ull << (h % 64));
                }
            }
        }
    }

    EmbeddingMap witness() const {
        EmbeddingMap m;
        for (std::size_t i = 0; i < sv.order.size(); ++i)
            m.assignment.push_back({sv.order[i], hv.vids[assigned[i]]});
        std::sort(m.assignment.begin(), m.assignment.end());
        return m;
    }
};

std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t m) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        if (i >= n) return 0;
        r *= n - i;
    }
    return r;
}

} // namespace

EmbeddingSearchResult find_embedding(const SimplicialComplex2& source, const SimplicialComplex2& host,
                                     std::uint64_t node_budget) {
    SourceView sv(source);
    HostView hv(host);
    EmbeddingSearchResult r;
    if (sv.order.size() > hv.vids.size()) {
        r.outcome = SearchOutcome::none;
        return r;
    }
    Searcher s(sv, hv);
    s.budget = node_budget;
    const bool ok = s.run();
    r.nodes_expanded = s.nodes;
    if (ok) {
        r.outcome = SearchOutcome::found;
        r.witness = s.witness();
    } else {
        r.outcome = s.budget_hit ? SearchOutcome::unknown : SearchOutcome::none;
    }
    return r;
}

std::uint64_t count_embeddings(const SimplicialComplex2& source, const SimplicialComplex2& host) {
    SourceView sv(source);
    HostView hv(host);
    if (sv.order.size() > hv.vids.size()) return 0;
    Searcher s(sv, hv);
    s.count_all = true;
    s.run();
    return s.count;
}

std::uint64_t count_embeddings_bruteforce(const SimplicialComplex2& source,
                                          const SimplicialComplex2& host) {
    std::vector<VertexId> svs, hvs;
    for (const Simplex& v : source.simplices(0)) svs.push_back(v[0]);
    for (const Simplex& v : host.simplices(0)) hvs.push_back(v[0]);
    if (falling_factorial(hvs.size(), svs.size()) > 10'000'000ull)
        throw std::invalid_argument("count_embeddings_bruteforce: injection count exceeds 1e7");
    if (svs.empty()) return 1;

    std::uint64_t total = 0;
    std::vector<VertexId> image(svs.size());
    std::vector<bool> used(hvs.size(), false);
    std::map<VertexId, VertexId> phi;

    auto valid = [&]() {
        for (std::size_t i = 0; i < svs.size(); ++i) phi[svs[i]] = image[i];
        for (const Simplex& e : source.simplices(1)) {
            VertexId a = phi[e[0]], b = phi[e[1]];
            if (!host.contains(Simplex::edge(std::min(a, b), std::max(a, b)))) return false;
        }
        for (const Simplex& t : source.simplices(2)) {
            VertexId m[3] = {phi[t[0]], phi[t[1]], phi[t[2]]};
            std::sort(m, m + 3);
            if (!host.contains(Simplex::triangle(m[0], m[1], m[2]))) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == svs.size()) {
            if (valid()) ++total;
            return;
        }
        for (std::size_t h = 0; h < hvs.size(); ++h) {
            if (used[h]) continue;
            used[h] = true;
            image[depth] = hvs[h];
            self(self, depth + 1);
            used[h] = false;
        }
    };
    rec(rec, 0);
    return total;
}

bool validate_embedding(const SimplicialComplex2& source, const SimplicialComplex2& host,
                        const EmbeddingMap& map) {
    std::map<VertexId, VertexId> phi;
    std::map<VertexId, int> image_count;
    for (auto [s, h] : map.assignment) {
        if (phi.count(s)) return false;
        phi[s] = h;
        if (++image_count[h] > 1) return false;  // not injective
    }
    for (const Simplex& v : source.simplices(0))
        if (!phi.count(v[0])) return false;
    for (int d = 0; d < 3; ++d)
        for (const Simplex& s : source.simplices(d)) {
            VertexId m[3];
            for (int i = 0; i <= d; ++i) m[i] = phi[s[i]];
            std::sort(m, m + d + 1);
            for (int i = 0; i < d; ++i)
                if (m[i] == m[i + 1]) return false;
            if (!host.contains(Simplex(std::span<const VertexId>(m, static_cast<std::size_t>(d + 1)))))
                return false;
        }
    return true;
}

TorusTriangulation torus_7() {
    std::vector<Simplex> tris;
    for (VertexId i = 0; i < 7; ++i) {
        VertexId a[3] = {i, static_cast<VertexId>((i + 1) % 7), static_cast<VertexId>((i + 3) % 7)};
        VertexId b[3] = {i, static_cast<VertexId>((i + 2) % 7), static_cast<VertexId>((i + 3) % 7)};
        std::sort(a, a + 3);
        std::sort(b, b + 3);
        tris.push_back(Simplex::triangle(a[0], a[1], a[2]));
        tris.push_back(Simplex::triangle(b[0], b[1], b[2]));
    }
    TorusTriangulation t{SimplicialComplex2::from_maximal_simplices(tris)};
    if (!t.complex.is_closed_surface() || t.complex.euler_characteristic() != 0)
        throw std::logic_error("torus_7: certification failed");
    return t;
}

double expected_embedding_count(const SimplicialComplex2& source, VertexId n,
                                const ProbabilityTriple& p) {
    const FVector f = source.f_vector();
    if (f.f0 > n) return 0.0;
    double r = 1.0;
    for (std::int64_t i = 0; i < f.f0; ++i) r *= static_cast<double>(n - i);
    r *= std::pow(p.p0, static_cast<double>(f.f0));
    r *= std::pow(p.p1, static_cast<double>(f.f1));
    r *= std::pow(p.p2, static_cast<double>(f.f2));
    return r;
}

Ratio expected_embedding_count_exact(const SimplicialComplex2& source, VertexId n,
                                     const RationalProbabilityTriple& p) {
    const FVector f = source.f_vector();
    if (f.f0 > n) return Ratio(0);
    BigInt ff(1);
    for (std::int64_t i = 0; i < f.f0; ++i) ff *= (n - i);
    Ratio r(ff);
    r *= ratio_pow(p.p0, static_cast<std::uint64_t>(f.f0));
    r *= ratio_pow(p.p1, static_cast<std::uint64_t>(f.f1));
    r *= ratio_pow(p.p2, static_cast<std::uint64_t>(f.f2));
    return r;
}

double embedding_probability_upper_bound(const SimplicialComplex2& source, VertexId n,
                                         const ProbabilityTriple& p) {
    const FVector f = source.f_vector();
    double r = std::pow(static_cast<double>(n), static_cast<double>(f.f0));
    r *= std::pow(p.p0, static_cast<double>(f.f0));
    r *= std::pow(p.p1, static_cast<double>(f.f1));
    r *= std::pow(p.p2, static_cast<double>(f.f2));
    return r;
}

Ratio embedding_probability_upper_bound_exact(const SimplicialComplex2& source, VertexId n,
                                              const RationalProbabilityTriple& p) {
    const FVector f = source.f_vector();
    using boost::multiprecision::pow;
    Ratio r(pow(BigInt(n), static_cast<unsigned>(f.f0)));
    r *= ratio_pow(p.p0, static_cast<std::uint64_t>(f.f0));
    r *= ratio_pow(p.p1, static_cast<std::uint64_t>(f.f1));
    r *= ratio_pow(p.p2, static_cast<std::uint64_t>(f.f2));
    return r;
}

UnionBound torus_union_bound(VertexId n, const ProbabilityTriple& p, double c) {
    if (c < 1.0) throw std::invalid_argument("torus_union_bound: c must be >= 1");
    UnionBound b;
    b.u = c * static_cast<double>(n) * p.p0 * p.p1 * p.p1 * p.p1 * p.p2 * p.p2;
    if (b.u >= 1.0) {
        b.diverged = true;
    } else {
        b.value = b.u / (1.0 - b.u);
    }
    return b;
}

ThresholdMargin threshold_margin(VertexId n, const ProbabilityTriple& p, double epsilon) {
    ThresholdMargin m;
    m.margin = static_cast<double>(n) * p.p0 * p.p1 * p.p1 * p.p1 * p.p2 * p.p2;
    m.eps_margin = static_cast<double>(n) * p.p0 * std::pow(p.p1, 3.0 + epsilon) *
                   std::pow(p.p2, 2.0 + epsilon);
    return m;
}

} // namespace stoch2c
