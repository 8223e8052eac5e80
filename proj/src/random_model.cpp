#include "stoch2c/random_model.hpp"

#include "stoch2c/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace stoch2c {

namespace {

void check_unit_interval(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

std::size_t edge_rank(VertexId n, VertexId a, VertexId b) {
    // lexicographic rank of (a,b), a < b, within pairs from [n]
    auto nn = static_cast<std::size_t>(n);
    auto aa = static_cast<std::size_t>(a);
    return aa * (2 * nn - aa - 1) / 2 + static_cast<std::size_t>(b - a) - 1;
}

std::size_t choose3(std::size_t m) { return m < 3 ? 0 : m * (m - 1) * (m - 2) / 6; }
std::size_t choose2(std::size_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }

std::size_t tri_rank(VertexId n, VertexId a, VertexId b, VertexId c) {
    auto nn = static_cast<std::size_t>(n);
    std::size_t r = choose3(nn) - choose3(nn - static_cast<std::size_t>(a));
    r += choose2(nn - static_cast<std::size_t>(a) - 1) - choose2(nn - static_cast<std::size_t>(b));
    r += static_cast<std::size_t>(c - b) - 1;
    return r;
}

} // namespace

ProbabilityTriple::ProbabilityTriple(double a, double b, double c) : p0(a), p1(b), p2(c) {
    check_unit_interval(p0, "p0");
    check_unit_interval(p1, "p1");
    check_unit_interval(p2, "p2");
}

RationalProbabilityTriple::RationalProbabilityTriple(Ratio a, Ratio b, Ratio c)
    : p0(std::move(a)), p1(std::move(b)), p2(std::move(c)) {
    for (const Ratio* p : {&p0, &p1, &p2})
        if (*p < 0 || *p > 1) throw std::invalid_argument("probability must lie in [0,1]");
}

CoupledSample CoupledSample::draw(VertexId n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("draw_coupled: n must be >= 1");
    CoupledSample c;
    c.n_ = n;
    c.seed_ = seed;
    c.u_[0].reserve(static_cast<std::size_t>(n));
    for (VertexId a = 0; a < n; ++a) c.u_[0].push_back(simplex_uniform(seed, Simplex::vertex(a)));
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b) c.u_[1].push_back(simplex_uniform(seed, Simplex::edge(a, b)));
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
            for (VertexId cc = b + 1; cc < n; ++cc)
                c.u_[2].push_back(simplex_uniform(seed, Simplex::triangle(a, b, cc)));
    return c;
}

double CoupledSample::uniform(const Simplex& s) const {
    if (s[s.dim()] >= n_) throw std::invalid_argument("CoupledSample::uniform: vertex id >= n");
    switch (s.dim()) {
        case 0: return u_[0][static_cast<std::size_t>(s[0])];
        case 1: return u_[1][edge_rank(n_, s[0], s[1])];
        default: return u_[2][tri_rank(n_, s[0], s[1], s[2])];
    }
}

std::vector<Simplex> sample_X(const CoupledSample& c, const ProbabilityTriple& p) {
    std::vector<Simplex> X;
    const VertexId n = c.n();
    for (VertexId a = 0; a < n; ++a) {
        Simplex s = Simplex::vertex(a);
        if (c.uniform(s) < p.p0) X.push_back(s);
    }
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b) {
            Simplex s = Simplex::edge(a, b);
            if (c.uniform(s) < p.p1) X.push_back(s);
        }
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
            for (VertexId cc = b + 1; cc < n; ++cc) {
                Simplex s = Simplex::triangle(a, b, cc);
                if (c.uniform(s) < p.p2) X.push_back(s);
            }
    return X;
}

SimplicialComplex2 lower_complex(std::span<const Simplex> X) {
    std::array<std::vector<Simplex>, 3> in;
    for (const Simplex& s : X) in[static_cast<std::size_t>(s.dim())].push_back(s);
    for (auto& v : in) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    std::array<std::vector<Simplex>, 3> out;
    out[0] = std::move(in[0]);
    auto has = [](const std::vector<Simplex>& v, const Simplex& s) {
        return std::binary_search(v.begin(), v.end(), s);
    };
    for (const Simplex& e : in[1])
        if (has(out[0], Simplex::vertex(e[0])) && has(out[0], Simplex::vertex(e[1]))) out[1].push_back(e);
    for (const Simplex& t : in[2]) {
        bool keep = has(out[1], Simplex::edge(t[0], t[1])) && has(out[1], Simplex::edge(t[0], t[2])) &&
                    has(out[1], Simplex::edge(t[1], t[2]));
        if (keep) out[2].push_back(t);
    }
    return SimplicialComplex2::from_closed_unchecked(std::move(out));
}

SimplicialComplex2 sample_Y(VertexId n, const ProbabilityTriple& p, std::uint64_t seed) {
    CoupledSample c = CoupledSample::draw(n, seed);
    auto X = sample_X(c, p);
    return lower_complex(X);
}

Ratio probability_of(const SimplicialComplex2& Y, VertexId n, const RationalProbabilityTriple& p) {
    if (Y.max_vertex_id() >= n) throw std::invalid_argument("probability_of: Y is not a subcomplex of the full complex on [n]");
    const FVector a = Y.f_vector();
    std::uint64_t b[3] = {0, 0, 0};
    for (const Simplex& s : Y.external_set(n)) ++b[static_cast<std::size_t>(s.dim())];
    Ratio result(1);
    for (int i = 0; i < 3; ++i) {
        result *= ratio_pow(p[i], static_cast<std::uint64_t>(a[i]));
        result *= ratio_pow(Ratio(1) - p[i], b[static_cast<std::size_t>(i)]);
    }
    return result;
}

double log_probability_of(const SimplicialComplex2& Y, VertexId n, const ProbabilityTriple& p) {
    if (Y.max_vertex_id() >= n) throw std::invalid_argument("log_probability_of: Y is not a subcomplex of the full complex on [n]");
    const FVector a = Y.f_vector();
    std::int64_t b[3] = {0, 0, 0};
    for (const Simplex& s : Y.external_set(n)) ++b[static_cast<std::size_t>(s.dim())];
    double lp = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double pi = p[i];
        const double qi = 1.0 - pi;
        if (a[i] > 0) {
            if (pi == 0.0) return -std::numeric_limits<double>::infinity();
            lp += static_cast<double>(a[i]) * std::log(pi);
        }
        if (b[i] > 0) {
            if (qi == 0.0) return -std::numeric_limits<double>::infinity();
            lp += static_cast<double>(b[i]) * std::log(qi);
        }
    }
    return lp;
}

namespace {

// Bit layout for subsets of the full complex on [n] (n <= 5):
// vertices first, then edges, then triangles, each block in lexicographic
// order.  Matches the canonical iteration order used everywhere else.
struct DeltaMaskLayout {
    VertexId n;
    std::vector<Simplex> simplices;                  // all of them, canonical order
    std::vector<std::uint32_t> edge_vertex_mask;     // per edge, mask of its endpoints
    std::vector<std::uint32_t> tri_edge_mask;        // per triangle, mask of its edge bits
    std::size_t nv, ne, nt;

    explicit DeltaMaskLayout(VertexId n_in) : n(n_in) {
        nv = static_cast<std::size_t>(n);
        for (VertexId a = 0; a < n; ++a) simplices.push_back(Simplex::vertex(a));
        for (VertexId a = 0; a < n; ++a)
            for (VertexId b = a + 1; b < n; ++b) {
                edge_vertex_mask.push_back((1u << a) | (1u << b));
                simplices.push_back(Simplex::edge(a, b));
            }
        ne = edge_vertex_mask.size();
        for (VertexId a = 0; a < n; ++a)
            for (VertexId b = a + 1; b < n; ++b)
                for (VertexId c = b + 1; c < n; ++c) {
                    std::uint32_t m = 0;
                    m |= 1u << (nv + edge_rank(n, a, b));
                    m |= 1u << (nv + edge_rank(n, a, c));
                    m |= 1u << (nv + edge_rank(n, b, c));
                    tri_edge_mask.push_back(m);
                    simplices.push_back(Simplex::triangle(a, b, c));
                }
        nt = tri_edge_mask.size();
    }

    std::size_t total() const { return nv + ne + nt; }

    // lower_complex on masks
    std::uint32_t lower(std::uint32_t X) const {
        std::uint32_t keep = X & ((1u << nv) - 1u);
        for (std::size_t e = 0; e < ne; ++e) {
            std::uint32_t bit = 1u << (nv + e);
            if ((X & bit) && (keep & edge_vertex_mask[e]) == edge_vertex_mask[e]) keep |= bit;
        }
        for (std::size_t t = 0; t < nt; ++t) {
            std::uint32_t bit = 1u << (nv + ne + t);
            if ((X & bit) && (keep & tri_edge_mask[t]) == tri_edge_mask[t]) keep |= bit;
        }
        return keep;
    }

    bool downward_closed(std::uint32_t Y) const { return lower(Y) == Y; }

    SimplicialComplex2 to_complex(std::uint32_t Y) const {
        std::array<std::vector<Simplex>, 3> cells;
        for (std::size_t i = 0; i < total(); ++i)
            if (Y & (1u << i)) {
                const Simplex& s = simplices[i];
                cells[static_cast<std::size_t>(s.dim())].push_back(s);
            }
        return SimplicialComplex2::from_closed_unchecked(std::move(cells));
    }
};

} // namespace

std::map<SimplicialComplex2, Ratio> enumerate_distribution(VertexId n, const RationalProbabilityTriple& p,
                                                           bool allow_n5) {
    if (n < 1) throw std::invalid_argument("enumerate_distribution: n must be >= 1");
    if (n > 5 || (n == 5 && !allow_n5))
        throw std::invalid_argument("enumerate_distribution: n > 4 unsupported (pass the override for n = 5)");
    if (n == 5)
        std::cerr << "enumerate_distribution: n = 5 enumerates 2^25 subsets; this may take a while\n";

    DeltaMaskLayout layout(n);
    const std::size_t M = layout.total();

    // Factor the weight as num(X) / D with constant D, accumulating only
    // integer numerators: per dimension i with m_i simplices and p_i = a/d,
    // a subset with x_i present contributes a^x (d-a)^(m-x) over d^m.
    BigInt denom(1);
    std::vector<BigInt> pw[3], qw[3];
    const std::size_t per_dim[3] = {layout.nv, layout.ne, layout.nt};
    for (int i = 0; i < 3; ++i) {
        BigInt a = numerator(p[i]);
        BigInt d = denominator(p[i]);
        BigInt q = d - a;
        const std::size_t m = per_dim[i];
        for (std::size_t j = 0; j < m; ++j) denom *= d;
        pw[i].resize(m + 1);
        qw[i].resize(m + 1);
        pw[i][0] = 1;
        qw[i][0] = 1;
        for (std::size_t j = 1; j <= m; ++j) {
            pw[i][j] = pw[i][j - 1] * a;
            qw[i][j] = qw[i][j - 1] * q;
        }
    }

    const std::uint32_t vmask = (1u << layout.nv) - 1u;
    const std::uint32_t emask = ((1u << layout.ne) - 1u) << layout.nv;
    std::map<std::uint32_t, BigInt> acc;
    const std::uint64_t subsets = 1ull << M;
    for (std::uint64_t Xw = 0; Xw < subsets; ++Xw) {
        const auto X = static_cast<std::uint32_t>(Xw);
        const int x0 = std::popcount(X & vmask);
        const int x1 = std::popcount(X & emask);
        const int x2 = std::popcount(X) - x0 - x1;
        BigInt w = pw[0][static_cast<std::size_t>(x0)] * qw[0][layout.nv - static_cast<std::size_t>(x0)];
        w *= pw[1][static_cast<std::size_t>(x1)] * qw[1][layout.ne - static_cast<std::size_t>(x1)];
        w *= pw[2][static_cast<std::size_t>(x2)] * qw[2][layout.nt - static_cast<std::size_t>(x2)];
        if (w == 0) continue;
        acc[layout.lower(X)] += w;
    }

    std::map<SimplicialComplex2, Ratio> out;
    for (auto& [Ymask, num] : acc) out.emplace(layout.to_complex(Ymask), Ratio(num, denom));
    return out;
}

std::vector<SimplicialComplex2> enumerate_subcomplexes(VertexId n) {
    if (n < 1 || n > 4) throw std::invalid_argument("enumerate_subcomplexes: n must be in [1,4]");
    DeltaMaskLayout layout(n);
    std::vector<SimplicialComplex2> out;
    const std::uint64_t subsets = 1ull << layout.total();
    for (std::uint64_t Yw = 0; Yw < subsets; ++Yw) {
        const auto Y = static_cast<std::uint32_t>(Yw);
        if (layout.downward_closed(Y)) out.push_back(layout.to_complex(Y));
    }
    return out;
}

} // namespace stoch2c
