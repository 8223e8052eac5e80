#include "stoch2c/random_model.hpp"

#include "stoch2c/rng.hpp"

#include <doctest.h>

#include "test_util.hpp"

#include <cmath>
#include <map>

using namespace stoch2c;
using namespace stoch2c::testutil;

namespace {

RationalProbabilityTriple halves() {
    return RationalProbabilityTriple(make_ratio(1, 2), make_ratio(1, 2), make_ratio(1, 2));
}

} // namespace

TEST_CASE("coupled samples are deterministic and complete") {
    auto a = CoupledSample::draw(3, 42);
    auto b = CoupledSample::draw(3, 42);
    CHECK(a.size() == 7);
    CHECK(CoupledSample::draw(4, 1).size() == 14);
    for (VertexId v = 0; v < 3; ++v)
        CHECK(a.uniform(Simplex::vertex(v)) == b.uniform(Simplex::vertex(v)));
    CHECK(a.uniform(Simplex::triangle(0, 1, 2)) == b.uniform(Simplex::triangle(0, 1, 2)));
    CHECK(a.uniform(Simplex::edge(0, 2)) != CoupledSample::draw(3, 43).uniform(Simplex::edge(0, 2)));
    CHECK_THROWS_AS(CoupledSample::draw(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(a.uniform(Simplex::vertex(3)), std::invalid_argument);
}

TEST_CASE("sample_X extremes") {
    auto c = CoupledSample::draw(4, 7);
    CHECK(sample_X(c, ProbabilityTriple(1, 1, 1)).size() == 14);
    CHECK(sample_X(c, ProbabilityTriple(0, 0, 0)).empty());
    auto skel = sample_X(c, ProbabilityTriple(1, 1, 0));
    CHECK(skel.size() == 10);  // 4 vertices + 6 edges
}

TEST_CASE("lower_complex basics and fixed point") {
    std::vector<Simplex> x1 = {Simplex::vertex(0), Simplex::vertex(1), Simplex::edge(0, 1)};
    auto y1 = lower_complex(x1);
    CHECK(y1.f_vector() == FVector{2, 1, 0});

    std::vector<Simplex> x2 = {Simplex::edge(0, 1)};
    CHECK(lower_complex(x2).empty());

    // full complex on three vertices minus vertex 0
    std::vector<Simplex> x3 = {Simplex::vertex(1),     Simplex::vertex(2),     Simplex::edge(0, 1),
                               Simplex::edge(0, 2),    Simplex::edge(1, 2),    Simplex::triangle(0, 1, 2)};
    auto y3 = lower_complex(x3);
    CHECK(y3 == SimplicialComplex2::from_maximal_simplices({Simplex::edge(1, 2)}));

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto c = random_complex(seed, 8, 5, 5);
        std::vector<Simplex> all;
        for (int d = 0; d < 3; ++d)
            for (const Simplex& s : c.simplices(d)) all.push_back(s);
        CHECK(lower_complex(all) == c);  // complexes are fixed points
    }
}

TEST_CASE("monotone coupling") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        CounterRng rng(seed + 555);
        auto rnd01 = [&] { return rng.next_uniform(); };
        double lo0 = rnd01(), lo1 = rnd01(), lo2 = rnd01();
        ProbabilityTriple p(lo0 * 0.9, lo1 * 0.9, lo2 * 0.9);
        ProbabilityTriple q(std::min(1.0, p.p0 + rnd01() * 0.1), std::min(1.0, p.p1 + rnd01() * 0.1),
                            std::min(1.0, p.p2 + rnd01() * 0.1));
        auto ylo = sample_Y(6, p, seed);
        auto yhi = sample_Y(6, q, seed);
        for (int d = 0; d < 3; ++d)
            for (const Simplex& s : ylo.simplices(d)) CHECK(yhi.contains(s));
    }
}

TEST_CASE("probability_of on hand-checked cases") {
    auto p = halves();
    CHECK(probability_of(SimplicialComplex2(), 3, p) == make_ratio(1, 8));
    auto full = triangle_complex();
    CHECK(probability_of(full, 3, p) == make_ratio(1, 128));
    CHECK_THROWS_AS(probability_of(full, 2, p), std::invalid_argument);
}

TEST_CASE("enumerate_distribution matches the closed-form measure exactly") {
    const RationalProbabilityTriple ps[] = {
        halves(),
        RationalProbabilityTriple(make_ratio(1, 3), make_ratio(2, 3), make_ratio(1, 5)),
        RationalProbabilityTriple(make_ratio(1, 1), make_ratio(1, 2), make_ratio(1, 2)),
    };
    for (const auto& p : ps) {
        auto dist = enumerate_distribution(3, p);
        Ratio total(0);
        for (const auto& [y, prob] : dist) {
            CHECK(prob == probability_of(y, 3, p));
            total += prob;
        }
        CHECK(total == Ratio(1));
        // every downward-closed complex is covered (mass may be zero)
        for (const auto& y : enumerate_subcomplexes(3)) {
            auto it = dist.find(y);
            Ratio push = it == dist.end() ? Ratio(0) : it->second;
            CHECK(push == probability_of(y, 3, p));
        }
    }
}

TEST_CASE("enumerate_distribution point masses and guard rails") {
    RationalProbabilityTriple all_one(make_ratio(1, 1), make_ratio(1, 1), make_ratio(1, 1));
    auto dist = enumerate_distribution(3, all_one);
    REQUIRE(dist.size() == 1);
    CHECK(dist.begin()->first.f_vector() == FVector{3, 3, 1});
    CHECK(dist.begin()->second == Ratio(1));

    RationalProbabilityTriple zero0(make_ratio(0, 1), make_ratio(1, 2), make_ratio(1, 2));
    auto dist0 = enumerate_distribution(3, zero0);
    REQUIRE(dist0.size() == 1);
    CHECK(dist0.begin()->first.empty());

    CHECK_THROWS_AS(enumerate_distribution(5, all_one), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_distribution(6, all_one, true), std::invalid_argument);
}

TEST_CASE("distribution collapse count for n=3") {
    auto dist = enumerate_distribution(3, halves());
    CHECK(dist.size() == 19);  // distinct downward-closed images of the 128 subsets
    CHECK(enumerate_subcomplexes(3).size() == 19);
}

TEST_CASE("log probability agrees with the exact measure") {
    auto p = RationalProbabilityTriple(make_ratio(1, 3), make_ratio(2, 3), make_ratio(1, 5));
    auto pd = p.to_double();
    for (const auto& y : enumerate_subcomplexes(3)) {
        const double lp = log_probability_of(y, 3, pd);
        const double exact = std::log(ratio_to_double(probability_of(y, 3, p)));
        CHECK(lp == doctest::Approx(exact).epsilon(1e-12));
    }
    CHECK(log_probability_of(triangle_complex(), 3, ProbabilityTriple(1, 1, 1)) == 0.0);
    CHECK(log_probability_of(SimplicialComplex2(), 3, ProbabilityTriple(1, 0.5, 0.5)) ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("empirical frequencies track the exact distribution") {
    // 10^6 seeded draws at n=3, p=(1/2,1/2,1/2); total variation below 0.005
    const auto p = halves();
    auto exact = enumerate_distribution(3, p);
    std::map<SimplicialComplex2, std::uint64_t> hits;
    const std::uint64_t N = 1000000;
    const ProbabilityTriple pd = p.to_double();
    for (std::uint64_t seed = 0; seed < N; ++seed) ++hits[sample_Y(3, pd, seed)];
    double tv = 0;
    for (const auto& [y, prob] : exact) {
        const double emp = hits.count(y) ? static_cast<double>(hits[y]) / static_cast<double>(N) : 0.0;
        tv += std::abs(emp - ratio_to_double(prob));
    }
    tv /= 2;
    CHECK(tv < 0.005);
}
