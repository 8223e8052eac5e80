#include "stoch2c/experiments.hpp"

#include "stoch2c/rng.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

using namespace stoch2c;

namespace {

ExperimentConfig tiny_sweep() {
    ExperimentConfig cfg;
    cfg.n_values = {8};
    cfg.p_entries.clear();
    cfg.apply_key_value("p", "1,1,0.2");
    cfg.apply_key_value("p", "1,1,0.5");
    cfg.apply_key_value("p", "1,1,0.8");
    cfg.source = "triangle";
    cfg.trials = 60;
    cfg.master_seed = 77;
    return cfg;
}

std::vector<double> cell_frequencies(const std::string& csv) {
    std::vector<double> freqs;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("cell,", 0) != 0) continue;
        // frequency is field 10 (0-based 9)
        std::istringstream ls(line);
        std::string tok;
        for (int i = 0; i < 10; ++i) std::getline(ls, tok, ',');
        freqs.push_back(std::stod(tok));
    }
    return freqs;
}

} // namespace

TEST_CASE("seed derivation is collision free on a large grid") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t stream = 0; stream < 100; ++stream)
        for (std::uint64_t trial = 0; trial < 10000; ++trial)
            seen.insert(derive_seed(123456789, stream, trial));
    CHECK(seen.size() == 100 * 10000);
}

TEST_CASE("config parsing") {
    const char* path = "stoch2c_test_config.tmp";
    {
        std::ofstream out(path);
        out << "# a comment\n";
        out << "n = 8, 10\n";
        out << "p = 1, 1, 0.5\n";
        out << "alpha = 0, 0, 0.45\n";
        out << "source = torus7\n";
        out << "trials = 12\n";
        out << "seed = 99\n";
        out << "common_random = true\n";
    }
    auto cfg = ExperimentConfig::from_file(path);
    std::remove(path);
    CHECK(cfg.n_values == std::vector<VertexId>{8, 10});
    REQUIRE(cfg.p_entries.size() == 2);
    CHECK_FALSE(cfg.p_entries[0].is_alpha);
    CHECK(cfg.p_entries[1].is_alpha);
    CHECK(cfg.p_entries[1].at(100).p2 == doctest::Approx(std::pow(100.0, -0.45)));
    CHECK(cfg.trials == 12);
    CHECK(cfg.master_seed == 99);

    ExperimentConfig bad;
    CHECK_THROWS_AS(bad.apply_key_value("nope", "1"), std::invalid_argument);
    CHECK_THROWS_AS(bad.apply_key_value("p", "0.5,0.5"), std::invalid_argument);
    ExperimentConfig empty;
    empty.n_values.clear();
    CHECK_THROWS_AS(empty.validate_mc(), std::invalid_argument);
}

TEST_CASE("mc sweep is reproducible byte for byte") {
    auto cfg = tiny_sweep();
    const std::string a = run_mc_sweep(cfg);
    const std::string b = run_mc_sweep(cfg);
    CHECK(a == b);
    cfg.verbose = true;
    const std::string v1 = run_mc_sweep(cfg);
    const std::string v2 = run_mc_sweep(cfg);
    CHECK(v1 == v2);
    CHECK(v1.find("trial,") != std::string::npos);
    CHECK(v1.find("# stoch2c-csv v1") == 0);
}

TEST_CASE("degenerate cells have deterministic frequencies") {
    ExperimentConfig cfg;
    cfg.n_values = {5};
    cfg.p_entries.clear();
    cfg.apply_key_value("p", "1,1,1");
    cfg.apply_key_value("p", "1,1,0");
    cfg.source = "triangle";
    cfg.trials = 10;
    auto freqs = cell_frequencies(run_mc_sweep(cfg));
    REQUIRE(freqs.size() == 2);
    CHECK(freqs[0] == 1.0);  // the full complex always hosts a triangle
    CHECK(freqs[1] == 0.0);  // p2 = 0 kills every triangle
}

TEST_CASE("common random numbers give exactly monotone frequency curves") {
    auto cfg = tiny_sweep();
    auto freqs = cell_frequencies(run_mc_sweep(cfg));
    REQUIRE(freqs.size() == 3);
    CHECK(freqs[0] <= freqs[1]);
    CHECK(freqs[1] <= freqs[2]);
}

TEST_CASE("expectation check flags nothing on a deterministic cell") {
    ExperimentConfig cfg;
    cfg.n_values = {8};
    cfg.p_entries.clear();
    cfg.apply_key_value("p", "1,1,1");
    cfg.source = "triangle";
    cfg.trials = 5;
    const std::string csv = run_expectation_check(cfg);
    // mean is exactly 8*7*6 = 336 on every trial
    CHECK(csv.find(",336,336,") != std::string::npos);
    CHECK(csv.find(",1\n") == std::string::npos);  // no flagged cell
}

TEST_CASE("mu study over small subdivisions") {
    ExperimentConfig cfg;
    cfg.source = "triangle";
    cfg.k_min = 1;
    cfg.k_max = 1;
    const std::string csv = run_mu_study(cfg);
    CHECK(csv.find("row,1,2,exhaustive,6,63,7/6,") != std::string::npos);
    // i = 1 over the 2^12 edge subsets: the whole skeleton is densest
    CHECK(csv.find("row,1,1,exhaustive,12,4095,7/12,7,12,0") != std::string::npos);
}

TEST_CASE("mu study on two glued triangles enumerates the 2^12 triangle unions") {
    const char* path = "stoch2c_two_glued.tmp.s2c";
    {
        std::ofstream out(path);
        out << "s2c 1\n2 0 1 2\n2 1 2 3\n";
    }
    ExperimentConfig cfg;
    cfg.source = path;
    cfg.k_min = 1;
    cfg.k_max = 1;
    const std::string csv = run_mu_study(cfg);
    std::remove(path);
    CHECK(csv.find("row,1,2,exhaustive,12,4095,") != std::string::npos);
}

TEST_CASE("budget-limited expectation cells exclude unknown trials with a warning") {
    ExperimentConfig cfg;
    cfg.n_values = {8};
    cfg.p_entries.clear();
    cfg.apply_key_value("p", "1,1,0.5");
    cfg.source = "torus7";
    cfg.trials = 20;
    cfg.embed_budget = 2;  // guaranteed to trip
    const std::string csv = run_expectation_check(cfg);
    CHECK(csv.find("# warning:") != std::string::npos);
    CHECK(csv.find("unknown trials excluded") != std::string::npos);
}

TEST_CASE("threshold table") {
    ExperimentConfig cfg;
    cfg.n_values = {10, 100};
    cfg.p_entries.clear();
    cfg.apply_key_value("alpha", "0.2,0.2,0.1");  // on the critical plane
    cfg.apply_key_value("alpha", "0,0,0");
    cfg.trials = 0;  // no MC attached
    const std::string csv = emit_threshold_table(cfg);
    std::istringstream in(csv);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line))
        if (line.rfind("row,", 0) == 0) rows.push_back(line);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].find(",1,") != std::string::npos);       // alpha_dot = 1
    CHECK(rows[1].find(",10,") != std::string::npos);      // margin = n for alpha = 0
    CHECK(rows[3].find(",100,") != std::string::npos);
}
