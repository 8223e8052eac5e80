#pragma once

#include "stoch2c/complex.hpp"
#include "stoch2c/embedding.hpp"
#include "stoch2c/random_model.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stoch2c {

// Experiment orchestration: Monte Carlo sweeps over (n, p) cells, the
// expectation cross-check, mu-minimization studies over subdivisions, and
// threshold tables.  All outputs are CSV with the schema comment
// "# stoch2c-csv v1"; identical config + master seed give byte-identical
// output regardless of the thread count (wall-clock timings are segregated
// behind an explicit flag).

struct PEntry {
    bool is_alpha = false;
    ProbabilityTriple p;              // explicit triple
    std::array<double, 3> alpha{};    // p_i = n^(-alpha_i)

    ProbabilityTriple at(VertexId n) const;
};

struct ExperimentConfig {
    std::vector<VertexId> n_values;
    std::vector<PEntry> p_entries;
    std::string source = "torus7";   // builtin name or .s2c path
    int k = 0;                       // subdivision depth applied to the source
    int k_min = 1, k_max = 1;        // mu-study range
    std::uint64_t trials = 100;
    std::uint64_t master_seed = 0;
    std::uint64_t embed_budget = 0;  // 0 = unlimited
    std::uint64_t mu_budget = 1ull << 26;
    std::uint64_t mu_samples = 2000;
    bool verbose = false;
    bool common_random = true;       // share trial seeds across cells with equal n
    bool timings = false;            // append the segregated timing section
    double epsilon = 0.0;
    double gao_c = 1.0;
    std::string out;                 // consumed by the CLI

    void validate_mc() const;

    // "key = value" lines; '#' comments.  Repeatable keys: n, p, alpha.
    void apply_key_value(const std::string& key, const std::string& value);
    static ExperimentConfig from_file(const std::string& path);
};

struct TrialRecord {
    VertexId n = 0;
    ProbabilityTriple p;
    std::uint64_t seed = 0;
    SearchOutcome outcome = SearchOutcome::none;
    std::optional<std::uint64_t> count;
    FVector host_f;
    double wall_seconds = 0.0;
};

// Wilson 95% score interval for successes/total.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t total);

SimplicialComplex2 load_source_complex(const ExperimentConfig& cfg);

std::string run_mc_sweep(const ExperimentConfig& cfg);
std::string run_expectation_check(const ExperimentConfig& cfg);
std::string run_mu_study(const ExperimentConfig& cfg);
std::string emit_threshold_table(const ExperimentConfig& cfg);

} // namespace stoch2c
