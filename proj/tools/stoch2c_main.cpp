#include "stoch2c/domain.hpp"
#include "stoch2c/embedding.hpp"
#include "stoch2c/experiments.hpp"
#include "stoch2c/mu_min.hpp"
#include "stoch2c/random_model.hpp"
#include "stoch2c/s2c_io.hpp"
#include "stoch2c/subdivision.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace stoch2c;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

SimplicialComplex2 load_complex_arg(const std::string& arg) {
    if (arg == "torus7") return torus_7().complex;
    if (arg == "triangle")
        return SimplicialComplex2::from_maximal_simplices({Simplex::triangle(0, 1, 2)});
    return load_s2c_file(arg);
}

std::string mu_text(const std::optional<Ratio>& mu) {
    return mu ? ratio_to_string(*mu) : "undefined";
}

// Shared experiment flags; config file values are applied first, explicitly
// passed flags override them.
struct ExperimentCli {
    std::string config_path;
    std::vector<VertexId> n_values;
    std::vector<std::string> p_strings, alpha_strings;
    ExperimentConfig cfg;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file with key = value lines");
        cmd->add_option("--n", n_values, "vertex counts");
        cmd->add_option("--p", p_strings, "explicit probability triple p0,p1,p2 (repeatable)");
        cmd->add_option("--alpha", alpha_strings, "alpha triple a0,a1,a2 giving p_i = n^-a_i (repeatable)");
        cmd->add_option("--source", cfg.source, "source complex: torus7, triangle, or a .s2c path");
        cmd->add_option("--k", cfg.k, "subdivision depth applied to the source");
        cmd->add_option("--k-min", cfg.k_min, "mu-study: first subdivision depth");
        cmd->add_option("--k-max", cfg.k_max, "mu-study: last subdivision depth");
        cmd->add_option("--trials", cfg.trials, "trials per cell");
        cmd->add_option("--seed", cfg.master_seed, "master seed");
        cmd->add_option("--budget", cfg.embed_budget, "embedding search node budget (0 = unlimited)");
        cmd->add_option("--mu-budget", cfg.mu_budget, "mu_min exhaustive subset budget");
        cmd->add_option("--mu-samples", cfg.mu_samples, "mu_min sampled restarts");
        cmd->add_flag("--verbose", cfg.verbose, "emit per-trial rows");
        cmd->add_flag("--independent-random", "derive trial seeds per cell instead of per n");
        cmd->add_flag("--timings", cfg.timings, "append the segregated timing section");
        cmd->add_option("--epsilon", cfg.epsilon, "epsilon for the shifted threshold margin");
        cmd->add_option("--c", cfg.gao_c, "triangulation-count constant for union bounds");
        cmd->add_option("--out", cfg.out, "output path (default stdout)");
    }

    ExperimentConfig resolve(CLI::App* cmd) {
        ExperimentConfig resolved;
        if (!config_path.empty()) resolved = ExperimentConfig::from_file(config_path);
        auto passed = [&](const std::string& name) { return cmd->count(name) > 0; };
        if (passed("--n")) resolved.n_values = n_values;
        if (passed("--p") || passed("--alpha")) resolved.p_entries.clear();
        for (const std::string& s : p_strings) resolved.apply_key_value("p", s);
        for (const std::string& s : alpha_strings) resolved.apply_key_value("alpha", s);
        if (passed("--source")) resolved.source = cfg.source;
        if (passed("--k")) resolved.k = cfg.k;
        if (passed("--k-min")) resolved.k_min = cfg.k_min;
        if (passed("--k-max")) resolved.k_max = cfg.k_max;
        if (passed("--trials")) resolved.trials = cfg.trials;
        if (passed("--seed")) resolved.master_seed = cfg.master_seed;
        if (passed("--budget")) resolved.embed_budget = cfg.embed_budget;
        if (passed("--mu-budget")) resolved.mu_budget = cfg.mu_budget;
        if (passed("--mu-samples")) resolved.mu_samples = cfg.mu_samples;
        if (passed("--verbose")) resolved.verbose = true;
        if (passed("--independent-random")) resolved.common_random = false;
        if (passed("--timings")) resolved.timings = true;
        if (passed("--epsilon")) resolved.epsilon = cfg.epsilon;
        if (passed("--c")) resolved.gao_c = cfg.gao_c;
        if (passed("--out")) resolved.out = cfg.out;
        return resolved;
    }
};

std::string domain_scan_csv(const DomainScanReport& r, const std::string& mode) {
    std::ostringstream out;
    out << "# stoch2c-csv v1\n";
    out << "# k,type,mode,domains_checked,counterexamples,min_mu_found\n";
    const auto& min_mu = r.type == DomainType::type2 ? r.min_mu2 : r.min_mu1;
    out << r.k << ',' << static_cast<int>(r.type) << ',' << mode << ',' << r.domains_checked << ','
        << r.bounds.violations << ',' << (min_mu ? ratio_to_string(*min_mu) : "undefined") << '\n';
    return out.str();
}

void dump_counterexamples(std::ostream& os, const VkGeometry& g, DomainType d,
                          const std::vector<CellMask>& examples) {
    for (const CellMask& mask : examples) {
        os << "removed:";
        for (std::size_t i = 0; i < g.num_cells(d); ++i)
            if (mask_test(mask, i))
                os << ' '
                   << (d == DomainType::type2 ? g.triangle_simplex(i) : g.interior_edge_simplex(i))
                          .to_string();
        os << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stoch2c: random 2-complexes, subdivisions, domains and embeddings"};
    app.require_subcommand(1);

    // ---- sample ----
    VertexId n = 3;
    double p0 = 0.5, p1 = 0.5, p2 = 0.5;
    std::uint64_t seed = 0;
    std::string out_path, in_path, host_path;
    auto* sample_cmd = app.add_subcommand("sample", "draw one complex from the lower model");
    sample_cmd->add_option("--n", n)->required();
    sample_cmd->add_option("--p0", p0)->required();
    sample_cmd->add_option("--p1", p1)->required();
    sample_cmd->add_option("--p2", p2)->required();
    sample_cmd->add_option("--seed", seed)->required();
    sample_cmd->add_option("--out", out_path);

    // ---- exact-dist ----
    std::string rp0 = "1/2", rp1 = "1/2", rp2 = "1/2";
    bool allow_large = false;
    auto* dist_cmd = app.add_subcommand("exact-dist", "exhaustive exact distribution of the lower model");
    dist_cmd->add_option("--n", n)->required();
    dist_cmd->add_option("--p0", rp0)->required();
    dist_cmd->add_option("--p1", rp1)->required();
    dist_cmd->add_option("--p2", rp2)->required();
    dist_cmd->add_flag("--allow-large", allow_large, "permit n = 5 (2^25 subsets)");
    dist_cmd->add_option("--out", out_path);

    // ---- subdivide ----
    int k = 1;
    auto* subdiv_cmd = app.add_subcommand("subdivide", "k-th subdivision of a complex");
    subdiv_cmd->add_option("--in", in_path)->required();
    subdiv_cmd->add_option("--k", k)->required();
    subdiv_cmd->add_option("--out", out_path);

    // ---- fvector ----
    auto* fvec_cmd = app.add_subcommand("fvector", "f-vector and exact mu ratios");
    fvec_cmd->add_option("--in", in_path)->required();
    fvec_cmd->add_option("--k", k, "report the closed-form f-vector of the k-th subdivision");
    fvec_cmd->add_option("--out", out_path);

    // ---- verify-domains ----
    int dom_type = 2;
    std::string mode = "exhaustive";
    std::uint64_t samples = 1000000;
    bool dump_cex = false;
    auto* dom_cmd = app.add_subcommand("verify-domains", "scan domains in V_k for the mu bounds");
    dom_cmd->add_option("--k", k)->required();
    dom_cmd->add_option("--type", dom_type)->check(CLI::IsMember({1, 2}));
    dom_cmd->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
    dom_cmd->add_option("--samples", samples);
    dom_cmd->add_option("--seed", seed);
    dom_cmd->add_flag("--allow-large", allow_large, "raise the exhaustive ceiling to 2^30");
    dom_cmd->add_flag("--dump-counterexamples", dump_cex);
    dom_cmd->add_option("--out", out_path);

    // ---- embed ----
    bool do_count = false;
    std::uint64_t budget = 0;
    auto* embed_cmd = app.add_subcommand("embed", "search for a simplicial embedding");
    embed_cmd->add_option("--source", in_path)->required();
    embed_cmd->add_option("--host", host_path)->required();
    embed_cmd->add_flag("--count", do_count, "count all embeddings");
    embed_cmd->add_option("--budget", budget, "node expansion budget (0 = unlimited)");
    embed_cmd->add_option("--out", out_path);

    // ---- torus-bound ----
    double gao_c = 1.0, epsilon = 0.0;
    auto* bound_cmd = app.add_subcommand("torus-bound", "threshold margin and torus union bound");
    bound_cmd->add_option("--n", n)->required();
    bound_cmd->add_option("--p0", p0)->required();
    bound_cmd->add_option("--p1", p1)->required();
    bound_cmd->add_option("--p2", p2)->required();
    bound_cmd->add_option("--c", gao_c);
    bound_cmd->add_option("--epsilon", epsilon);
    bound_cmd->add_option("--out", out_path);

    // ---- experiment commands ----
    ExperimentCli mc_cli, exp_cli, mu_cli, thr_cli;
    auto* mc_cmd = app.add_subcommand("mc-sweep", "Monte Carlo embedding sweep over (n, p) cells");
    mc_cli.attach(mc_cmd);
    auto* exp_cmd = app.add_subcommand("expect-check", "Monte Carlo mean vs exact expected embedding count");
    exp_cli.attach(exp_cmd);
    auto* mu_cmd = app.add_subcommand("mu-study", "minimal mu ratios over subdivisions");
    mu_cli.attach(mu_cmd);
    auto* thr_cmd = app.add_subcommand("threshold-table", "threshold margins over an alpha grid");
    thr_cli.attach(thr_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample_cmd->parsed()) {
            auto Y = sample_Y(n, ProbabilityTriple(p0, p1, p2), seed);
            write_output(serialize_s2c(Y), out_path);
        } else if (dist_cmd->parsed()) {
            RationalProbabilityTriple p(parse_ratio(rp0), parse_ratio(rp1), parse_ratio(rp2));
            auto dist = enumerate_distribution(n, p, allow_large);
            std::ostringstream os;
            for (const auto& [Y, prob] : dist)
                os << inline_form(Y) << '\t' << ratio_to_string(prob) << '\n';
            write_output(os.str(), out_path);
        } else if (subdiv_cmd->parsed()) {
            auto base = load_complex_arg(in_path);
            auto sub = SubdividedComplex::build(base, k);
            write_output(serialize_s2c(sub.complex()), out_path);
        } else if (fvec_cmd->parsed()) {
            auto base = load_complex_arg(in_path);
            std::ostringstream os;
            if (fvec_cmd->count("--k") > 0 && k >= 1) {
                const FVector f = fvector_subdivided(base, k);
                const auto mu1 = f.f1 ? std::optional<Ratio>(make_ratio(f.f0, f.f1)) : std::nullopt;
                const auto mu2 = f.f2 ? std::optional<Ratio>(make_ratio(f.f0, f.f2)) : std::nullopt;
                os << f.f0 << ' ' << f.f1 << ' ' << f.f2 << '\n';
                os << "mu1 " << mu_text(mu1) << '\n' << "mu2 " << mu_text(mu2) << '\n';
            } else {
                const FVector f = base.f_vector();
                os << f.f0 << ' ' << f.f1 << ' ' << f.f2 << '\n';
                os << "mu1 " << mu_text(base.mu(1)) << '\n' << "mu2 " << mu_text(base.mu(2)) << '\n';
            }
            write_output(os.str(), out_path);
        } else if (dom_cmd->parsed()) {
            VkGeometry g(k);
            const DomainType d = dom_type == 1 ? DomainType::type1 : DomainType::type2;
            const ScanMode sm = mode == "exhaustive" ? ScanMode::exhaustive(allow_large)
                                                     : ScanMode::sampled(samples, seed);
            const DomainScanReport r = scan_domains(g, d, sm);
            std::ostringstream os;
            os << "mu-bounds k=" << r.k << " type=" << dom_type << " mode=" << mode
               << " domains=" << r.domains_checked << " counterexamples=" << r.bounds.violations
               << " verdict=" << (r.bounds.violations == 0 ? "PASS" : "FAIL") << '\n';
            os << "vk-comparison k=" << r.k << " type=" << dom_type << " mode=" << mode
               << " domains=" << r.domains_checked << " counterexamples=" << r.vk_comparison.violations
               << " verdict=" << (r.vk_comparison.violations == 0 ? "HOLDS" : "FAILS")
               << " min_mu1=" << mu_text(r.min_mu1) << " min_mu2=" << mu_text(r.min_mu2) << '\n';
            if (dump_cex) {
                dump_counterexamples(os, g, d, r.bounds.examples);
                dump_counterexamples(os, g, d, r.vk_comparison.examples);
            }
            os << domain_scan_csv(r, mode);
            write_output(os.str(), out_path);
        } else if (embed_cmd->parsed()) {
            auto src = load_complex_arg(in_path);
            auto host = load_complex_arg(host_path);
            std::ostringstream os;
            if (do_count) {
                os << "count " << count_embeddings(src, host) << '\n';
            } else {
                auto r = find_embedding(src, host, budget);
                switch (r.outcome) {
                    case SearchOutcome::found: {
                        os << "found";
                        for (auto [s, h] : r.witness->assignment) os << ' ' << s << "->" << h;
                        os << '\n';
                        break;
                    }
                    case SearchOutcome::none: os << "none\n"; break;
                    default: os << "unknown\n"; break;
                }
                os << "nodes " << r.nodes_expanded << '\n';
            }
            write_output(os.str(), out_path);
        } else if (bound_cmd->parsed()) {
            const ProbabilityTriple p(p0, p1, p2);
            const ThresholdMargin m = threshold_margin(n, p, epsilon);
            const UnionBound ub = torus_union_bound(n, p, gao_c);
            const auto per_tri = embedding_probability_upper_bound(torus_7().complex, n, p);
            std::ostringstream os;
            char buf[256];
            std::snprintf(buf, sizeof(buf), "margin %.12g\neps_margin %.12g\nper_triangulation_bound %.12g\n",
                          m.margin, m.eps_margin, per_tri);
            os << buf;
            if (ub.diverged)
                os << "union_bound diverged\n";
            else {
                std::snprintf(buf, sizeof(buf), "union_bound %.12g\n", ub.value);
                os << buf;
            }
            write_output(os.str(), out_path);
        } else if (mc_cmd->parsed()) {
            auto cfg = mc_cli.resolve(mc_cmd);
            write_output(run_mc_sweep(cfg), cfg.out);
        } else if (exp_cmd->parsed()) {
            auto cfg = exp_cli.resolve(exp_cmd);
            write_output(run_expectation_check(cfg), cfg.out);
        } else if (mu_cmd->parsed()) {
            auto cfg = mu_cli.resolve(mu_cmd);
            write_output(run_mu_study(cfg), cfg.out);
        } else if (thr_cmd->parsed()) {
            auto cfg = thr_cli.resolve(thr_cmd);
            write_output(emit_threshold_table(cfg), cfg.out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
