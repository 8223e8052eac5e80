#include "stoch2c/experiments.hpp"

#include "stoch2c/mu_min.hpp"
#include "stoch2c/parallel.hpp"
#include "stoch2c/rng.hpp"
#include "stoch2c/s2c_io.hpp"
#include "stoch2c/subdivision.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stoch2c {

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

std::string fnum(double v) { return fmt("%.12g", v); }
std::string ffreq(double v) { return fmt("%.6f", v); }

double now_wall() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

const char* outcome_name(SearchOutcome o) {
    switch (o) {
        case SearchOutcome::found: return "embedded";
        case SearchOutcome::none: return "not-embedded";
        default: return "unknown";
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

ProbabilityTriple PEntry::at(VertexId n) const {
    if (!is_alpha) return p;
    auto f = [&](double a) { return std::pow(static_cast<double>(n), -a); };
    return ProbabilityTriple(f(alpha[0]), f(alpha[1]), f(alpha[2]));
}

void ExperimentConfig::validate_mc() const {
    if (n_values.empty()) throw std::invalid_argument("config: at least one n is required");
    if (p_entries.empty()) throw std::invalid_argument("config: at least one p or alpha entry is required");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    for (VertexId n : n_values)
        if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    for (const PEntry& e : p_entries)
        if (e.is_alpha)
            for (double a : e.alpha)
                if (a < 0) throw std::invalid_argument("config: alpha entries must be >= 0");
    if (k < 0) throw std::invalid_argument("config: k must be >= 0");
}

void ExperimentConfig::apply_key_value(const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in);
    const std::string value = trim(value_in);
    auto parse_triple = [&](std::array<double, 3>& out) {
        auto parts = split(value, ',');
        if (parts.size() != 3) throw std::invalid_argument("config: '" + key + "' expects three comma-separated values");
        for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = std::stod(trim(parts[static_cast<std::size_t>(i)]));
    };
    if (key == "n") {
        for (const std::string& part : split(value, ','))
            n_values.push_back(static_cast<VertexId>(std::stol(trim(part))));
    } else if (key == "p") {
        std::array<double, 3> t{};
        parse_triple(t);
        PEntry e;
        e.is_alpha = false;
        e.p = ProbabilityTriple(t[0], t[1], t[2]);
        p_entries.push_back(e);
    } else if (key == "alpha") {
        PEntry e;
        e.is_alpha = true;
        parse_triple(e.alpha);
        p_entries.push_back(e);
    } else if (key == "source") {
        source = value;
    } else if (key == "k") {
        k = std::stoi(value);
    } else if (key == "k_min") {
        k_min = std::stoi(value);
    } else if (key == "k_max") {
        k_max = std::stoi(value);
    } else if (key == "trials") {
        trials = std::stoull(value);
    } else if (key == "seed") {
        master_seed = std::stoull(value);
    } else if (key == "budget") {
        embed_budget = std::stoull(value);
    } else if (key == "mu_budget") {
        mu_budget = std::stoull(value);
    } else if (key == "mu_samples") {
        mu_samples = std::stoull(value);
    } else if (key == "verbose") {
        verbose = value == "1" || value == "true";
    } else if (key == "common_random") {
        common_random = value == "1" || value == "true";
    } else if (key == "timings") {
        timings = value == "1" || value == "true";
    } else if (key == "epsilon") {
        epsilon = std::stod(value);
    } else if (key == "c") {
        gao_c = std::stod(value);
    } else if (key == "out") {
        out = value;
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    ExperimentConfig cfg;
    cfg.n_values.clear();
    cfg.p_entries.clear();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        if (trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value' at line " + std::to_string(lineno));
        cfg.apply_key_value(line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t total) {
    if (total == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 97.5% normal quantile
    const double nn = static_cast<double>(total);
    const double phat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (phat + z2 / (2 * nn)) / denom;
    const double half = z * std::sqrt(phat * (1 - phat) / nn + z2 / (4 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

SimplicialComplex2 load_source_complex(const ExperimentConfig& cfg) {
    SimplicialComplex2 base;
    if (cfg.source == "torus7") {
        base = torus_7().complex;
    } else if (cfg.source == "triangle") {
        base = SimplicialComplex2::from_maximal_simplices({Simplex::triangle(0, 1, 2)});
    } else {
        base = load_s2c_file(cfg.source);
    }
    if (cfg.k == 0) return base;
    return SubdividedComplex::build(base, cfg.k).complex();
}

namespace {

struct CellLayout {
    VertexId n;
    ProbabilityTriple p;
    std::size_t n_index;
    std::size_t cell_index;
};

std::vector<CellLayout> layout_cells(const ExperimentConfig& cfg) {
    std::vector<CellLayout> cells;
    std::size_t ci = 0;
    for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni)
        for (const PEntry& e : cfg.p_entries) {
            cells.push_back({cfg.n_values[ni], e.at(cfg.n_values[ni]), ni, ci});
            ++ci;
        }
    return cells;
}

std::vector<TrialRecord> run_cell_trials(const ExperimentConfig& cfg, const SimplicialComplex2& src,
                                         const CellLayout& cell, bool with_count) {
    std::vector<TrialRecord> recs(cfg.trials);
    const std::uint64_t stream = cfg.common_random ? cell.n_index : cell.cell_index;
    parallel_for_index(cfg.trials, [&](std::uint64_t t) {
        const double t0 = now_wall();
        TrialRecord& r = recs[t];
        r.n = cell.n;
        r.p = cell.p;
        r.seed = derive_seed(cfg.master_seed, stream, t);
        SimplicialComplex2 host = sample_Y(cell.n, cell.p, r.seed);
        r.host_f = host.f_vector();
        auto res = find_embedding(src, host, cfg.embed_budget);
        r.outcome = res.outcome;
        if (with_count && res.outcome != SearchOutcome::unknown)
            r.count = res.outcome == SearchOutcome::none ? 0 : count_embeddings(src, host);
        r.wall_seconds = now_wall() - t0;
    });
    return recs;
}

} // namespace

std::string run_mc_sweep(const ExperimentConfig& cfg) {
    cfg.validate_mc();
    const SimplicialComplex2 src = load_source_complex(cfg);
    std::ostringstream out;
    out << "# stoch2c-csv v1\n";
    out << "# mc-sweep source=" << cfg.source << " k=" << cfg.k << " trials=" << cfg.trials
        << " seed=" << cfg.master_seed << " common_random=" << (cfg.common_random ? 1 : 0) << "\n";
    if (cfg.verbose)
        out << "# trial,n,p0,p1,p2,trial_index,seed,outcome,host_f0,host_f1,host_f2\n";
    out << "# cell,n,p0,p1,p2,trials,embedded,not_embedded,unknown,frequency,wilson_lo,wilson_hi,invalid\n";
    std::vector<std::pair<std::size_t, double>> cell_times;

    for (const CellLayout& cell : layout_cells(cfg)) {
        const double c0 = now_wall();
        auto recs = run_cell_trials(cfg, src, cell, false);
        std::uint64_t emb = 0, nemb = 0, unk = 0;
        for (std::size_t t = 0; t < recs.size(); ++t) {
            const TrialRecord& r = recs[t];
            switch (r.outcome) {
                case SearchOutcome::found: ++emb; break;
                case SearchOutcome::none: ++nemb; break;
                default: ++unk; break;
            }
            if (cfg.verbose)
                out << "trial," << r.n << ',' << fnum(r.p.p0) << ',' << fnum(r.p.p1) << ','
                    << fnum(r.p.p2) << ',' << t << ',' << r.seed << ',' << outcome_name(r.outcome)
                    << ',' << r.host_f.f0 << ',' << r.host_f.f1 << ',' << r.host_f.f2 << '\n';
        }
        const std::uint64_t decided = emb + nemb;
        const double freq = decided ? static_cast<double>(emb) / static_cast<double>(decided) : 0.0;
        auto [lo, hi] = wilson_interval(emb, decided ? decided : 1);
        const bool invalid = static_cast<double>(unk) > 0.01 * static_cast<double>(cfg.trials);
        out << "cell," << cell.n << ',' << fnum(cell.p.p0) << ',' << fnum(cell.p.p1) << ','
            << fnum(cell.p.p2) << ',' << cfg.trials << ',' << emb << ',' << nemb << ',' << unk << ','
            << ffreq(freq) << ',' << ffreq(lo) << ',' << ffreq(hi) << ',' << (invalid ? 1 : 0) << '\n';
        cell_times.push_back({cell.cell_index, now_wall() - c0});
    }
    if (cfg.timings) {
        out << "# timings (non-reproducible)\n";
        for (auto [ci, secs] : cell_times) out << "timing," << ci << ',' << fmt("%.3f", secs) << '\n';
    }
    return out.str();
}

std::string run_expectation_check(const ExperimentConfig& cfg) {
    cfg.validate_mc();
    const SimplicialComplex2 src = load_source_complex(cfg);
    std::ostringstream out;
    out << "# stoch2c-csv v1\n";
    out << "# expect-check source=" << cfg.source << " k=" << cfg.k << " trials=" << cfg.trials
        << " seed=" << cfg.master_seed << "\n";
    out << "# cell,n,p0,p1,p2,trials,used,unknown,mean,expected,stderr,z,flagged\n";

    for (const CellLayout& cell : layout_cells(cfg)) {
        auto recs = run_cell_trials(cfg, src, cell, true);
        std::uint64_t used = 0, unk = 0;
        double sum = 0.0;
        for (const TrialRecord& r : recs) {
            if (!r.count) {
                ++unk;
                continue;
            }
            ++used;
            sum += static_cast<double>(*r.count);
        }
        if (unk > 0)
            out << "# warning: " << unk << " unknown trials excluded in cell " << cell.cell_index << "\n";
        const double mean = used ? sum / static_cast<double>(used) : 0.0;
        double ss = 0.0;
        for (const TrialRecord& r : recs)
            if (r.count) {
                const double d = static_cast<double>(*r.count) - mean;
                ss += d * d;
            }
        const double sd = used > 1 ? std::sqrt(ss / static_cast<double>(used - 1)) : 0.0;
        const double se = used > 0 ? sd / std::sqrt(static_cast<double>(used)) : 0.0;
        const double expected = expected_embedding_count(src, cell.n, cell.p);
        double z = 0.0;
        bool flagged = false;
        if (se > 0) {
            z = (mean - expected) / se;
            flagged = std::abs(z) > 3.0;
        } else {
            flagged = mean != expected;
        }
        out << "cell," << cell.n << ',' << fnum(cell.p.p0) << ',' << fnum(cell.p.p1) << ','
            << fnum(cell.p.p2) << ',' << cfg.trials << ',' << used << ',' << unk << ','
            << fnum(mean) << ',' << fnum(expected) << ',' << fnum(se) << ',' << fmt("%.4f", z) << ','
            << (flagged ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string run_mu_study(const ExperimentConfig& cfg) {
    if (cfg.k_min < 0 || cfg.k_max < cfg.k_min)
        throw std::invalid_argument("mu-study: need 0 <= k_min <= k_max");
    SimplicialComplex2 base;
    {
        ExperimentConfig c = cfg;
        c.k = 0;
        base = load_source_complex(c);
    }
    std::ostringstream out;
    out << "# stoch2c-csv v1\n";
    out << "# mu-study source=" << cfg.source << " k=" << cfg.k_min << ".." << cfg.k_max
        << " budget=" << cfg.mu_budget << "\n";
    out << "# row,k,i,mode,cells,subsets_examined,mu_min,witness_f0,witness_f1,witness_f2\n";
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
        const SimplicialComplex2 s =
            k == 0 ? base : SubdividedComplex::build(base, k).complex();
        for (int i : {1, 2}) {
            const std::size_t cells = s.simplices(i).size();
            MuMinOptions opt;
            opt.subset_budget = cfg.mu_budget;
            const bool exhaustive = cells <= 62 && (1ull << cells) <= cfg.mu_budget;
            if (!exhaustive) {
                opt.mode = MuMinOptions::Mode::sampled;
                opt.samples = cfg.mu_samples;
                opt.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i));
            }
            std::string row;
            try {
                MuMinResult r = mu_min(s, i, opt);
                const FVector wf = r.witness.f_vector();
                row = std::to_string(k) + "," + std::to_string(i) + "," +
                      (r.exhaustive ? "exhaustive" : "sampled") + "," + std::to_string(cells) + "," +
                      std::to_string(r.subsets_examined) + "," + ratio_to_string(r.value) + "," +
                      std::to_string(wf.f0) + "," + std::to_string(wf.f1) + "," + std::to_string(wf.f2);
            } catch (const MuMinNoSubcomplexError&) {
                row = std::to_string(k) + "," + std::to_string(i) + ",none," + std::to_string(cells) +
                      ",0,undefined,0,0,0";
            }
            out << "row," << row << '\n';
        }
    }
    return out.str();
}

std::string emit_threshold_table(const ExperimentConfig& cfg) {
    if (cfg.n_values.empty()) throw std::invalid_argument("threshold-table: at least one n is required");
    if (cfg.p_entries.empty()) throw std::invalid_argument("threshold-table: at least one alpha/p entry is required");
    const bool with_mc = cfg.trials > 0;
    SimplicialComplex2 src;
    if (with_mc) src = load_source_complex(cfg);
    std::ostringstream out;
    out << "# stoch2c-csv v1\n";
    out << "# threshold-table epsilon=" << fnum(cfg.epsilon) << " trials=" << cfg.trials
        << " seed=" << cfg.master_seed << "\n";
    out << "# row,n,alpha0,alpha1,alpha2,alpha_dot,p0,p1,p2,margin,eps_margin,frequency\n";
    for (const CellLayout& cell : layout_cells(cfg)) {
        const PEntry& e = cfg.p_entries[cell.cell_index % cfg.p_entries.size()];
        const ThresholdMargin m = threshold_margin(cell.n, cell.p, cfg.epsilon);
        std::string freq = "";
        if (with_mc) {
            auto recs = run_cell_trials(cfg, src, cell, false);
            std::uint64_t emb = 0, decided = 0;
            for (const TrialRecord& r : recs) {
                if (r.outcome == SearchOutcome::found) ++emb;
                if (r.outcome != SearchOutcome::unknown) ++decided;
            }
            freq = ffreq(decided ? static_cast<double>(emb) / static_cast<double>(decided) : 0.0);
        }
        const double dot = e.is_alpha ? e.alpha[0] + 3 * e.alpha[1] + 2 * e.alpha[2] : std::nan("");
        out << "row," << cell.n << ',';
        if (e.is_alpha)
            out << fnum(e.alpha[0]) << ',' << fnum(e.alpha[1]) << ',' << fnum(e.alpha[2]) << ','
                << fnum(dot) << ',';
        else
            out << ",,,,";
        out << fnum(cell.p.p0) << ',' << fnum(cell.p.p1) << ',' << fnum(cell.p.p2) << ','
            << fnum(m.margin) << ',' << fnum(m.eps_margin) << ',' << freq << '\n';
    }
    return out.str();
}

} // namespace stoch2c
