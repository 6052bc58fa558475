#include "peakval/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <sstream>

#include "peakval/parallel.hpp"

namespace peakval {

std::string case_label(PolicyCase c) {
    switch (c) {
        case PolicyCase::sdp: return "SDP";
        case PolicyCase::no_peak: return "NoPeak";
        case PolicyCase::min_peak: return "MinPeak";
        case PolicyCase::hol: return "Hol";
        case PolicyCase::hol_init: return "Hol_init";
    }
    return "?";
}

std::optional<PolicyCase> parse_case(const std::string& label) {
    if (label == "SDP") return PolicyCase::sdp;
    if (label == "NoPeak") return PolicyCase::no_peak;
    if (label == "MinPeak") return PolicyCase::min_peak;
    if (label == "Hol") return PolicyCase::hol;
    if (label == "Hol_init") return PolicyCase::hol_init;
    return std::nullopt;
}

std::uint64_t derive_seed(std::uint64_t master_seed, int rep) {
    // splitmix64 over the master seed advanced by the replication index.
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(rep) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

SimulationRecord run_day_policy(const BuildingConfig& cfg, const ScenarioSet& set,
                                const ValueTable* table, PolicyVariant variant,
                                const ScenarioPath& path, std::uint64_t seed, int rep,
                                bool keep_days) {
    SimulationRecord rec;
    rec.case_label = variant == PolicyVariant::sdp      ? "SDP"
                     : variant == PolicyVariant::no_peak ? "NoPeak"
                                                         : "MinPeak";
    rec.seed = seed;
    rec.rep = rep;
    rec.path = path;

    double running_peak = 0.0;  // a fresh billing month carries no prior peak
    for (int g = 0; g < set.n_days; ++g) {
        const int s = path.s[g];
        CostCurve curve;
        const CostCurve* curve_ptr = nullptr;
        if (variant == PolicyVariant::sdp) {
            curve = table->curve(g, s);
            curve_ptr = &curve;
        }
        DaySolution day;
        try {
            day = solve_day(cfg, set.at(g, s), DayState{running_peak}, curve_ptr, variant);
        } catch (const InfeasibleError& e) {
            throw InfeasibleError("replication " + std::to_string(rep) + " infeasible at day g=" +
                                  std::to_string(g + 1) + " s=" + std::to_string(s + 1) + ": " +
                                  e.what());
        }
        running_peak = day.peak;
        rec.energy_cost += day.cost_import - day.cost_export;
        if (keep_days) rec.days.push_back(std::move(day));
    }
    rec.final_peak = running_peak;
    rec.tariff_cost = cfg.grid.peak_tariff * rec.final_peak;
    rec.total_cost = rec.energy_cost + rec.tariff_cost;
    return rec;
}

}  // namespace

SimulationRecord run_replication(const BuildingConfig& cfg, const ScenarioSet& set,
                                 const MarkovChain& chain, const ValueTable* table,
                                 PolicyVariant variant, std::uint64_t seed, int rep,
                                 bool keep_days) {
    if ((variant == PolicyVariant::sdp) != (table != nullptr))
        throw std::invalid_argument("run_replication: value table required iff variant is SDP");
    const ScenarioPath path = sample_path(chain, set.n_days, seed);
    return run_day_policy(cfg, set, table, variant, path, seed, rep, keep_days);
}

MonteCarloResult run_monte_carlo(const BuildingConfig& cfg, const ScenarioSet& set,
                                 const MarkovChain& chain, const ValueTable* table,
                                 const std::vector<PolicyCase>& cases, int n_reps,
                                 std::uint64_t master_seed, int threads, bool keep_days) {
    if (n_reps < 1) throw std::invalid_argument("run_monte_carlo: n_reps must be >= 1");
    const bool needs_table =
        std::any_of(cases.begin(), cases.end(), [](PolicyCase c) { return c == PolicyCase::sdp; });
    if (needs_table && table == nullptr)
        throw std::invalid_argument("run_monte_carlo: SDP case requires a value table");

    // Paths drawn once per replication, independent of the case set.
    std::vector<std::uint64_t> seeds(n_reps);
    std::vector<ScenarioPath> paths(n_reps);
    for (int r = 0; r < n_reps; ++r) {
        seeds[r] = derive_seed(master_seed, r);
        paths[r] = sample_path(chain, set.n_days, seeds[r]);
    }

    MonteCarloResult out;
    out.records.resize(cases.size() * static_cast<size_t>(n_reps));
    const int workers = resolve_threads(threads);

    parallel_for(static_cast<int>(cases.size()) * n_reps, workers, [&](int idx) {
        const size_t c = static_cast<size_t>(idx) / n_reps;
        const int r = idx % n_reps;
        SimulationRecord rec;
        switch (cases[c]) {
            case PolicyCase::sdp:
                rec = run_day_policy(cfg, set, table, PolicyVariant::sdp, paths[r], seeds[r], r,
                                     keep_days);
                break;
            case PolicyCase::no_peak:
                rec = run_day_policy(cfg, set, nullptr, PolicyVariant::no_peak, paths[r], seeds[r],
                                     r, keep_days);
                break;
            case PolicyCase::min_peak:
                rec = run_day_policy(cfg, set, nullptr, PolicyVariant::min_peak, paths[r], seeds[r],
                                     r, keep_days);
                break;
            case PolicyCase::hol:
            case PolicyCase::hol_init: {
                rec = solve_holistic(cfg, set, paths[r], cases[c] == PolicyCase::hol_init);
                rec.seed = seeds[r];
                rec.rep = r;
                if (!keep_days) rec.days.clear();
                break;
            }
        }
        out.records[c * n_reps + r] = std::move(rec);
    });

    for (size_t c = 0; c < cases.size(); ++c) {
        CaseSummary sum;
        sum.case_label = case_label(cases[c]);
        sum.n = n_reps;
        double mean = 0.0, mean_peak = 0.0;
        for (int r = 0; r < n_reps; ++r) {
            mean += out.records[c * n_reps + r].total_cost;
            mean_peak += out.records[c * n_reps + r].final_peak;
        }
        mean /= n_reps;
        mean_peak /= n_reps;
        double ss = 0.0;
        for (int r = 0; r < n_reps; ++r) {
            const double d = out.records[c * n_reps + r].total_cost - mean;
            ss += d * d;
        }
        sum.mean_cost = mean;
        sum.mean_peak = mean_peak;
        sum.sd_cost = n_reps > 1 ? std::sqrt(ss / (n_reps - 1)) : 0.0;
        out.summaries.push_back(std::move(sum));
    }
    return out;
}

namespace {

std::string path_string(const ScenarioPath& path) {
    std::string out;
    for (size_t i = 0; i < path.s.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(path.s[i] + 1);
    }
    return out;
}

void meta_line(std::ostream& os) {
    const std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << buf << "\n";
}

}  // namespace

void write_results_csv(const std::vector<SimulationRecord>& records, std::ostream& os,
                       bool meta_header) {
    if (meta_header) meta_line(os);
    os << "case,seed,rep,total_cost_eur,energy_cost_eur,tariff_cost_eur,final_peak_kwh_h,path\n";
    char buf[128];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), ",%llu,%d,%.4f,%.4f,%.4f,%.3f,",
                      static_cast<unsigned long long>(r.seed), r.rep, r.total_cost, r.energy_cost,
                      r.tariff_cost, r.final_peak);
        os << r.case_label << buf << path_string(r.path) << "\n";
    }
}

void write_summary_csv(const std::vector<CaseSummary>& summaries, std::ostream& os,
                       bool meta_header) {
    if (meta_header) meta_line(os);
    os << "case,n,mean_cost,sd_cost,mean_peak\n";
    char buf[96];
    for (const auto& s : summaries) {
        std::snprintf(buf, sizeof(buf), ",%d,%.4f,%.4f,%.3f", s.n, s.mean_cost, s.sd_cost,
                      s.mean_peak);
        os << s.case_label << buf << "\n";
    }
}

}  // namespace peakval
