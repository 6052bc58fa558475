#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "peakval/holistic.hpp"
#include "peakval/scenario.hpp"
#include "peakval/sdp.hpp"

namespace peakval {

enum class PolicyCase { sdp, no_peak, min_peak, hol, hol_init };

std::string case_label(PolicyCase c);
std::optional<PolicyCase> parse_case(const std::string& label);

struct CaseSummary {
    std::string case_label;
    int n = 0;
    double mean_cost = 0.0;
    double sd_cost = 0.0;   // sample standard deviation
    double mean_peak = 0.0;
};

/// Replication seeds derive from the master seed and the replication index, so
/// every case sees the same path in replication r (common random numbers).
std::uint64_t derive_seed(std::uint64_t master_seed, int rep);

/// One forward run: samples a path from the seed, then walks the month day by
/// day carrying the achieved peak. Realized cost uses actual prices plus the
/// tariff on the final peak, never the expectation curves.
/// table must be present exactly when variant is sdp.
SimulationRecord run_replication(const BuildingConfig& cfg, const ScenarioSet& set,
                                 const MarkovChain& chain, const ValueTable* table,
                                 PolicyVariant variant, std::uint64_t seed, int rep = 0,
                                 bool keep_days = true);

struct MonteCarloResult {
    std::vector<CaseSummary> summaries;       // one per case, in case order
    std::vector<SimulationRecord> records;    // case-major, replication order
};

/// Runs n_reps replications of every case with common random numbers.
MonteCarloResult run_monte_carlo(const BuildingConfig& cfg, const ScenarioSet& set,
                                 const MarkovChain& chain, const ValueTable* table,
                                 const std::vector<PolicyCase>& cases, int n_reps,
                                 std::uint64_t master_seed, int threads = 0,
                                 bool keep_days = false);

/// results.csv / summary.csv writers. meta_header prepends a timestamp comment
/// line; suppress it for byte-reproducible output.
void write_results_csv(const std::vector<SimulationRecord>& records, std::ostream& os,
                       bool meta_header);
void write_summary_csv(const std::vector<CaseSummary>& summaries, std::ostream& os,
                       bool meta_header);

}  // namespace peakval
