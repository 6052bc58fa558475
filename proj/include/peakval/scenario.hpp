#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "peakval/dayopt.hpp"
#include "peakval/model.hpp"

namespace peakval {

/// Rectangular lattice: one DayScenario per (day, scenario node).
struct ScenarioSet {
    int n_days = 0;
    int n_scenarios = 0;
    std::vector<std::vector<DayScenario>> days;  // [g][s]

    const DayScenario& at(int g, int s) const { return days[g][s]; }
};

/// Per-day transition matrices plus the day-1 distribution.
struct MarkovChain {
    std::vector<std::vector<std::vector<double>>> transitions;  // [g][s][s'], g = 0..G-2
    std::vector<double> initial;                                // over day-1 scenarios

    int n_scenarios() const { return static_cast<int>(initial.size()); }
};

/// Realized scenario indices, one per day (0-based).
struct ScenarioPath {
    std::vector<int> s;
};

std::vector<std::string> validate_scenario_set(const ScenarioSet& set);
std::vector<std::string> validate_chain(const MarkovChain& chain, int n_days, int n_scenarios);

/// Loads scenarios.json; PV is scaled by the inverter efficiency on the way in.
/// Throws ValidationError naming every schema violation.
std::pair<ScenarioSet, MarkovChain> load_scenarios(const std::string& path,
                                                   double pv_inverter_eff);
void save_scenarios(const ScenarioSet& set, const MarkovChain& chain, const std::string& path);

/// s_1 ~ initial distribution, s_{g+1} ~ transitions[g][s_g]. Deterministic given the seed.
ScenarioPath sample_path(const MarkovChain& chain, int n_days, std::uint64_t seed);
ScenarioPath sample_path(const MarkovChain& chain, int n_days, std::mt19937_64& rng);

struct SynthParams {
    int n_days = 31;
    int n_scenarios = 4;
    double rho_self = 0.55;          // self-transition weight; rest spread uniformly
    double pv_inverter_eff = 0.95;
    double load_scale = 1.0;
    double spot_scale = 1.0;
    double t_out_mean = -4.0;        // winter daily average [degC]
};

/// Seeded winter-like lattice: diurnal spot, morning/evening load humps, a
/// midday PV window, four occupancy/EV patterns, self-biased transitions.
/// Every generated day is feasible for the day problem.
std::pair<ScenarioSet, MarkovChain> generate_synthetic(const SynthParams& params,
                                                       std::uint64_t seed);

}  // namespace peakval
