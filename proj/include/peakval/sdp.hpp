#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peakval/curve.hpp"
#include "peakval/dayopt.hpp"
#include "peakval/scenario.hpp"

namespace peakval {

/// Backward-recursion output. V[g][s][n] is the optimal day-g objective with
/// incoming peak P_n under scenario s, inclusive of expected future cost;
/// F[g][s] is the curve the day-g problem consumes (terminal curve on the
/// last day, otherwise the transition-weighted combination of day g+1 values).
struct ValueTable {
    PeakGrid grid;
    int n_days = 0;
    int n_scenarios = 0;
    std::vector<std::vector<std::vector<double>>> V;  // [g][s][n]
    std::vector<std::vector<std::vector<double>>> F;  // [g][s][n]

    CostCurve curve(int g, int s) const { return CostCurve{grid, F[g][s]}; }
};

/// Ending cost of the measured-peak tariff: values[n] = tariff * P_n.
CostCurve terminal_curve(const PeakGrid& grid, double tariff);

/// Slope of each curve segment [EUR per kWh/h].
std::vector<double> marginal_curve(const CostCurve& c);

/// Largest grid point whose value still equals the curve minimum (within 1e-6):
/// the highest peak that costs nothing extra to allow.
double optimal_initial_peak(const CostCurve& c);

struct BackwardStats {
    long node_solves = 0;
    double wall_seconds = 0.0;
};

/// Runs the full backward pass over the lattice. Within a day all (scenario,
/// grid-point) nodes solve independently and may run on several threads; the
/// result is bit-identical regardless of thread count.
ValueTable backward_pass(const BuildingConfig& cfg, const ScenarioSet& set,
                         const MarkovChain& chain, const PeakGrid& grid, int threads = 0,
                         BackwardStats* stats = nullptr);

void save_efcc(const ValueTable& table, const std::string& path);
ValueTable load_efcc(const std::string& path);

}  // namespace peakval
