#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peakval/dayopt.hpp"
#include "peakval/scenario.hpp"

namespace peakval {

/// One evaluated month under some policy case: realized accounting only.
struct SimulationRecord {
    std::string case_label;
    std::uint64_t seed = 0;
    int rep = 0;
    ScenarioPath path;
    std::vector<DaySolution> days;  // may be empty when detail storage is off
    double final_peak = 0.0;   // [kWh/h]
    double energy_cost = 0.0;  // sum of import minus export [EUR]
    double tariff_cost = 0.0;  // peak_tariff * final_peak [EUR]
    double total_cost = 0.0;   // [EUR]
};

/// Perfect-information benchmark: the whole month as one linear program over a
/// realized path. The one-time tariff is linear in the shared peak variable,
/// so no interpolation machinery is involved.
///
/// pin_daily = true  : storage values pinned to InitialConditions at every
///                     24-hour boundary (case Hol_init).
/// pin_daily = false : dynamics chain across day boundaries; only hour 0 and
///                     the final hour of the last day are pinned (case Hol).
SimulationRecord solve_holistic(const BuildingConfig& cfg, const ScenarioSet& set,
                                const ScenarioPath& path, bool pin_daily,
                                const lp::SolverOptions& opts = {});

}  // namespace peakval
