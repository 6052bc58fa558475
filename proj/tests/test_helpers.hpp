#pragma once

// Shared fixtures for day-problem tests and the acceptance suite: quiet
// scenarios and configs with storage pinned or thermal dynamics neutralized.

#include <algorithm>
#include <cmath>
#include <vector>

#include "peakval/dayopt.hpp"
#include "peakval/model.hpp"

namespace helpers {

using namespace peakval;

// A day with nothing to do: no load, no PV, occupants away, outdoor air at the
// initial temperatures so the building just sits there.
inline DayScenario quiet_day(const BuildingConfig& cfg) {
    DayScenario sc;
    sc.spot.assign(24, 0.05);
    sc.load.assign(24, 0.0);
    sc.pv.assign(24, 0.0);
    sc.pv_dc.assign(24, 0.0);
    sc.ev_avail.assign(24, 1);
    sc.occupancy.assign(24, 0);
    sc.t_out.assign(24, cfg.init.t_in0);
    return sc;
}

// Pins both storages so the balance has no flexibility at all.
inline BuildingConfig pinned_storage_config() {
    BuildingConfig cfg = default_config();
    cfg.ev.soc_connected = {cfg.init.soc_ev0, cfg.init.soc_ev0};
    cfg.ev.soc_min_departure = cfg.init.soc_ev0;
    cfg.battery.soc = {cfg.init.soc_b0 - 1e-9, cfg.init.soc_b0 + 1e-9};
    cfg.battery.p_ch_max = 0.0;
    cfg.battery.p_dch_max = 0.0;
    cfg.ev.p_ch_max = 0.0;
    return cfg;
}

// Makes the thermal block inert: wide away band, building at equilibrium.
// quiet_day() then sets t_out to the same temperature, so with q_sh = 0 every
// temperature stays put and both end-of-day pins hold for free.
inline void neutralize_thermal(BuildingConfig& cfg) {
    cfg.init.t_e0 = cfg.init.t_in0;
    cfg.thermal.t_in_away = {cfg.init.t_in0 - 30.0, cfg.init.t_in0 + 30.0};
    cfg.thermal.t_in_occupied = {cfg.init.t_in0 - 10.0, cfg.init.t_in0 + 10.0};
}

}  // namespace helpers
