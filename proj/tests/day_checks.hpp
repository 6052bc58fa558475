#pragma once

// doctest assertions applied to every optimal day schedule in the unit tests.

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "peakval/dayopt.hpp"

namespace helpers {

inline void check_day_solution(const peakval::BuildingConfig& cfg,
                               const peakval::DayScenario& sc, const peakval::DaySolution& sol) {
    for (int t = 0; t < 24; ++t) {
        const double residual = sol.y_imp[t] - sol.y_exp[t] + sc.pv[t] + sol.y_b_dch[t] -
                                (sc.load[t] + sol.y_ev_ch[t] + sol.q_sh[t] + sol.y_b_ch[t]);
        CHECK(std::fabs(residual) <= 1e-7);
        if (sc.spot[t] >= 0.0) CHECK(std::min(sol.y_imp[t], sol.y_exp[t]) <= 1e-7);
        if (sc.spot[t] > 0.0 && cfg.battery.eta_ch < 1.0 && cfg.battery.eta_dch < 1.0)
            CHECK(std::min(sol.y_b_ch[t], sol.y_b_dch[t]) <= 1e-7);
    }
    const double recomputed = sol.cost_import - sol.cost_export + sol.cost_future;
    CHECK(std::fabs(sol.objective - recomputed) <= 1e-6);
    double max_imp = 0.0;
    for (double v : sol.y_imp) max_imp = std::max(max_imp, v);
    CHECK(sol.peak >= max_imp - 1e-9);
}

}  // namespace helpers
