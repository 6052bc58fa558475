#pragma once

#include <string>
#include <vector>

#include "peakval/curve.hpp"
#include "peakval/lp.hpp"
#include "peakval/model.hpp"

namespace peakval {

/// One realized day: the six hourly stochastic series.
struct DayScenario {
    std::vector<double> spot;   // [EUR/kWh]
    std::vector<double> load;   // non-shiftable demand [kWh]
    std::vector<int> ev_avail;  // {0,1}
    std::vector<double> pv;     // AC-side production [kWh] (inverter already applied)
    std::vector<double> pv_dc;  // raw DC production as stored on disk
    std::vector<int> occupancy;  // {0,1}
    std::vector<double> t_out;  // [degC]
};

std::vector<std::string> validate_scenario(const DayScenario& sc);

/// Carried-over state: the peak achieved so far this month.
struct DayState {
    double p0 = 0.0;  // [kWh/h]
};

enum class PolicyVariant { sdp, no_peak, min_peak };

/// Base indices of each hourly variable family; the hour-t variable is base + t.
struct DayLayout {
    int y_imp = -1, y_exp = -1, y_ev_ch = -1, y_b_ch = -1, y_b_dch = -1, q_sh = -1;
    int soc_ev = -1, soc_b = -1, t_in = -1, t_e = -1;
    int peak = -1;    // shared peak variable, if any
    int gamma = -1;   // first interpolation weight, if any
    int n_gamma = 0;
};

struct DaySolution {
    std::vector<double> y_imp, y_exp, y_ev_ch, y_b_ch, y_b_dch, q_sh;
    std::vector<double> soc_ev, soc_b, t_in, t_e;
    double peak = 0.0;         // max(p0, hourly imports) after post-processing
    double cost_import = 0.0;  // [EUR]
    double cost_export = 0.0;  // [EUR]
    double cost_future = 0.0;  // [EUR]
    double objective = 0.0;    // cost_import - cost_export + cost_future
};

/// Controls for appending one day's variables and constraints to a model.
/// The same generator backs the day problems, the holistic month problem, and
/// scenario-tree benchmarks.
struct DayBlockOptions {
    const DayLayout* chain_from = nullptr;  // anchor recursions on the previous day's hour 24
    double t_out_prev0 = 0.0;               // outdoor temperature feeding the hour-1 recursion
    bool t_out_prev0_set = false;           // when false, the day's first hour is used
    bool pin_end = true;                    // pin hour-24 storage values to InitialConditions
    int peak_var = -1;                      // when >= 0, add rows peak >= y_imp[t]
    double obj_scale = 1.0;                 // weight on this day's import/export cost
};

DayLayout append_day_block(lp::LpModel& m, const BuildingConfig& cfg, const DayScenario& sc,
                           const DayBlockOptions& opts);

struct DayProblem {
    lp::LpModel model;
    std::vector<lp::Sos2Set> sos;
    DayLayout layout;
};

/// Static infeasibilities detectable before any solve (reachability of SoC and
/// temperature bands under the day's availability/occupancy pattern).
std::vector<std::string> day_feasibility_issues(const BuildingConfig& cfg, const DayScenario& sc);

/// Encodes the one-day decision problem. curve must be present exactly when
/// variant is sdp. Throws InfeasibleError when the day is structurally infeasible.
DayProblem build_day_problem(const BuildingConfig& cfg, const DayScenario& sc, const DayState& st,
                             const CostCurve* curve, PolicyVariant variant);

DaySolution solve_day(const BuildingConfig& cfg, const DayScenario& sc, const DayState& st,
                      const CostCurve* curve, PolicyVariant variant,
                      const lp::SolverOptions& opts = {});

}  // namespace peakval
