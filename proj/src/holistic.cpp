#include "peakval/holistic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace peakval {

namespace {

constexpr int T = kHoursPerDay;

}  // namespace

SimulationRecord solve_holistic(const BuildingConfig& cfg, const ScenarioSet& set,
                                const ScenarioPath& path, bool pin_daily,
                                const lp::SolverOptions& opts) {
    const int G = set.n_days;
    if (static_cast<int>(path.s.size()) != G)
        throw std::invalid_argument("holistic: path length must equal the day count");
    for (int g = 0; g < G; ++g)
        if (path.s[g] < 0 || path.s[g] >= set.n_scenarios)
            throw std::invalid_argument("holistic: path index out of range");

    for (int g = 0; g < G; ++g) {
        auto issues = day_feasibility_issues(cfg, set.at(g, path.s[g]));
        if (pin_daily && !issues.empty()) {
            std::ostringstream oss;
            oss << "holistic month infeasible at day g=" << (g + 1) << ":";
            for (const auto& s : issues) oss << "\n  - " << s;
            throw InfeasibleError(oss.str());
        }
    }

    lp::LpModel m;
    const int peak = m.add_var(0.0, cfg.grid.p_imp_max, cfg.grid.peak_tariff, "peak");

    std::vector<DayLayout> layouts(G);
    for (int g = 0; g < G; ++g) {
        const DayScenario& sc = set.at(g, path.s[g]);
        DayBlockOptions block;
        block.peak_var = peak;
        if (pin_daily) {
            block.pin_end = true;
        } else {
            block.pin_end = g == G - 1;
            if (g > 0) {
                block.chain_from = &layouts[g - 1];
                block.t_out_prev0 = set.at(g - 1, path.s[g - 1]).t_out[T - 1];
                block.t_out_prev0_set = true;
            }
        }
        layouts[g] = append_day_block(m, cfg, sc, block);
    }

    lp::LpSolution sol = lp::solve_lp(m, opts);
    if (sol.status == lp::LpStatus::infeasible) {
        std::ostringstream oss;
        oss << "holistic month infeasible (" << (pin_daily ? "Hol_init" : "Hol")
            << "); binding family is the daily storage/temperature pins";
        throw InfeasibleError(oss.str());
    }
    if (sol.status == lp::LpStatus::unbounded)
        throw NumericalError("holistic month unbounded; check export pricing");

    SimulationRecord rec;
    rec.case_label = pin_daily ? "Hol_init" : "Hol";
    rec.path = path;
    rec.days.resize(G);
    for (int g = 0; g < G; ++g) {
        const DayScenario& sc = set.at(g, path.s[g]);
        const DayLayout& lay = layouts[g];
        DaySolution& day = rec.days[g];
        auto grab = [&](int base) {
            std::vector<double> v(T);
            for (int t = 0; t < T; ++t) v[t] = sol.x[base + t];
            return v;
        };
        day.y_imp = grab(lay.y_imp);
        day.y_exp = grab(lay.y_exp);
        day.y_ev_ch = grab(lay.y_ev_ch);
        day.y_b_ch = grab(lay.y_b_ch);
        day.y_b_dch = grab(lay.y_b_dch);
        day.q_sh = grab(lay.q_sh);
        day.soc_ev = grab(lay.soc_ev);
        day.soc_b = grab(lay.soc_b);
        day.t_in = grab(lay.t_in);
        day.t_e = grab(lay.t_e);
        for (int t = 0; t < T; ++t) {
            day.cost_import += day.y_imp[t] * (cfg.grid.c_grid + sc.spot[t]) * (1.0 + cfg.grid.vat);
            day.cost_export += day.y_exp[t] * sc.spot[t];
            day.peak = std::max(day.peak, day.y_imp[t]);
        }
        day.objective = day.cost_import - day.cost_export;
        rec.energy_cost += day.cost_import - day.cost_export;
        rec.final_peak = std::max(rec.final_peak, day.peak);
    }
    rec.tariff_cost = cfg.grid.peak_tariff * rec.final_peak;
    rec.total_cost = rec.energy_cost + rec.tariff_cost;
    return rec;
}

}  // namespace peakval
