#include "peakval/dayopt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace peakval {

namespace {

constexpr int T = kHoursPerDay;

bool is_binary(const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0 || x == 1; });
}

// Departure hour: the EV is present now and absent the next hour of the same
// day. Day problems are decoupled, so hour 24 never counts as a departure.
bool is_departure_hour(const DayScenario& sc, int t) {
    return t + 1 < T && sc.ev_avail[t] == 1 && sc.ev_avail[t + 1] == 0;
}

struct Interval {
    double lo, hi;
    bool empty(double tol = 1e-9) const { return lo > hi + tol; }
};

Interval scale(double c, Interval v) {
    return c >= 0.0 ? Interval{c * v.lo, c * v.hi} : Interval{c * v.hi, c * v.lo};
}

}  // namespace

std::vector<std::string> validate_scenario(const DayScenario& sc) {
    std::vector<std::string> out;
    auto need24 = [&](size_t n, const char* name) {
        if (n != static_cast<size_t>(T))
            out.push_back(std::string(name) + " must have 24 entries");
    };
    need24(sc.spot.size(), "spot");
    need24(sc.load.size(), "load");
    need24(sc.ev_avail.size(), "ev_avail");
    need24(sc.pv.size(), "pv");
    need24(sc.occupancy.size(), "occupancy");
    need24(sc.t_out.size(), "t_out");
    if (!out.empty()) return out;
    for (double v : sc.load)
        if (!(v >= 0.0)) {
            out.push_back("load must be >= 0");
            break;
        }
    for (double v : sc.pv)
        if (!(v >= 0.0)) {
            out.push_back("pv must be >= 0");
            break;
        }
    if (!is_binary(sc.ev_avail)) out.push_back("ev_avail must be 0/1");
    if (!is_binary(sc.occupancy)) out.push_back("occupancy must be 0/1");
    for (double v : sc.spot)
        if (!std::isfinite(v)) {
            out.push_back("spot must be finite");
            break;
        }
    for (double v : sc.t_out)
        if (!std::isfinite(v)) {
            out.push_back("t_out must be finite");
            break;
        }
    return out;
}

DayLayout append_day_block(lp::LpModel& m, const BuildingConfig& cfg, const DayScenario& sc,
                           const DayBlockOptions& opts) {
    using lp::Sense;
    const ThermalParams& th = cfg.thermal;
    const double a_in = 1.0 / (th.r_ie * th.c_i);
    const double a_env = 1.0 / (th.r_ie * th.c_e);
    const double a_out =
        1.0 / (th.r_eo * (th.outdoor_term_uses_interior_capacity ? th.c_i : th.c_e));
    const double imp_rate = (1.0 + cfg.grid.vat) * opts.obj_scale;

    DayLayout lay;
    lay.peak = opts.peak_var;

    lay.y_imp = m.num_vars();
    for (int t = 0; t < T; ++t)
        m.add_var(0.0, cfg.grid.p_imp_max, (cfg.grid.c_grid + sc.spot[t]) * imp_rate);
    lay.y_exp = m.num_vars();
    for (int t = 0; t < T; ++t) m.add_var(0.0, cfg.grid.p_exp_max, -sc.spot[t] * opts.obj_scale);
    lay.y_ev_ch = m.num_vars();
    for (int t = 0; t < T; ++t) m.add_var(0.0, sc.ev_avail[t] ? cfg.ev.p_ch_max : 0.0, 0.0);
    lay.y_b_ch = m.num_vars();
    for (int t = 0; t < T; ++t) m.add_var(0.0, cfg.battery.p_ch_max, 0.0);
    lay.y_b_dch = m.num_vars();
    for (int t = 0; t < T; ++t) m.add_var(0.0, cfg.battery.p_dch_max, 0.0);
    lay.q_sh = m.num_vars();
    for (int t = 0; t < T; ++t) m.add_var(0.0, th.q_sh_max, 0.0);

    lay.soc_ev = m.num_vars();
    for (int t = 0; t < T; ++t) {
        if (opts.pin_end && t == T - 1) {
            m.add_var(cfg.init.soc_ev0, cfg.init.soc_ev0, 0.0);
        } else {
            const double lb =
                is_departure_hour(sc, t) ? cfg.ev.soc_min_departure : cfg.ev.soc_connected.min;
            m.add_var(lb, cfg.ev.soc_connected.max, 0.0);
        }
    }
    lay.soc_b = m.num_vars();
    for (int t = 0; t < T; ++t) {
        if (opts.pin_end && t == T - 1)
            m.add_var(cfg.init.soc_b0, cfg.init.soc_b0, 0.0);
        else
            m.add_var(cfg.battery.soc.min, cfg.battery.soc.max, 0.0);
    }
    lay.t_in = m.num_vars();
    for (int t = 0; t < T; ++t) {
        if (opts.pin_end && t == T - 1) {
            m.add_var(cfg.init.t_in0, cfg.init.t_in0, 0.0);
        } else {
            const Band& band = sc.occupancy[t] ? th.t_in_occupied : th.t_in_away;
            m.add_var(band.min, band.max, 0.0);
        }
    }
    lay.t_e = m.num_vars();
    for (int t = 0; t < T; ++t) {
        if (opts.pin_end && t == T - 1)
            m.add_var(cfg.init.t_e0, cfg.init.t_e0, 0.0);
        else
            m.add_var(-60.0, 100.0, 0.0);
    }

    for (int t = 0; t < T; ++t) {
        m.add_row(Sense::eq, sc.load[t] - sc.pv[t],
                  {{lay.y_imp + t, 1.0},
                   {lay.y_exp + t, -1.0},
                   {lay.y_b_dch + t, 1.0},
                   {lay.y_ev_ch + t, -1.0},
                   {lay.y_b_ch + t, -1.0},
                   {lay.q_sh + t, -1.0}});
    }

    if (opts.peak_var >= 0)
        for (int t = 0; t < T; ++t)
            m.add_row(Sense::ge, 0.0, {{opts.peak_var, 1.0}, {lay.y_imp + t, -1.0}});

    const bool chained = opts.chain_from != nullptr;
    const DayLayout* prev = opts.chain_from;

    for (int t = 0; t < T; ++t) {
        double rhs = -cfg.ev.d_away * (1 - sc.ev_avail[t]);
        std::vector<std::pair<int, double>> row{{lay.soc_ev + t, 1.0}};
        if (sc.ev_avail[t]) row.push_back({lay.y_ev_ch + t, -cfg.ev.eta_ch});
        if (t > 0)
            row.push_back({lay.soc_ev + t - 1, -1.0});
        else if (chained)
            row.push_back({prev->soc_ev + T - 1, -1.0});
        else
            rhs += cfg.init.soc_ev0;
        m.add_row(Sense::eq, rhs, std::move(row));
    }

    for (int t = 0; t < T; ++t) {
        double rhs = 0.0;
        std::vector<std::pair<int, double>> row{{lay.soc_b + t, 1.0},
                                                {lay.y_b_ch + t, -cfg.battery.eta_ch},
                                                {lay.y_b_dch + t, 1.0 / cfg.battery.eta_dch}};
        if (t > 0)
            row.push_back({lay.soc_b + t - 1, -1.0});
        else if (chained)
            row.push_back({prev->soc_b + T - 1, -1.0});
        else
            rhs += cfg.init.soc_b0;
        m.add_row(Sense::eq, rhs, std::move(row));
    }

    for (int t = 0; t < T; ++t) {
        double rhs = 0.0;
        std::vector<std::pair<int, double>> row{{lay.t_in + t, 1.0}, {lay.q_sh + t, -1.0 / th.c_i}};
        if (t > 0) {
            row.push_back({lay.t_in + t - 1, -(1.0 - a_in)});
            row.push_back({lay.t_e + t - 1, -a_in});
        } else if (chained) {
            row.push_back({prev->t_in + T - 1, -(1.0 - a_in)});
            row.push_back({prev->t_e + T - 1, -a_in});
        } else {
            rhs += (1.0 - a_in) * cfg.init.t_in0 + a_in * cfg.init.t_e0;
        }
        m.add_row(Sense::eq, rhs, std::move(row));
    }

    for (int t = 0; t < T; ++t) {
        const double t_out_prev =
            t > 0 ? sc.t_out[t - 1] : (opts.t_out_prev0_set ? opts.t_out_prev0 : sc.t_out[0]);
        double rhs = a_out * t_out_prev;
        std::vector<std::pair<int, double>> row{{lay.t_e + t, 1.0}};
        if (t > 0) {
            row.push_back({lay.t_in + t - 1, -a_env});
            row.push_back({lay.t_e + t - 1, -(1.0 - a_env - a_out)});
        } else if (chained) {
            row.push_back({prev->t_in + T - 1, -a_env});
            row.push_back({prev->t_e + T - 1, -(1.0 - a_env - a_out)});
        } else {
            rhs += a_env * cfg.init.t_in0 + (1.0 - a_env - a_out) * cfg.init.t_e0;
        }
        m.add_row(Sense::eq, rhs, std::move(row));
    }

    return lay;
}

std::vector<std::string> day_feasibility_issues(const BuildingConfig& cfg, const DayScenario& sc) {
    std::vector<std::string> out;

    // EV: forward-reachable SoC window under the availability pattern. The
    // reachable set is an exact interval, so an empty window is a certificate.
    {
        Interval w{cfg.init.soc_ev0, cfg.init.soc_ev0};
        for (int t = 0; t < T; ++t) {
            if (sc.ev_avail[t]) {
                w.hi += cfg.ev.eta_ch * cfg.ev.p_ch_max;
            } else {
                w.lo -= cfg.ev.d_away;
                w.hi -= cfg.ev.d_away;
            }
            const bool dep = is_departure_hour(sc, t);
            double band_lo = dep ? cfg.ev.soc_min_departure : cfg.ev.soc_connected.min;
            double band_hi = cfg.ev.soc_connected.max;
            if (t == T - 1) {
                band_lo = std::max(band_lo, cfg.init.soc_ev0);
                band_hi = std::min(band_hi, cfg.init.soc_ev0);
            }
            w.lo = std::max(w.lo, band_lo);
            w.hi = std::min(w.hi, band_hi);
            if (w.empty()) {
                if (t == T - 1)
                    out.push_back("ev end-of-day soc pin unreachable");
                else if (dep)
                    out.push_back("ev departure soc unreachable at hour " + std::to_string(t + 1));
                else
                    out.push_back("ev soc band unreachable at hour " + std::to_string(t + 1));
                break;
            }
        }
    }

    // Thermal: box propagation of (t_in, t_e) with the heater free in [0, q_max].
    // The box over-approximates the reachable set, so emptiness is a certificate.
    {
        const ThermalParams& th = cfg.thermal;
        const double a_in = 1.0 / (th.r_ie * th.c_i);
        const double a_env = 1.0 / (th.r_ie * th.c_e);
        const double a_out =
            1.0 / (th.r_eo * (th.outdoor_term_uses_interior_capacity ? th.c_i : th.c_e));
        Interval in{cfg.init.t_in0, cfg.init.t_in0};
        Interval env{cfg.init.t_e0, cfg.init.t_e0};
        for (int t = 0; t < T; ++t) {
            const double t_out_prev = t > 0 ? sc.t_out[t - 1] : sc.t_out[0];
            Interval in_next = scale(1.0 - a_in, in);
            Interval tmp = scale(a_in, env);
            in_next.lo += tmp.lo;
            in_next.hi += tmp.hi + th.q_sh_max / th.c_i;
            Interval env_next = scale(a_env, in);
            tmp = scale(1.0 - a_env - a_out, env);
            env_next.lo += tmp.lo + a_out * t_out_prev;
            env_next.hi += tmp.hi + a_out * t_out_prev;
            const Band& band = sc.occupancy[t] ? th.t_in_occupied : th.t_in_away;
            double lo = band.min, hi = band.max;
            if (t == T - 1) {
                lo = std::max(lo, cfg.init.t_in0);
                hi = std::min(hi, cfg.init.t_in0);
                env_next.lo = std::max(env_next.lo, cfg.init.t_e0);
                env_next.hi = std::min(env_next.hi, cfg.init.t_e0);
            }
            in_next.lo = std::max(in_next.lo, lo);
            in_next.hi = std::min(in_next.hi, hi);
            if (in_next.empty(1e-7) || env_next.empty(1e-7)) {
                if (t == T - 1)
                    out.push_back("thermal end-of-day pin unreachable");
                else
                    out.push_back("interior temperature band unreachable at hour " +
                                  std::to_string(t + 1));
                break;
            }
            in = in_next;
            env = env_next;
        }
    }

    return out;
}

namespace {

void check_day_inputs(const BuildingConfig& cfg, const DayScenario& sc, const DayState& st,
                      const CostCurve* curve, PolicyVariant variant) {
    auto issues = validate_scenario(sc);
    if (!issues.empty()) {
        std::ostringstream oss;
        oss << "invalid day scenario:";
        for (const auto& s : issues) oss << "\n  - " << s;
        throw ValidationError(oss.str(), issues);
    }
    if (!(st.p0 >= 0.0 && st.p0 <= cfg.grid.p_imp_max))
        throw std::invalid_argument("day state: p0 outside [0, p_imp_max]");
    if (variant == PolicyVariant::sdp && curve == nullptr)
        throw std::invalid_argument("missing curve under SDP variant");
    if (variant != PolicyVariant::sdp && curve != nullptr)
        throw std::invalid_argument("curve supplied for non-SDP variant");
    if (curve && static_cast<int>(curve->values.size()) != curve->grid.size())
        throw std::invalid_argument("curve values/grid length mismatch");
}

}  // namespace

DayProblem build_day_problem(const BuildingConfig& cfg, const DayScenario& sc, const DayState& st,
                             const CostCurve* curve, PolicyVariant variant) {
    check_day_inputs(cfg, sc, st, curve, variant);
    auto issues = day_feasibility_issues(cfg, sc);
    if (!issues.empty()) {
        std::ostringstream oss;
        oss << "day problem infeasible at build:";
        for (const auto& s : issues) oss << "\n  - " << s;
        throw InfeasibleError(oss.str());
    }

    DayProblem p;
    DayBlockOptions opts;
    if (variant != PolicyVariant::no_peak)
        opts.peak_var = p.model.add_var(st.p0, cfg.grid.p_imp_max, 0.0, "peak");
    p.layout = append_day_block(p.model, cfg, sc, opts);

    if (variant == PolicyVariant::sdp) {
        const int n = curve->grid.size();
        p.layout.gamma = p.model.num_vars();
        p.layout.n_gamma = n;
        lp::Sos2Set sos;
        std::vector<std::pair<int, double>> sum1, pos{{p.layout.peak, -1.0}};
        for (int i = 0; i < n; ++i) {
            const int g = p.model.add_var(0.0, 1.0, curve->values[i]);
            sos.vars.push_back(g);
            sum1.push_back({g, 1.0});
            pos.push_back({g, curve->grid.points[i]});
        }
        p.model.add_row(lp::Sense::eq, 1.0, std::move(sum1), "convexity");
        p.model.add_row(lp::Sense::eq, 0.0, std::move(pos), "interpolation");
        p.sos.push_back(std::move(sos));
    }
    return p;
}

namespace {

DaySolution extract_day_solution(const BuildingConfig& cfg, const DayScenario& sc,
                                 const DayState& st, const CostCurve* curve, const DayLayout& lay,
                                 const std::vector<double>& x) {
    DaySolution out;
    auto grab = [&](int base) {
        std::vector<double> v(T);
        for (int t = 0; t < T; ++t) v[t] = x[base + t];
        return v;
    };
    out.y_imp = grab(lay.y_imp);
    out.y_exp = grab(lay.y_exp);
    out.y_ev_ch = grab(lay.y_ev_ch);
    out.y_b_ch = grab(lay.y_b_ch);
    out.y_b_dch = grab(lay.y_b_dch);
    out.q_sh = grab(lay.q_sh);
    out.soc_ev = grab(lay.soc_ev);
    out.soc_b = grab(lay.soc_b);
    out.t_in = grab(lay.t_in);
    out.t_e = grab(lay.t_e);

    out.peak = st.p0;
    for (int t = 0; t < T; ++t) out.peak = std::max(out.peak, out.y_imp[t]);
    for (int t = 0; t < T; ++t) {
        out.cost_import += out.y_imp[t] * (cfg.grid.c_grid + sc.spot[t]) * (1.0 + cfg.grid.vat);
        out.cost_export += out.y_exp[t] * sc.spot[t];
    }
    out.cost_future = curve ? interpolate(*curve, out.peak) : 0.0;
    out.objective = out.cost_import - out.cost_export + out.cost_future;
    return out;
}

}  // namespace

DaySolution solve_day(const BuildingConfig& cfg, const DayScenario& sc, const DayState& st,
                      const CostCurve* curve, PolicyVariant variant,
                      const lp::SolverOptions& opts) {
    DayProblem p = build_day_problem(cfg, sc, st, curve, variant);

    lp::LpSolution sol;
    switch (variant) {
        case PolicyVariant::sdp:
            // A convex curve makes the interpolation rows exact without the
            // adjacency condition, so branching can be skipped entirely.
            if (lp::is_convex_curve(curve->values, curve->grid))
                sol = lp::solve_lp(p.model, opts);
            else
                sol = lp::solve_sos2(p.model, p.sos, opts);
            break;
        case PolicyVariant::no_peak:
            sol = lp::solve_lp(p.model, opts);
            break;
        case PolicyVariant::min_peak: {
            lp::LpModel phase1 = p.model;
            std::fill(phase1.objective.begin(), phase1.objective.end(), 0.0);
            phase1.objective[p.layout.peak] = 1.0;
            lp::LpSolution first = lp::solve_lp(phase1, opts);
            if (first.status != lp::LpStatus::optimal)
                throw InfeasibleError("min-peak phase 1 infeasible");
            const double p_star = first.x[p.layout.peak];
            p.model.upper[p.layout.peak] = std::min(cfg.grid.p_imp_max, p_star + 1e-6);
            sol = lp::solve_lp(p.model, opts);
            break;
        }
    }

    if (sol.status == lp::LpStatus::infeasible) throw InfeasibleError("day problem infeasible");
    if (sol.status == lp::LpStatus::unbounded)
        throw NumericalError("day problem unbounded; check export pricing");
    return extract_day_solution(cfg, sc, st, curve, p.layout, sol.x);
}

}  // namespace peakval
