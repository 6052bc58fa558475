#include "peakval/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace peakval {

using nlohmann::json;

double PeakGrid::spacing_max() const {
    double w = 0.0;
    for (size_t i = 1; i < points.size(); ++i) w = std::max(w, points[i] - points[i - 1]);
    return w;
}

PeakGrid uniform_peak_grid(int n_points, double p_max) {
    if (n_points < 2) throw ValidationError("peak grid needs at least 2 points");
    PeakGrid g;
    g.points.resize(n_points);
    for (int i = 0; i < n_points; ++i)
        g.points[i] = p_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
    g.points.front() = 0.0;
    g.points.back() = p_max;
    return g;
}

namespace {

bool finite(double v) { return std::isfinite(v); }

void check_positive(std::vector<std::string>& out, double v, const char* what) {
    if (!finite(v) || v <= 0.0) out.push_back(std::string(what) + " must be > 0");
}

void check_nonneg(std::vector<std::string>& out, double v, const char* what) {
    if (!finite(v) || v < 0.0) out.push_back(std::string(what) + " must be >= 0");
}

}  // namespace

std::vector<std::string> validate_config(const BuildingConfig& cfg, const PeakGrid& grid) {
    std::vector<std::string> out;

    const ThermalParams& th = cfg.thermal;
    check_positive(out, th.r_ie, "r_ie");
    check_positive(out, th.r_eo, "r_eo");
    check_positive(out, th.c_i, "c_i");
    check_positive(out, th.c_e, "c_e");
    check_nonneg(out, th.q_sh_max, "q_sh_max");
    if (th.t_in_occupied.min > th.t_in_occupied.max)
        out.push_back("occupied temperature band is empty");
    if (th.t_in_away.min > th.t_in_away.max) out.push_back("away temperature band is empty");
    if (th.t_in_occupied.min < th.t_in_away.min || th.t_in_occupied.max > th.t_in_away.max)
        out.push_back("occupied band must be nested inside away band");

    const EvParams& ev = cfg.ev;
    check_positive(out, ev.capacity, "ev capacity");
    if (!finite(ev.eta_ch) || ev.eta_ch <= 0.0 || ev.eta_ch > 1.0)
        out.push_back("eta_ch must be in (0,1]");
    check_nonneg(out, ev.p_ch_max, "ev p_ch_max");
    if (!(0.0 <= ev.soc_connected.min && ev.soc_connected.min <= ev.soc_min_departure &&
          ev.soc_min_departure <= ev.soc_connected.max && ev.soc_connected.max <= ev.capacity))
        out.push_back("ev soc bounds must satisfy 0 <= min <= departure <= max <= capacity");
    check_nonneg(out, ev.d_away, "ev d_away");

    const BatteryParams& b = cfg.battery;
    check_positive(out, b.capacity, "battery capacity");
    if (!finite(b.eta_ch) || b.eta_ch <= 0.0 || b.eta_ch > 1.0)
        out.push_back("battery eta_ch must be in (0,1]");
    if (!finite(b.eta_dch) || b.eta_dch <= 0.0 || b.eta_dch > 1.0)
        out.push_back("battery eta_dch must be in (0,1]");
    check_nonneg(out, b.p_ch_max, "battery p_ch_max");
    check_nonneg(out, b.p_dch_max, "battery p_dch_max");
    if (!(0.0 <= b.soc.min && b.soc.min < b.soc.max && b.soc.max <= b.capacity))
        out.push_back("battery soc bounds must satisfy 0 <= min < max <= capacity");

    const GridParams& g = cfg.grid;
    check_nonneg(out, g.c_grid, "c_grid");
    check_nonneg(out, g.vat, "vat");
    check_nonneg(out, g.peak_tariff, "peak_tariff");
    if (!finite(g.p_imp_max) || g.p_imp_max <= 0.0) out.push_back("p_imp_max must be > 0");
    check_nonneg(out, g.p_exp_max, "p_exp_max");

    const InitialConditions& ic = cfg.init;
    if (!th.t_in_occupied.contains(ic.t_in0)) out.push_back("t_in0 outside occupied band");
    if (!finite(ic.t_e0)) out.push_back("t_e0 must be finite");
    if (!ev.soc_connected.contains(ic.soc_ev0)) out.push_back("soc_ev0 outside ev soc band");
    if (!b.soc.contains(ic.soc_b0)) out.push_back("soc_b0 outside battery soc band");

    if (!(cfg.pv_inverter_eff > 0.0 && cfg.pv_inverter_eff <= 1.0))
        out.push_back("pv_inverter_eff must be in (0,1]");
    if (cfg.horizon_days < 1) out.push_back("horizon_days must be >= 1");
    if (cfg.hours_per_day != kHoursPerDay) out.push_back("hours_per_day must be 24");

    if (grid.size() < 2) out.push_back("peak grid needs at least 2 points");
    if (grid.size() >= 1 && grid.points.front() != 0.0) out.push_back("peak grid must start at 0");
    for (int i = 1; i < grid.size(); ++i)
        if (!(grid.points[i] > grid.points[i - 1])) {
            out.push_back("peak grid must be strictly increasing");
            break;
        }
    if (grid.size() >= 2 && std::abs(grid.points.back() - g.p_imp_max) > 1e-12)
        out.push_back("peak grid must end at p_imp_max");

    return out;
}

void validate_config_or_throw(const BuildingConfig& cfg, const PeakGrid& grid) {
    auto issues = validate_config(cfg, grid);
    if (issues.empty()) return;
    std::ostringstream oss;
    oss << "invalid config:";
    for (const auto& s : issues) oss << "\n  - " << s;
    throw ValidationError(oss.str(), issues);
}

BuildingConfig default_config() { return BuildingConfig{}; }

double percent_to_kwh(double percent, double capacity) { return percent * capacity / 100.0; }

double kwh_to_percent(double kwh, double capacity) { return kwh * 100.0 / capacity; }

ThermalState thermal_step(const ThermalParams& p, ThermalState s, double q_sh, double t_out) {
    const double a_in = 1.0 / (p.r_ie * p.c_i);
    const double a_env = 1.0 / (p.r_ie * p.c_e);
    const double c_out = p.outdoor_term_uses_interior_capacity ? p.c_i : p.c_e;
    const double a_out = 1.0 / (p.r_eo * c_out);
    ThermalState next;
    next.t_in = s.t_in + a_in * (s.t_e - s.t_in) + q_sh / p.c_i;
    next.t_e = s.t_e + a_env * (s.t_in - s.t_e) + a_out * (t_out - s.t_e);
    return next;
}

namespace {

// SoC-style fields accept either a plain kWh number or {"unit":"percent", ...}.
double soc_value(const json& node, double capacity, const char* key) {
    const json& v = node.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_object()) {
        if (v.value("unit", "kwh") == "percent") return percent_to_kwh(v.at("value").get<double>(), capacity);
        return v.at("value").get<double>();
    }
    throw IoError(std::string("config: bad value for ") + key);
}

Band soc_band(const json& node, double capacity, const char* key) {
    const json& v = node.at(key);
    Band b;
    if (v.value("unit", "kwh") == "percent") {
        b.min = percent_to_kwh(v.at("min").get<double>(), capacity);
        b.max = percent_to_kwh(v.at("max").get<double>(), capacity);
    } else {
        b.min = v.at("min").get<double>();
        b.max = v.at("max").get<double>();
    }
    return b;
}

Band temp_band(const json& v) { return Band{v.at("min").get<double>(), v.at("max").get<double>()}; }

}  // namespace

BuildingConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("cannot parse config file " + path + ": " + e.what());
    }

    BuildingConfig cfg;
    try {
        const json& th = j.at("thermal");
        cfg.thermal.r_ie = th.at("r_ie").get<double>();
        cfg.thermal.r_eo = th.at("r_eo").get<double>();
        cfg.thermal.c_i = th.at("c_i").get<double>();
        cfg.thermal.c_e = th.at("c_e").get<double>();
        cfg.thermal.q_sh_max = th.at("q_sh_max").get<double>();
        cfg.thermal.t_in_occupied = temp_band(th.at("t_in_occupied"));
        cfg.thermal.t_in_away = temp_band(th.at("t_in_away"));
        if (th.contains("outdoor_term_capacity"))
            cfg.thermal.outdoor_term_uses_interior_capacity =
                th.at("outdoor_term_capacity").get<std::string>() == "interior";

        const json& ev = j.at("ev");
        cfg.ev.capacity = ev.at("capacity").get<double>();
        cfg.ev.eta_ch = ev.at("eta_ch").get<double>();
        cfg.ev.p_ch_max = ev.at("p_ch_max").get<double>();
        cfg.ev.soc_connected = soc_band(ev, cfg.ev.capacity, "soc_connected");
        cfg.ev.soc_min_departure = soc_value(ev, cfg.ev.capacity, "soc_min_departure");
        cfg.ev.d_away = ev.at("d_away").get<double>();

        const json& b = j.at("battery");
        cfg.battery.capacity = b.at("capacity").get<double>();
        cfg.battery.eta_ch = b.at("eta_ch").get<double>();
        cfg.battery.eta_dch = b.at("eta_dch").get<double>();
        cfg.battery.p_ch_max = b.at("p_ch_max").get<double>();
        cfg.battery.p_dch_max = b.at("p_dch_max").get<double>();
        cfg.battery.soc = soc_band(b, cfg.battery.capacity, "soc");

        const json& g = j.at("grid");
        cfg.grid.c_grid = g.at("c_grid").get<double>();
        cfg.grid.vat = g.at("vat").get<double>();
        cfg.grid.peak_tariff = g.at("peak_tariff").get<double>();
        cfg.grid.p_imp_max = g.at("p_imp_max").get<double>();
        cfg.grid.p_exp_max = g.value("p_exp_max", g.at("p_imp_max").get<double>());

        const json& ic = j.at("init");
        cfg.init.t_in0 = ic.at("t_in0").get<double>();
        cfg.init.t_e0 = ic.at("t_e0").get<double>();
        cfg.init.soc_ev0 = soc_value(ic, cfg.ev.capacity, "soc_ev0");
        cfg.init.soc_b0 = soc_value(ic, cfg.battery.capacity, "soc_b0");

        cfg.pv_inverter_eff = j.at("pv_inverter_eff").get<double>();
        cfg.horizon_days = j.at("horizon_days").get<int>();
        cfg.hours_per_day = j.value("hours_per_day", kHoursPerDay);
    } catch (const json::exception& e) {
        throw IoError("config schema error in " + path + ": " + e.what());
    }
    return cfg;
}

void save_config(const BuildingConfig& cfg, const std::string& path) {
    json j;
    j["thermal"] = {
        {"r_ie", cfg.thermal.r_ie},
        {"r_eo", cfg.thermal.r_eo},
        {"c_i", cfg.thermal.c_i},
        {"c_e", cfg.thermal.c_e},
        {"q_sh_max", cfg.thermal.q_sh_max},
        {"t_in_occupied", {{"min", cfg.thermal.t_in_occupied.min}, {"max", cfg.thermal.t_in_occupied.max}}},
        {"t_in_away", {{"min", cfg.thermal.t_in_away.min}, {"max", cfg.thermal.t_in_away.max}}},
        {"outdoor_term_capacity", cfg.thermal.outdoor_term_uses_interior_capacity ? "interior" : "envelope"},
    };
    j["ev"] = {
        {"capacity", cfg.ev.capacity},
        {"eta_ch", cfg.ev.eta_ch},
        {"p_ch_max", cfg.ev.p_ch_max},
        {"soc_connected", {{"min", cfg.ev.soc_connected.min}, {"max", cfg.ev.soc_connected.max}}},
        {"soc_min_departure", cfg.ev.soc_min_departure},
        {"d_away", cfg.ev.d_away},
    };
    j["battery"] = {
        {"capacity", cfg.battery.capacity},
        {"eta_ch", cfg.battery.eta_ch},
        {"eta_dch", cfg.battery.eta_dch},
        {"p_ch_max", cfg.battery.p_ch_max},
        {"p_dch_max", cfg.battery.p_dch_max},
        {"soc", {{"min", cfg.battery.soc.min}, {"max", cfg.battery.soc.max}}},
    };
    j["grid"] = {
        {"c_grid", cfg.grid.c_grid},     {"vat", cfg.grid.vat},
        {"peak_tariff", cfg.grid.peak_tariff}, {"p_imp_max", cfg.grid.p_imp_max},
        {"p_exp_max", cfg.grid.p_exp_max},
    };
    j["init"] = {
        {"t_in0", cfg.init.t_in0},
        {"t_e0", cfg.init.t_e0},
        {"soc_ev0", cfg.init.soc_ev0},
        {"soc_b0", cfg.init.soc_b0},
    };
    j["pv_inverter_eff"] = cfg.pv_inverter_eff;
    j["horizon_days"] = cfg.horizon_days;
    j["hours_per_day"] = cfg.hours_per_day;

    std::ofstream out(path);
    if (!out) throw IoError("cannot write config file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace peakval
