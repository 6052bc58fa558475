#pragma once

#include <string>
#include <vector>

#include "peakval/errors.hpp"

namespace peakval {

inline constexpr int kHoursPerDay = 24;

/// Closed interval [min, max].
struct Band {
    double min = 0.0;
    double max = 0.0;

    bool contains(double v, double tol = 0.0) const { return v >= min - tol && v <= max + tol; }
    double width() const { return max - min; }
};

/// 2R2C thermal network: interior node, envelope node, outdoor boundary.
struct ThermalParams {
    double r_ie = 1.2;    // interior <-> envelope resistance [degC/kWh]
    double r_eo = 16.0;   // envelope <-> outdoor resistance [degC/kWh]
    double c_i = 1.5;     // interior heat capacity [kWh/degC]
    double c_e = 8.0;     // envelope heat capacity [kWh/degC]
    double q_sh_max = 3.0;  // radiator rating [kWh/h]
    Band t_in_occupied{20.5, 24.0};
    Band t_in_away{19.0, 26.0};
    // The envelope-outdoor exchange term is scaled by the envelope capacity.
    // Setting this divides it by the interior capacity instead.
    bool outdoor_term_uses_interior_capacity = false;
};

struct EvParams {
    double capacity = 24.0;   // [kWh]
    double eta_ch = 0.95;     // charging efficiency
    double p_ch_max = 3.7;    // charger rating [kWh/h]
    Band soc_connected{4.8, 21.6};   // [kWh]
    double soc_min_departure = 14.4;  // [kWh]
    double d_away = 1.0;      // discharge per absent hour [kWh]
};

struct BatteryParams {
    double capacity = 5.0;   // [kWh]
    double eta_ch = 0.96;
    double eta_dch = 0.96;
    double p_ch_max = 2.5;   // [kWh/h]
    double p_dch_max = 2.5;  // [kWh/h]
    Band soc{0.5, 5.0};      // [kWh]
};

struct GridParams {
    double c_grid = 0.00625;   // volumetric fee, pre-VAT [EUR/kWh]
    double vat = 0.25;
    double peak_tariff = 7.2075;  // measured-peak price, VAT inclusive [EUR/(kWh/h)]
    double p_imp_max = 10.0;   // import cap [kWh/h]
    double p_exp_max = 10.0;   // export cap [kWh/h]
};

struct InitialConditions {
    double t_in0 = 22.0;   // [degC]
    double t_e0 = 20.0;    // [degC]
    double soc_ev0 = 14.4;  // [kWh]
    double soc_b0 = 2.5;   // [kWh]
};

struct BuildingConfig {
    ThermalParams thermal;
    EvParams ev;
    BatteryParams battery;
    GridParams grid;
    InitialConditions init;
    double pv_inverter_eff = 0.95;
    int horizon_days = 31;
    int hours_per_day = kHoursPerDay;
};

/// Discretization of the achieved peak; strictly increasing from 0 to the import cap.
struct PeakGrid {
    std::vector<double> points;

    int size() const { return static_cast<int>(points.size()); }
    double spacing_max() const;
};

PeakGrid uniform_peak_grid(int n_points, double p_max);

/// Returns one entry per violated invariant; empty means the pair is consistent.
std::vector<std::string> validate_config(const BuildingConfig& cfg, const PeakGrid& grid);

/// Throws ValidationError listing every violation.
void validate_config_or_throw(const BuildingConfig& cfg, const PeakGrid& grid);

/// Case-study defaults (3 kW radiator, 24 kWh EV / 3.7 kW charger, 5 kWh / 2.5 kW battery,
/// 0.00625 volumetric fee, 7.2075 peak tariff, 25 % VAT).
BuildingConfig default_config();

BuildingConfig load_config(const std::string& path);
void save_config(const BuildingConfig& cfg, const std::string& path);

/// Exact percent <-> kWh conversion (multiply before divide).
double percent_to_kwh(double percent, double capacity);
double kwh_to_percent(double kwh, double capacity);

struct ThermalState {
    double t_in = 0.0;
    double t_e = 0.0;
};

/// One-hour step of the 2R2C recursion with heat input q_sh and outdoor temperature t_out.
ThermalState thermal_step(const ThermalParams& p, ThermalState s, double q_sh, double t_out);

}  // namespace peakval
