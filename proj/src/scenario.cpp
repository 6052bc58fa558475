#include "peakval/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace peakval {

using nlohmann::json;

namespace {

constexpr int T = kHoursPerDay;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double runif(std::mt19937_64& rng, double lo, double hi) { return lo + uniform01(rng) * (hi - lo); }

int pick_index(const std::vector<double>& probs, double u) {
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
}

}  // namespace

std::vector<std::string> validate_scenario_set(const ScenarioSet& set) {
    std::vector<std::string> out;
    if (set.n_scenarios < 1) out.push_back("scenario set needs N_S >= 1");
    if (set.n_days < 1) out.push_back("scenario set needs G >= 1");
    if (static_cast<int>(set.days.size()) != set.n_days)
        out.push_back("scenario set day count mismatch");
    for (size_t g = 0; g < set.days.size(); ++g) {
        if (static_cast<int>(set.days[g].size()) != set.n_scenarios) {
            out.push_back("day g=" + std::to_string(g + 1) + " has " +
                          std::to_string(set.days[g].size()) + " scenarios, expected " +
                          std::to_string(set.n_scenarios));
            continue;
        }
        for (size_t s = 0; s < set.days[g].size(); ++s)
            for (const auto& issue : validate_scenario(set.days[g][s]))
                out.push_back("day g=" + std::to_string(g + 1) + " s=" + std::to_string(s + 1) +
                              ": " + issue);
    }
    return out;
}

std::vector<std::string> validate_chain(const MarkovChain& chain, int n_days, int n_scenarios) {
    std::vector<std::string> out;
    if (chain.n_scenarios() != n_scenarios)
        out.push_back("initial distribution must have " + std::to_string(n_scenarios) +
                      " entries");
    double total = 0.0;
    for (double p : chain.initial) {
        if (p < 0.0) out.push_back("initial distribution has a negative entry");
        total += p;
    }
    if (std::fabs(total - 1.0) > 1e-9)
        out.push_back("initial distribution sums to " + fmt(total));
    if (static_cast<int>(chain.transitions.size()) != std::max(0, n_days - 1))
        out.push_back("transition matrix count must be G-1 (" +
                      std::to_string(std::max(0, n_days - 1)) + "), got " +
                      std::to_string(chain.transitions.size()));
    for (size_t g = 0; g < chain.transitions.size(); ++g) {
        const auto& mat = chain.transitions[g];
        if (static_cast<int>(mat.size()) != n_scenarios) {
            out.push_back("transition matrix g=" + std::to_string(g + 1) + " has wrong row count");
            continue;
        }
        for (size_t s = 0; s < mat.size(); ++s) {
            if (static_cast<int>(mat[s].size()) != n_scenarios) {
                out.push_back("transition row g=" + std::to_string(g + 1) + " s=" +
                              std::to_string(s + 1) + " has wrong length");
                continue;
            }
            double sum = 0.0;
            bool neg = false;
            for (double p : mat[s]) {
                sum += p;
                neg = neg || p < 0.0;
            }
            if (neg)
                out.push_back("transition row g=" + std::to_string(g + 1) + " s=" +
                              std::to_string(s + 1) + " has a negative entry");
            if (std::fabs(sum - 1.0) > 1e-9)
                out.push_back("transition row g=" + std::to_string(g + 1) + " s=" +
                              std::to_string(s + 1) + " sums to " + fmt(sum));
        }
    }
    return out;
}

namespace {

std::vector<double> parse_series(const json& node, const char* name, std::vector<std::string>& errs,
                                 const std::string& where) {
    std::vector<double> out;
    if (!node.contains(name)) {
        errs.push_back(where + ": missing series " + name);
        return out;
    }
    const json& arr = node.at(name);
    if (!arr.is_array()) {
        errs.push_back(where + ": " + name + " must be an array");
        return out;
    }
    for (const auto& v : arr) {
        if (!v.is_number()) {
            errs.push_back(where + ": " + name + " has a non-numeric entry");
            return out;
        }
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<int> parse_flags(const json& node, const char* name, std::vector<std::string>& errs,
                             const std::string& where) {
    std::vector<int> out;
    for (double v : parse_series(node, name, errs, where)) out.push_back(static_cast<int>(v));
    return out;
}

}  // namespace

std::pair<ScenarioSet, MarkovChain> load_scenarios(const std::string& path,
                                                   double pv_inverter_eff) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenarios file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("cannot parse scenarios file " + path + ": " + e.what());
    }

    std::vector<std::string> errs;
    ScenarioSet set;
    MarkovChain chain;
    try {
        set.n_days = j.at("G").get<int>();
        set.n_scenarios = j.at("N_S").get<int>();
        if (set.n_days < 1 || set.n_scenarios < 1)
            throw ValidationError("scenarios: G and N_S must be >= 1");

        std::vector<std::vector<std::optional<DayScenario>>> cells(
            set.n_days, std::vector<std::optional<DayScenario>>(set.n_scenarios));

        for (const auto& day : j.at("days")) {
            const int g = day.at("g").get<int>();
            if (g < 1 || g > set.n_days) {
                errs.push_back("day index g=" + std::to_string(g) + " out of range");
                continue;
            }
            for (const auto& node : day.at("scenarios")) {
                const int s = node.at("s").get<int>();
                if (s < 1 || s > set.n_scenarios) {
                    errs.push_back("scenario index s=" + std::to_string(s) + " out of range in day g=" +
                                   std::to_string(g));
                    continue;
                }
                const std::string where =
                    "day g=" + std::to_string(g) + " s=" + std::to_string(s);
                DayScenario sc;
                sc.spot = parse_series(node, "spot", errs, where);
                sc.load = parse_series(node, "load", errs, where);
                sc.pv_dc = parse_series(node, "pv_dc", errs, where);
                sc.ev_avail = parse_flags(node, "ev_avail", errs, where);
                sc.occupancy = parse_flags(node, "occupancy", errs, where);
                sc.t_out = parse_series(node, "t_out", errs, where);
                sc.pv.resize(sc.pv_dc.size());
                for (size_t t = 0; t < sc.pv_dc.size(); ++t)
                    sc.pv[t] = sc.pv_dc[t] * pv_inverter_eff;
                cells[g - 1][s - 1] = std::move(sc);
            }
        }

        set.days.resize(set.n_days);
        for (int g = 0; g < set.n_days; ++g) {
            set.days[g].resize(set.n_scenarios);
            for (int s = 0; s < set.n_scenarios; ++s) {
                if (!cells[g][s]) {
                    errs.push_back("missing cell day g=" + std::to_string(g + 1) + " s=" +
                                   std::to_string(s + 1));
                    continue;
                }
                set.days[g][s] = std::move(*cells[g][s]);
            }
        }

        for (const auto& mat : j.at("transitions"))
            chain.transitions.push_back(mat.get<std::vector<std::vector<double>>>());
        chain.initial = j.at("initial_distribution").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw IoError("scenarios schema error in " + path + ": " + e.what());
    }

    if (errs.empty()) {
        for (const auto& issue : validate_scenario_set(set)) errs.push_back(issue);
        for (const auto& issue : validate_chain(chain, set.n_days, set.n_scenarios))
            errs.push_back(issue);
    }
    if (!errs.empty()) {
        std::ostringstream oss;
        oss << "invalid scenarios file " << path << ":";
        for (const auto& s : errs) oss << "\n  - " << s;
        throw ValidationError(oss.str(), errs);
    }
    return {std::move(set), std::move(chain)};
}

void save_scenarios(const ScenarioSet& set, const MarkovChain& chain, const std::string& path) {
    json days = json::array();
    for (int g = 0; g < set.n_days; ++g) {
        json scenarios = json::array();
        for (int s = 0; s < set.n_scenarios; ++s) {
            const DayScenario& sc = set.days[g][s];
            scenarios.push_back({{"s", s + 1},
                                 {"spot", sc.spot},
                                 {"load", sc.load},
                                 {"pv_dc", sc.pv_dc},
                                 {"ev_avail", sc.ev_avail},
                                 {"occupancy", sc.occupancy},
                                 {"t_out", sc.t_out}});
        }
        days.push_back({{"g", g + 1}, {"scenarios", std::move(scenarios)}});
    }
    json j{{"G", set.n_days},
           {"N_S", set.n_scenarios},
           {"days", std::move(days)},
           {"transitions", chain.transitions},
           {"initial_distribution", chain.initial}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot write scenarios file: " + path);
    out << j.dump(1) << "\n";
}

ScenarioPath sample_path(const MarkovChain& chain, int n_days, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_path(chain, n_days, rng);
}

ScenarioPath sample_path(const MarkovChain& chain, int n_days, std::mt19937_64& rng) {
    if (static_cast<int>(chain.transitions.size()) < n_days - 1)
        throw std::invalid_argument("sample_path: chain shorter than requested horizon");
    ScenarioPath path;
    path.s.resize(n_days);
    path.s[0] = pick_index(chain.initial, uniform01(rng));
    for (int g = 1; g < n_days; ++g)
        path.s[g] = pick_index(chain.transitions[g - 1][path.s[g - 1]], uniform01(rng));
    return path;
}

namespace {

// Hourly base profiles for a winter weekday (hour 0 = first hour of the day).
constexpr double kBaseLoad[T] = {0.20, 0.18, 0.18, 0.18, 0.20, 0.40, 0.90, 1.80,
                                 2.20, 1.20, 0.70, 0.60, 0.55, 0.55, 0.60, 0.80,
                                 1.40, 2.60, 3.20, 2.90, 2.20, 1.40, 0.80, 0.45};
constexpr double kBaseSpot[T] = {0.030, 0.026, 0.024, 0.022, 0.024, 0.032, 0.055, 0.085,
                                 0.105, 0.090, 0.065, 0.055, 0.050, 0.048, 0.052, 0.065,
                                 0.095, 0.130, 0.140, 0.125, 0.100, 0.070, 0.048, 0.036};
constexpr double kPvShape[T] = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,  0.0,  0.0,  0.15, 0.45, 0.80,
                                1.00, 0.85, 0.50, 0.15, 0.0, 0.0, 0.0, 0.0, 0.0,  0.0,  0.0,  0.0};

// Four availability/occupancy patterns: commuter day, home all day,
// morning errand, evening errand.
struct AwayWindow {
    int from, to;  // away for h in [from, to]; from > to means never away
};
constexpr AwayWindow kAway[4] = {{7, 15}, {1, 0}, {8, 11}, {16, 19}};

}  // namespace

std::pair<ScenarioSet, MarkovChain> generate_synthetic(const SynthParams& params,
                                                       std::uint64_t seed) {
    if (params.n_days < 1 || params.n_scenarios < 1)
        throw ValidationError("synthetic generator: G and N_S must be >= 1");
    if (params.rho_self < 0.0 || params.rho_self > 1.0)
        throw ValidationError("synthetic generator: rho_self must be in [0,1]");

    std::mt19937_64 rng(seed);
    ScenarioSet set;
    set.n_days = params.n_days;
    set.n_scenarios = params.n_scenarios;
    set.days.resize(params.n_days);

    for (int g = 0; g < params.n_days; ++g) {
        set.days[g].resize(params.n_scenarios);
        for (int s = 0; s < params.n_scenarios; ++s) {
            const double denom = std::max(1, params.n_scenarios - 1);
            const double sev = 0.7 + 0.8 * static_cast<double>(s) / denom;
            const double wobble = runif(rng, 0.85, 1.15);
            const double cloud = runif(rng, 0.1, 1.0);
            const double t_day = params.t_out_mean + runif(rng, -3.0, 3.0) - 1.2 * s;
            const AwayWindow away = kAway[s % 4];

            DayScenario sc;
            sc.spot.resize(T);
            sc.load.resize(T);
            sc.pv_dc.resize(T);
            sc.pv.resize(T);
            sc.ev_avail.resize(T);
            sc.occupancy.resize(T);
            sc.t_out.assign(T, t_day);
            for (int t = 0; t < T; ++t) {
                sc.spot[t] = std::max(
                    0.001, kBaseSpot[t] * sev * wobble * params.spot_scale + runif(rng, -0.004, 0.004));
                sc.load[t] = std::max(
                    0.05, kBaseLoad[t] * sev * wobble * params.load_scale + runif(rng, -0.05, 0.05));
                sc.pv_dc[t] = 0.9 * cloud * kPvShape[t];
                sc.pv[t] = sc.pv_dc[t] * params.pv_inverter_eff;
                const bool is_away = t >= away.from && t <= away.to;
                sc.ev_avail[t] = is_away ? 0 : 1;
                sc.occupancy[t] = is_away ? 0 : 1;
            }
            set.days[g][s] = std::move(sc);
        }
    }

    MarkovChain chain;
    const int n = params.n_scenarios;
    std::vector<std::vector<double>> mat(n, std::vector<double>(n));
    for (int s = 0; s < n; ++s)
        for (int s2 = 0; s2 < n; ++s2)
            mat[s][s2] = n == 1 ? 1.0
                                : (s == s2 ? params.rho_self : (1.0 - params.rho_self) / (n - 1));
    chain.transitions.assign(std::max(0, params.n_days - 1), mat);
    chain.initial.assign(n, 1.0 / n);
    return {std::move(set), std::move(chain)};
}

}  // namespace peakval
