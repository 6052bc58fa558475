#include "peakval/sdp.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "peakval/parallel.hpp"

namespace peakval {

using nlohmann::json;

CostCurve terminal_curve(const PeakGrid& grid, double tariff) {
    CostCurve c;
    c.grid = grid;
    c.values.resize(grid.size());
    for (int n = 0; n < grid.size(); ++n) c.values[n] = tariff * grid.points[n];
    return c;
}

std::vector<double> marginal_curve(const CostCurve& c) {
    std::vector<double> slopes;
    slopes.reserve(std::max(0, c.grid.size() - 1));
    for (int n = 0; n + 1 < c.grid.size(); ++n)
        slopes.push_back((c.values[n + 1] - c.values[n]) /
                         (c.grid.points[n + 1] - c.grid.points[n]));
    return slopes;
}

double optimal_initial_peak(const CostCurve& c) {
    const double floor = c.values.front();
    for (int n = c.grid.size() - 1; n >= 0; --n)
        if (std::fabs(c.values[n] - floor) <= 1e-6) return c.grid.points[n];
    return c.grid.points.front();
}

ValueTable backward_pass(const BuildingConfig& cfg, const ScenarioSet& set,
                         const MarkovChain& chain, const PeakGrid& grid, int threads,
                         BackwardStats* stats) {
    const auto t_start = std::chrono::steady_clock::now();
    validate_config_or_throw(cfg, grid);
    {
        auto issues = validate_scenario_set(set);
        auto chain_issues = validate_chain(chain, set.n_days, set.n_scenarios);
        issues.insert(issues.end(), chain_issues.begin(), chain_issues.end());
        if (!issues.empty()) {
            std::ostringstream oss;
            oss << "backward pass inputs invalid:";
            for (const auto& s : issues) oss << "\n  - " << s;
            throw ValidationError(oss.str(), issues);
        }
    }

    const int G = set.n_days;
    const int S = set.n_scenarios;
    const int N = grid.size();
    const int workers = resolve_threads(threads);

    ValueTable table;
    table.grid = grid;
    table.n_days = G;
    table.n_scenarios = S;
    table.V.assign(G, std::vector<std::vector<double>>(S, std::vector<double>(N, 0.0)));
    table.F.assign(G, std::vector<std::vector<double>>(S, std::vector<double>(N, 0.0)));

    const CostCurve terminal = terminal_curve(grid, cfg.grid.peak_tariff);
    long solves = 0;

    for (int g = G - 1; g >= 0; --g) {
        for (int s = 0; s < S; ++s) {
            if (g == G - 1) {
                table.F[g][s] = terminal.values;
            } else {
                const auto& rho = chain.transitions[g][s];
                auto& f = table.F[g][s];
                for (int n = 0; n < N; ++n) {
                    double v = 0.0;
                    for (int s2 = 0; s2 < S; ++s2) v += rho[s2] * table.V[g + 1][s2][n];
                    f[n] = v;
                }
            }
            CostCurve fc{grid, table.F[g][s]};
            auto issues = validate_curve(fc, cfg.grid.peak_tariff);
            if (!issues.empty())
                throw NumericalError("expected-future-cost curve invariant violated at day " +
                                     std::to_string(g + 1) + " scenario " + std::to_string(s + 1) +
                                     ": " + issues.front());
        }

        // All (scenario, grid point) nodes of a day are independent.
        parallel_for(S * N, workers, [&](int idx) {
            const int s = idx / N;
            const int n = idx % N;
            const CostCurve fc = table.curve(g, s);
            try {
                DaySolution sol =
                    solve_day(cfg, set.at(g, s), DayState{grid.points[n]}, &fc, PolicyVariant::sdp);
                table.V[g][s][n] = sol.objective;
            } catch (const InfeasibleError& e) {
                throw InfeasibleError("backward pass node infeasible at day g=" +
                                      std::to_string(g + 1) + " s=" + std::to_string(s + 1) +
                                      " n=" + std::to_string(n + 1) + ": " + e.what());
            }
        });
        solves += static_cast<long>(S) * N;
    }

    if (stats) {
        stats->node_solves = solves;
        stats->wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    }
    return table;
}

void save_efcc(const ValueTable& table, const std::string& path) {
    json days = json::array();
    for (int g = 0; g < table.n_days; ++g) {
        json scenarios = json::array();
        for (int s = 0; s < table.n_scenarios; ++s)
            scenarios.push_back({{"s", s + 1}, {"V", table.V[g][s]}, {"F", table.F[g][s]}});
        days.push_back({{"g", g + 1}, {"scenarios", std::move(scenarios)}});
    }
    json j{{"grid", table.grid.points}, {"days", std::move(days)}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot write efcc file: " + path);
    out << j.dump(1) << "\n";
}

ValueTable load_efcc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open efcc file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("cannot parse efcc file " + path + ": " + e.what());
    }
    ValueTable table;
    try {
        table.grid.points = j.at("grid").get<std::vector<double>>();
        const auto& days = j.at("days");
        table.n_days = static_cast<int>(days.size());
        for (const auto& day : days) {
            const auto& scenarios = day.at("scenarios");
            std::vector<std::vector<double>> v_slice, f_slice;
            for (const auto& node : scenarios) {
                v_slice.push_back(node.at("V").get<std::vector<double>>());
                f_slice.push_back(node.at("F").get<std::vector<double>>());
            }
            table.V.push_back(std::move(v_slice));
            table.F.push_back(std::move(f_slice));
        }
        table.n_scenarios = table.V.empty() ? 0 : static_cast<int>(table.V[0].size());
    } catch (const json::exception& e) {
        throw IoError("efcc schema error in " + path + ": " + e.what());
    }
    for (const auto& day : table.V)
        for (const auto& slice : day)
            if (static_cast<int>(slice.size()) != table.grid.size())
                throw IoError("efcc file " + path + ": value slice length mismatch");
    return table;
}

}  // namespace peakval
