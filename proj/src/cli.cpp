#include "peakval/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "peakval/holistic.hpp"
#include "peakval/parallel.hpp"
#include "peakval/scenario.hpp"
#include "peakval/sdp.hpp"
#include "peakval/sim.hpp"

namespace peakval {

namespace {

BuildingConfig config_from(const std::string& path) {
    return path.empty() ? default_config() : load_config(path);
}

int cmd_gen(const std::string& out, SynthParams params, std::uint64_t seed) {
    auto [set, chain] = generate_synthetic(params, seed);
    save_scenarios(set, chain, out);
    std::printf("wrote %s (G=%d, N_S=%d, seed=%llu)\n", out.c_str(), set.n_days, set.n_scenarios,
                static_cast<unsigned long long>(seed));
    return 0;
}

int cmd_sdp(const std::string& config_path, const std::string& scenarios_path, int grid_points,
            const std::string& out, int threads) {
    BuildingConfig cfg = config_from(config_path);
    PeakGrid grid = uniform_peak_grid(grid_points, cfg.grid.p_imp_max);
    validate_config_or_throw(cfg, grid);
    auto [set, chain] = load_scenarios(scenarios_path, cfg.pv_inverter_eff);
    BackwardStats stats;
    ValueTable table = backward_pass(cfg, set, chain, grid, threads, &stats);
    save_efcc(table, out);
    std::printf("nodes solved: %ld\nwall time: %.2f s\nwrote %s\n", stats.node_solves,
                stats.wall_seconds, out.c_str());
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& scenarios_path,
                 const std::string& efcc_path, const std::string& cases_arg, int reps,
                 std::uint64_t seed, const std::string& out_dir, int threads, bool no_meta) {
    BuildingConfig cfg = config_from(config_path);
    auto [set, chain] = load_scenarios(scenarios_path, cfg.pv_inverter_eff);

    std::vector<PolicyCase> cases;
    if (cases_arg == "all") {
        cases = {PolicyCase::sdp, PolicyCase::no_peak, PolicyCase::min_peak, PolicyCase::hol,
                 PolicyCase::hol_init};
    } else {
        std::stringstream ss(cases_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto c = parse_case(item);
            if (!c) throw ValidationError("unknown case '" + item + "'");
            cases.push_back(*c);
        }
        if (cases.empty()) throw ValidationError("no cases requested");
    }

    const bool needs_table = std::any_of(cases.begin(), cases.end(),
                                         [](PolicyCase c) { return c == PolicyCase::sdp; });
    ValueTable table;
    if (needs_table) {
        if (efcc_path.empty())
            throw ValidationError("case SDP requires --efcc (run the sdp command first)");
        table = load_efcc(efcc_path);
        if (table.n_days != set.n_days || table.n_scenarios != set.n_scenarios)
            throw ValidationError("efcc table dimensions do not match the scenario set");
    }

    MonteCarloResult result = run_monte_carlo(cfg, set, chain, needs_table ? &table : nullptr,
                                              cases, reps, seed, threads);

    std::ofstream results(out_dir + "/results.csv");
    if (!results) throw IoError("cannot write " + out_dir + "/results.csv");
    write_results_csv(result.records, results, !no_meta);
    std::ofstream summary(out_dir + "/summary.csv");
    if (!summary) throw IoError("cannot write " + out_dir + "/summary.csv");
    write_summary_csv(result.summaries, summary, !no_meta);

    std::printf("case        n     mean_cost   sd_cost  mean_peak\n");
    for (const auto& s : result.summaries)
        std::printf("%-10s %5d %11.4f %9.4f %10.3f\n", s.case_label.c_str(), s.n, s.mean_cost,
                    s.sd_cost, s.mean_peak);
    std::printf("wrote %s/results.csv and %s/summary.csv\n", out_dir.c_str(), out_dir.c_str());
    return 0;
}

int cmd_curves(const std::string& efcc_path, int day, int scenario, bool marginal,
               const std::string& out_path) {
    ValueTable table = load_efcc(efcc_path);
    if (day < 1 || day > table.n_days)
        throw ValidationError("day " + std::to_string(day) + " out of range 1.." +
                              std::to_string(table.n_days));
    if (scenario < 1 || scenario > table.n_scenarios)
        throw ValidationError("scenario " + std::to_string(scenario) + " out of range 1.." +
                              std::to_string(table.n_scenarios));
    const CostCurve curve = table.curve(day - 1, scenario - 1);

    std::ostringstream os;
    char buf[64];
    auto clean = [](double v) { return std::fabs(v) < 0.5e-4 ? 0.0 : v; };  // avoid "-0.0000"
    if (marginal) {
        os << "p_kwh_h,slope_eur_per_kwh_h\n";
        const auto slopes = marginal_curve(curve);
        for (size_t n = 0; n < slopes.size(); ++n) {
            std::snprintf(buf, sizeof(buf), "%.3f,%.4f\n", curve.grid.points[n], clean(slopes[n]));
            os << buf;
        }
    } else {
        os << "p_kwh_h,value_eur\n";
        for (int n = 0; n < curve.grid.size(); ++n) {
            std::snprintf(buf, sizeof(buf), "%.3f,%.4f\n", curve.grid.points[n],
                          clean(curve.values[n]));
            os << buf;
        }
    }
    if (out_path.empty()) {
        std::fputs(os.str().c_str(), stdout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << os.str();
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Expected-future-cost curves and policy evaluation for a building under a "
                 "measured-peak grid tariff"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a seeded synthetic scenario lattice");
    SynthParams params;
    std::uint64_t gen_seed = 7;
    std::string gen_out = "scenarios.json";
    gen->add_option("--days", params.n_days, "Days in the month")->capture_default_str();
    gen->add_option("--scenarios", params.n_scenarios, "Scenario nodes per day")
        ->capture_default_str();
    gen->add_option("--rho-self", params.rho_self, "Self-transition probability")
        ->capture_default_str();
    gen->add_option("--pv-eff", params.pv_inverter_eff, "Inverter efficiency used downstream")
        ->capture_default_str();
    gen->add_option("--load-scale", params.load_scale, "Load amplitude multiplier")
        ->capture_default_str();
    gen->add_option("--spot-scale", params.spot_scale, "Spot price amplitude multiplier")
        ->capture_default_str();
    gen->add_option("--t-out-mean", params.t_out_mean, "Mean daily outdoor temperature [degC]")
        ->capture_default_str();
    gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output path")->capture_default_str();

    // sdp
    auto* sdp = app.add_subcommand("sdp", "Backward pass producing expected-future-cost curves");
    std::string sdp_config, sdp_scenarios, sdp_out = "efcc.json";
    int grid_points = 41;
    int sdp_threads = 0;
    sdp->add_option("--config", sdp_config, "Building config json (defaults when omitted)");
    sdp->add_option("--scenarios", sdp_scenarios, "scenarios.json path")->required();
    sdp->add_option("--grid-points", grid_points, "Peak grid resolution")->capture_default_str();
    sdp->add_option("--out", sdp_out, "Output efcc path")->capture_default_str();
    sdp->add_option("--threads", sdp_threads, "Worker threads (0 = auto)")->capture_default_str();

    // simulate
    auto* simc = app.add_subcommand("simulate", "Monte-Carlo policy evaluation");
    std::string sim_config, sim_scenarios, sim_efcc, sim_cases = "all", sim_out = ".";
    int reps = 1000;
    std::uint64_t sim_seed = 1;
    int sim_threads = 0;
    bool no_meta = false;
    simc->add_option("--config", sim_config, "Building config json (defaults when omitted)");
    simc->add_option("--scenarios", sim_scenarios, "scenarios.json path")->required();
    simc->add_option("--efcc", sim_efcc, "efcc.json path (required for case SDP)");
    simc->add_option("--cases", sim_cases, "all or comma list of SDP,NoPeak,MinPeak,Hol,Hol_init")
        ->capture_default_str();
    simc->add_option("--reps", reps, "Replications per case")->capture_default_str();
    simc->add_option("--seed", sim_seed, "Master seed")->capture_default_str();
    simc->add_option("--out", sim_out, "Output directory")->capture_default_str();
    simc->add_option("--threads", sim_threads, "Worker threads (0 = auto)")->capture_default_str();
    simc->add_flag("--no-header-meta", no_meta, "Suppress the timestamp header line");

    // curves
    auto* curves = app.add_subcommand("curves", "Dump one cost curve as CSV");
    std::string cur_efcc, cur_out;
    int cur_day = 1, cur_scenario = 1;
    bool marginal = false;
    curves->add_option("--efcc", cur_efcc, "efcc.json path")->required();
    curves->add_option("--day", cur_day, "Day (1-based)")->capture_default_str();
    curves->add_option("--scenario", cur_scenario, "Scenario (1-based)")->capture_default_str();
    curves->add_flag("--marginal", marginal, "Emit segment slopes instead of values");
    curves->add_option("--out", cur_out, "Output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(gen_out, params, gen_seed);
        if (sdp->parsed()) return cmd_sdp(sdp_config, sdp_scenarios, grid_points, sdp_out,
                                          sdp_threads);
        if (simc->parsed())
            return cmd_simulate(sim_config, sim_scenarios, sim_efcc, sim_cases, reps, sim_seed,
                                sim_out, sim_threads, no_meta);
        if (curves->parsed()) return cmd_curves(cur_efcc, cur_day, cur_scenario, marginal, cur_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InfeasibleError& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 3;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return 2;
    }
}

}  // namespace peakval
