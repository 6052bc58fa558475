#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "doctest.h"
#include "peakval/cli.hpp"
#include "peakval/scenario.hpp"
#include "peakval/sdp.hpp"

using namespace peakval;

namespace {

int cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"peakval"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("gen/sdp/simulate/curves pipeline runs end to end") {
    REQUIRE(cli({"gen", "--days", "2", "--scenarios", "2", "--seed", "7", "--out",
                 "cli_scen.json"}) == 0);
    auto [set, chain] = load_scenarios("cli_scen.json", 0.95);
    CHECK(set.n_days == 2);
    CHECK(set.n_scenarios == 2);

    REQUIRE(cli({"sdp", "--scenarios", "cli_scen.json", "--grid-points", "9", "--out",
                 "cli_efcc.json", "--threads", "2"}) == 0);
    ValueTable table = load_efcc("cli_efcc.json");
    CHECK(table.n_days == 2);
    CHECK(table.grid.size() == 9);

    REQUIRE(cli({"simulate", "--scenarios", "cli_scen.json", "--efcc", "cli_efcc.json", "--cases",
                 "SDP,NoPeak", "--reps", "2", "--seed", "5", "--out", ".", "--threads", "2",
                 "--no-header-meta"}) == 0);
    const std::string first = slurp("results.csv");
    CHECK(first.find("SDP,") != std::string::npos);
    CHECK(first.find("NoPeak,") != std::string::npos);

    // Identical flags must reproduce the files byte for byte.
    REQUIRE(cli({"simulate", "--scenarios", "cli_scen.json", "--efcc", "cli_efcc.json", "--cases",
                 "SDP,NoPeak", "--reps", "2", "--seed", "5", "--out", ".", "--threads", "1",
                 "--no-header-meta"}) == 0);
    CHECK(slurp("results.csv") == first);

    REQUIRE(cli({"curves", "--efcc", "cli_efcc.json", "--day", "2", "--scenario", "1",
                 "--marginal", "--out", "cli_curve.csv"}) == 0);
    const std::string curve = slurp("cli_curve.csv");
    CHECK(curve.find("p_kwh_h,slope_eur_per_kwh_h\n") == 0);
    // Terminal-day marginal curve is the constant tariff.
    CHECK(curve.find("7.2075") != std::string::npos);

    std::remove("cli_scen.json");
    std::remove("cli_efcc.json");
    std::remove("cli_curve.csv");
    std::remove("results.csv");
    std::remove("summary.csv");
}

TEST_CASE("usage and validation failures exit with code 2") {
    CHECK(cli({"gen", "--scenarios", "0", "--out", "cli_bad.json"}) == 2);
    CHECK(cli({"sdp", "--scenarios", "no_such_file.json"}) == 2);
    CHECK(cli({"simulate", "--scenarios", "no_such_file.json"}) == 2);
    CHECK(cli({"nonsense"}) == 2);
}

TEST_CASE("simulate with case SDP demands an efcc table") {
    REQUIRE(cli({"gen", "--days", "1", "--scenarios", "1", "--seed", "3", "--out",
                 "cli_scen2.json"}) == 0);
    CHECK(cli({"simulate", "--scenarios", "cli_scen2.json", "--cases", "SDP", "--reps", "1"}) ==
          2);
    std::remove("cli_scen2.json");
}

TEST_CASE("structurally infeasible inputs exit with code 3") {
    // EV absent for the whole day drains far below its floor.
    BuildingConfig cfg = default_config();
    SynthParams params;
    params.n_days = 1;
    params.n_scenarios = 1;
    auto [set, chain] = generate_synthetic(params, 4);
    set.days[0][0].ev_avail.assign(24, 0);
    save_scenarios(set, chain, "cli_infeasible.json");
    CHECK(cli({"simulate", "--scenarios", "cli_infeasible.json", "--cases", "NoPeak", "--reps",
               "1"}) == 3);
    std::remove("cli_infeasible.json");
    std::remove("results.csv");
    std::remove("summary.csv");
}

TEST_CASE("curves rejects out-of-range day or scenario") {
    REQUIRE(cli({"gen", "--days", "1", "--scenarios", "1", "--seed", "3", "--out",
                 "cli_scen3.json"}) == 0);
    REQUIRE(cli({"sdp", "--scenarios", "cli_scen3.json", "--grid-points", "5", "--out",
                 "cli_efcc3.json"}) == 0);
    CHECK(cli({"curves", "--efcc", "cli_efcc3.json", "--day", "9", "--scenario", "1"}) == 2);
    CHECK(cli({"curves", "--efcc", "cli_efcc3.json", "--day", "1", "--scenario", "4"}) == 2);
    std::remove("cli_scen3.json");
    std::remove("cli_efcc3.json");
}
