#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "doctest.h"
#include "peakval/dayopt.hpp"
#include "peakval/scenario.hpp"

using namespace peakval;

TEST_CASE("default synthetic lattice is a valid, feasible 31x4 set") {
    auto [set, chain] = generate_synthetic(SynthParams{}, 7);
    CHECK(set.n_days == 31);
    CHECK(set.n_scenarios == 4);
    CHECK(validate_scenario_set(set).empty());
    CHECK(validate_chain(chain, set.n_days, set.n_scenarios).empty());

    // Self transition dominates and rows are exact distributions.
    CHECK(chain.transitions[0][2][2] == doctest::Approx(0.55));
    CHECK(chain.transitions[0][2][0] == doctest::Approx(0.15));

    BuildingConfig cfg = default_config();
    for (int g = 0; g < set.n_days; ++g)
        for (int s = 0; s < set.n_scenarios; ++s) {
            CAPTURE(g);
            CAPTURE(s);
            CHECK(day_feasibility_issues(cfg, set.at(g, s)).empty());
            CHECK(set.at(g, s).pv[0] == 0.0);  // no sun in the first hour
        }
}

TEST_CASE("identity chain produces a constant path") {
    MarkovChain chain;
    chain.initial = {1.0, 0.0, 0.0, 0.0};
    std::vector<std::vector<double>> eye(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 4; ++i) eye[i][i] = 1.0;
    chain.transitions.assign(30, eye);
    ScenarioPath path = sample_path(chain, 31, 99u);
    for (int s : path.s) CHECK(s == 0);
}

TEST_CASE("same seed means the same path") {
    auto [set, chain] = generate_synthetic(SynthParams{}, 3);
    ScenarioPath a = sample_path(chain, set.n_days, 1234u);
    ScenarioPath b = sample_path(chain, set.n_days, 1234u);
    CHECK(a.s == b.s);
    ScenarioPath c = sample_path(chain, set.n_days, 1235u);
    CHECK(a.s != c.s);
}

TEST_CASE("uniform rows give near-uniform second-day frequencies") {
    MarkovChain chain;
    chain.initial = {1.0, 0.0, 0.0, 0.0};
    chain.transitions.assign(1, std::vector<std::vector<double>>(
                                    4, std::vector<double>(4, 0.25)));
    std::array<int, 4> counts{};
    const int n = 10000;
    for (int r = 0; r < n; ++r) ++counts[sample_path(chain, 2, 5000u + r).s[1]];
    for (int k = 0; k < 4; ++k)
        CHECK(std::fabs(counts[k] / static_cast<double>(n) - 0.25) <= 0.02);
}

TEST_CASE("a well-formed 31x4 file loads with the right shape") {
    auto [set, chain] = generate_synthetic(SynthParams{}, 7);
    const char* path = "test_scenarios_full_tmp.json";
    save_scenarios(set, chain, path);
    auto [loaded, loaded_chain] = load_scenarios(path, 0.95);
    CHECK(loaded.n_days == 31);
    CHECK(loaded.n_scenarios == 4);
    CHECK(loaded_chain.transitions.size() == 30);
    std::remove(path);
}

TEST_CASE("scenarios json round-trips bit exactly") {
    SynthParams params;
    params.n_days = 4;
    params.n_scenarios = 3;
    auto [set, chain] = generate_synthetic(params, 42);
    const char* path = "test_scenarios_tmp.json";
    save_scenarios(set, chain, path);
    auto [set2, chain2] = load_scenarios(path, params.pv_inverter_eff);
    REQUIRE(set2.n_days == set.n_days);
    REQUIRE(set2.n_scenarios == set.n_scenarios);
    for (int g = 0; g < set.n_days; ++g)
        for (int s = 0; s < set.n_scenarios; ++s) {
            CHECK(set2.at(g, s).spot == set.at(g, s).spot);
            CHECK(set2.at(g, s).load == set.at(g, s).load);
            CHECK(set2.at(g, s).pv_dc == set.at(g, s).pv_dc);
            CHECK(set2.at(g, s).pv == set.at(g, s).pv);
            CHECK(set2.at(g, s).t_out == set.at(g, s).t_out);
            CHECK(set2.at(g, s).ev_avail == set.at(g, s).ev_avail);
        }
    CHECK(chain2.transitions == chain.transitions);
    CHECK(chain2.initial == chain.initial);
    std::remove(path);
}

TEST_CASE("pv scaling happens at load time") {
    SynthParams params;
    params.n_days = 1;
    params.n_scenarios = 1;
    auto [set, chain] = generate_synthetic(params, 8);
    const char* path = "test_scenarios_pv_tmp.json";
    save_scenarios(set, chain, path);
    auto [half, _] = load_scenarios(path, 0.5);
    for (int t = 0; t < 24; ++t)
        CHECK(half.at(0, 0).pv[t] == doctest::Approx(0.5 * set.at(0, 0).pv_dc[t]));
    std::remove(path);
}

TEST_CASE("broken transition rows are named precisely") {
    SynthParams params;
    params.n_days = 4;
    params.n_scenarios = 3;
    auto [set, chain] = generate_synthetic(params, 11);
    chain.transitions[2][1] = {0.3, 0.3, 0.3};  // sums to 0.9
    auto issues = validate_chain(chain, set.n_days, set.n_scenarios);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0] == "transition row g=3 s=2 sums to 0.9");
}

TEST_CASE("missing hours and missing cells are schema errors") {
    SynthParams params;
    params.n_days = 2;
    params.n_scenarios = 2;
    auto [set, chain] = generate_synthetic(params, 21);
    const char* path = "test_scenarios_bad_tmp.json";

    SUBCASE("short series") {
        set.days[1][0].t_out.pop_back();
        save_scenarios(set, chain, path);
        CHECK_THROWS_WITH_AS((void)load_scenarios(path, 0.95),
                             doctest::Contains("t_out must have 24 entries"), ValidationError);
    }
    SUBCASE("missing cell") {
        save_scenarios(set, chain, path);
        // Rewrite with one scenario dropped from day 2.
        std::ifstream in(path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        const size_t pos = text.rfind("\"s\": 2");
        REQUIRE(pos != std::string::npos);
        // Corrupt the scenario index so cell (2,2) is never filled.
        text.replace(pos, 6, "\"s\": 9");
        std::ofstream out(path);
        out << text;
        out.close();
        CHECK_THROWS_AS((void)load_scenarios(path, 0.95), ValidationError);
    }
    std::remove(path);
}

TEST_CASE("generator rejects bad parameters") {
    SynthParams params;
    params.n_scenarios = 0;
    CHECK_THROWS_AS((void)generate_synthetic(params, 1), ValidationError);
}
