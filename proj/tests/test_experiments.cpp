// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include "catch_amalgamated.hpp"

#include "irsma/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace irsma;

namespace
{

const char *small_scenario = R"(
[scenario]
name = small
figure = test
caption = two devices, L2 sweep
sweep = L2
grid = 20, 80
draws = 3
seed = 10
baselines = hma/dyn/pro, tdma/dyn/pro, noma/dyn/pro

[system]
regime = power
N = 6

[device]
pos = 20, 0, 0
max_power_dbm = 5
target_kbits = 200

[device]
pos = 40, 0, 0
max_power_dbm = 5
target_kbits = 100
)";

Scenario small()
{
    return scenario_from(parse_config_text(small_scenario));
}

std::string replace(std::string text, const std::string &from, const std::string &to)
{
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("Baseline ids")
{
    for (const std::string id : {"hma/dyn/pro", "tdma/none/des", "noma/static/exhaustive", "hma/dyn/rand2"})
        CHECK(parse_baseline(id).id() == id);
    CHECK(parse_baseline("hma").id() == "hma/dyn/pro");
    CHECK(parse_baseline("hma/dyn/rand7").order_seed == 7);
    CHECK_THROWS_AS(parse_baseline("fdma/dyn/pro"), std::invalid_argument);
    CHECK_THROWS_AS(parse_baseline("hma/passive/pro"), std::invalid_argument);
    CHECK_THROWS_AS(parse_baseline("hma/dyn/best"), std::invalid_argument);
    CHECK_THROWS_AS(parse_baseline("hma/dyn/randx"), std::invalid_argument);
    CHECK_THROWS_AS(parse_baseline("hma/dyn/pro/x"), std::invalid_argument);
    CHECK(parse_baseline_list("hma, tdma/dyn/pro, hma/dyn/pro").size() == 2);
    CHECK(parse_baseline_list(" , ").empty());
}

TEST_CASE("Scenario parsing")
{
    const auto sc = small();
    CHECK(sc.name == "small");
    CHECK(sc.sweep == SweepVariable::TargetKbits);
    CHECK(sc.sweep_device == 1);
    CHECK(sc.grid == std::vector<double>{20.0, 80.0});
    CHECK(sc.draws == 3);
    CHECK(sc.seed_base == 10);
    CHECK(sc.baselines.size() == 3);

    const auto cfg = sc.instance(80.0, 12);
    CHECK(cfg.devices[1].target_bits == 80e3);
    CHECK(cfg.devices[0].target_bits == 200e3);
    CHECK(cfg.rng_seed == 12);

    auto bad = [](const std::string &text) { return scenario_from(parse_config_text(text)); };
    CHECK_THROWS_AS(bad(replace(small_scenario, "grid = 20, 80", "grid = ")), std::invalid_argument);
    CHECK_THROWS_AS(bad(replace(small_scenario, "grid = 20, 80", "grid = 80, 20")), std::invalid_argument);
    CHECK_THROWS_AS(bad(replace(small_scenario, "draws = 3", "draws = 0")), std::invalid_argument);
    CHECK_THROWS_AS(bad(replace(small_scenario, "baselines = hma/dyn/pro, tdma/dyn/pro, noma/dyn/pro", "baselines = ,")),
                    std::invalid_argument);
    CHECK_THROWS_AS(bad(replace(small_scenario, "sweep = L2", "sweep = P2")), std::invalid_argument);
    CHECK_THROWS_AS(bad(replace(small_scenario, "sweep = L2", "sweep = E2")), std::invalid_argument);
    CHECK_THROWS_AS(bad(replace(small_scenario, "sweep = L2", "sweep = K\ndevcount = 2")), std::invalid_argument);
    CHECK_THROWS_AS(bad(replace(small_scenario, "grid = 20, 80", "grid = 1, 3\nsweep_unused = 1")), std::invalid_argument);
    CHECK_THROWS_AS(bad(replace(replace(small_scenario, "sweep = L2", "sweep = K"), "grid = 20, 80", "grid = 1, 3")),
                    std::invalid_argument);
    CHECK_THROWS_AS(bad(replace(replace(small_scenario, "sweep = L2", "sweep = N"), "grid = 20, 80", "grid = 1.5")),
                    std::invalid_argument);
    CHECK_NOTHROW(bad(replace(replace(small_scenario, "sweep = L2", "sweep = K"), "grid = 20, 80", "grid = 1, 2")));
}

TEST_CASE("Scenario runs")
{
    auto sc = small();
    sc.threads = 1;
    const auto result = run_scenario(sc);
    const std::size_t G = sc.grid.size(), B = sc.baselines.size(), D = sc.draws;
    REQUIRE(result.rows.size() == G * B * D);
    REQUIRE(result.timing.size() == result.rows.size());
    CHECK(result.summary.size() == G * B);

    std::size_t n = 0;
    for (std::size_t g = 0; g < G; ++g)
        for (std::size_t b = 0; b < B; ++b)
            for (std::size_t d = 0; d < D; ++d, ++n)
            {
                const auto &r = result.rows[n];
                CHECK(r.sweep_value == sc.grid[g]);
                CHECK(r.baseline == sc.baselines[b].id());
                CHECK(r.seed == sc.seed_base + d);
                CHECK(r.status == RowStatus::Ok);
                CHECK(r.sum_delay > 0.0);
                CHECK(r.completion_times.size() == 2);
                CHECK(result.timing[n].wall_s >= 0.0);
            }

    // Same draws, HMA never loses on the mean
    for (std::size_t g = 0; g < G; ++g)
    {
        const auto &hma = result.summary[g * B + 0];
        CHECK(hma.mean_delay <= result.summary[g * B + 1].mean_delay * (1.0 + 1e-9));
        CHECK(hma.mean_delay <= result.summary[g * B + 2].mean_delay * (1.0 + 1e-9));
        CHECK(hma.ok == sc.draws);
    }

    SECTION("Deterministic bytes regardless of threads")
    {
        auto again = sc;
        again.threads = 3;
        CHECK(rows_to_csv(run_scenario(again).rows) == rows_to_csv(result.rows));
    }

    SECTION("CSV round trip")
    {
        CHECK(rows_from_csv(rows_to_csv(result.rows)) == result.rows);
    }
}

TEST_CASE("Infeasible rows are kept")
{
    auto sc = small();
    sc.base.regime = BudgetRegime::Energy;
    sc.base.devices[0].budget = 0.1;
    sc.base.devices[1].budget = 0.05;
    sc.sweep = SweepVariable::EnergyJ;
    sc.grid = {1e-9, 0.05};
    sc.draws = 1;
    sc.threads = 1;
    const auto result = run_scenario(sc);
    REQUIRE(result.rows.size() == 6);
    for (std::size_t b = 0; b < 3; ++b)
    {
        CHECK(result.rows[b].status == RowStatus::Infeasible);
        CHECK_FALSE(result.rows[b].message.empty());
        CHECK(result.rows[3 + b].status == RowStatus::Ok);
    }
    CHECK(result.summary[0].failed == 1);
    CHECK(std::isnan(result.summary[0].mean_delay));
}

TEST_CASE("CSV quoting")
{
    ResultRow r;
    r.scenario = "a,\"b\"";
    r.sweep_value = 0.1;
    r.baseline = "hma/dyn/pro";
    r.seed = 18446744073709551615ull;
    r.status = RowStatus::Error;
    r.sum_delay = 1.0 / 3.0;
    r.completion_times = {1e-300, 2.5};
    r.message = "line one\nline two, with comma";
    r.converged = false;
    const std::string csv = rows_to_csv({r, r});
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.find("\"a,\"\"b\"\"\"") != std::string::npos);
    const auto back = rows_from_csv(csv);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == r);
    CHECK(back[0].sum_delay == r.sum_delay);
    CHECK_THROWS_AS(rows_from_csv("scenario,x\n"), std::invalid_argument);
    CHECK_THROWS_AS(rows_from_csv(csv.substr(0, csv.find("line two"))), std::invalid_argument);
}

TEST_CASE("Output files")
{
    const auto dir = std::filesystem::temp_directory_path() / "irsma_test_outputs";
    std::filesystem::remove_all(dir);

    ScenarioResult empty;
    CHECK_THROWS_AS(emit_outputs(empty, dir.string()), std::invalid_argument);
    CHECK_FALSE(std::filesystem::exists(dir));

    Scenario none = small();
    none.baselines.clear();
    CHECK_THROWS_AS(run_scenario(none), std::invalid_argument);

    auto sc = small();
    sc.draws = 1;
    sc.grid = {50.0};
    sc.threads = 1;
    const auto result = run_scenario(sc);
    emit_outputs(result, dir.string());
    CHECK(rows_from_csv(slurp(dir / "rows.csv")) == result.rows);
    CHECK(slurp(dir / "summary.csv").rfind("sweep_value,baseline,ok,failed,mean_delay_s", 0) == 0);
    CHECK(slurp(dir / "timing.csv").find("wall_s") != std::string::npos);
    CHECK(slurp(dir / "rows.csv").find("wall") == std::string::npos);
    for (const char *dat : {"hma_dyn_pro.dat", "tdma_dyn_pro.dat", "noma_dyn_pro.dat"})
        CHECK(std::filesystem::exists(dir / dat));
    std::filesystem::remove_all(dir);
}
