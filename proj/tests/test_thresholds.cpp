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

#include "fixtures.hpp"
#include "irsma/hma.hpp"
#include "irsma/thresholds.hpp"

#include <cmath>

using namespace irsma;
using Catch::Approx;

namespace
{

const BeamVector no_irs = BeamVector::identity(0);

HmaOptions fixed_order_without_shortcuts(std::vector<int> order)
{
    HmaOptions o;
    o.order_policy = OrderPolicy::Explicit;
    o.explicit_order = std::move(order);
    o.use_shortcuts = false;
    return o;
}

} // namespace

TEST_CASE("NOMA throughput threshold")
{
    const auto ch = fixtures::direct_only({1.0, 1.0});
    const auto config = fixtures::unit_config(BudgetRegime::Power, {1.0, 1.0}, {1.0, 0.3});
    CHECK(noma_throughput_threshold(config, ch, {0, 1}, no_irs, 1) == Approx(std::log2(1.5)).epsilon(1e-12));
    CHECK(noma_throughput_threshold(config, ch, {0, 1}, no_irs, 1) == Approx(0.58496250072).epsilon(1e-10));
    CHECK_THROWS_AS(noma_throughput_threshold(config, ch, {0, 1}, no_irs, 0), std::invalid_argument);

    const auto scaled = fixtures::unit_config(BudgetRegime::Power, {1.0, 1.0}, {3.0, 0.3});
    CHECK(noma_throughput_threshold(scaled, ch, {0, 1}, no_irs, 1) == Approx(3.0 * std::log2(1.5)));

    const auto weak = fixtures::unit_config(BudgetRegime::Power, {1.0, 1e-9}, {1.0, 0.3});
    CHECK(noma_throughput_threshold(weak, ch, {0, 1}, no_irs, 1) < 1e-8);

    const auto energy = fixtures::unit_config(BudgetRegime::Energy, {1.0, 1.0}, {1.0, 0.3});
    CHECK_THROWS_AS(noma_throughput_threshold(energy, ch, {0, 1}, no_irs, 1), std::invalid_argument);
}

TEST_CASE("NOMA energy threshold")
{
    // E_1 = 1 J, gamma = 1, L_bar_1 = 1 gives an energy-limited duration of exactly 1 s
    const auto ch = fixtures::direct_only({1.0, 1.0});
    const auto config = fixtures::unit_config(BudgetRegime::Energy, {1.0, 1.0}, {1.0, 1.0});
    CHECK(noma_energy_threshold(config, ch, {0, 1}, no_irs, 1) == Approx(2.0).epsilon(1e-10));

    const auto tiny = fixtures::unit_config(BudgetRegime::Energy, {1.0, 1.0}, {1.0, 1e-9});
    CHECK(noma_energy_threshold(tiny, ch, {0, 1}, no_irs, 1) < 1e-8);

    // Increasing in every earlier and own target
    const auto ch3 = fixtures::direct_only({1.0, 2.0, 0.5});
    const auto base = fixtures::unit_config(BudgetRegime::Energy, {2.0, 1.0, 1.0}, {1.0, 0.5, 0.5});
    const double e = noma_energy_threshold(base, ch3, {0, 1, 2}, no_irs, 2);
    for (int j = 1; j < 3; ++j)
    {
        auto more = base;
        more.devices[j].target_bits *= 1.1;
        CHECK(noma_energy_threshold(more, ch3, {0, 1, 2}, no_irs, 2) > e);
    }

    const auto starved = fixtures::unit_config(BudgetRegime::Energy, {0.5, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS(noma_energy_threshold(starved, ch, {0, 1}, no_irs, 1), InfeasibleError);
}

TEST_CASE("TDMA energy threshold")
{
    SECTION("Identical channels")
    {
        const double gamma = 3.0;
        const auto ch = fixtures::direct_only({gamma, gamma});
        const auto config = fixtures::unit_config(BudgetRegime::Energy, {1.0, 1.0}, {1.0, 0.7});
        const auto tdma = tdma_energy_limited(config, ch);
        int ref = -1;
        const double e = tdma_energy_threshold(config, ch, tdma, {0, 1}, 1, &ref);
        CHECK(ref == 0);
        const double g1 = tdma.tau[0];
        CHECK(e == Approx(0.7 * (std::exp2(1.0 / g1) - 1.0) / (gamma * 1.0 / g1)).epsilon(1e-12));
        CHECK_THROWS_AS(tdma_energy_threshold(config, ch, tdma, {0, 1}, 0), std::invalid_argument);
    }

    SECTION("Reference slot minimizes the interference-to-gain ratio")
    {
        const auto ch = fixtures::direct_only({1.0, 4.0, 2.0});
        const auto config = fixtures::unit_config(BudgetRegime::Energy, {1.0, 1.0, 1.0}, {0.5, 2.0, 0.5});
        const auto tdma = tdma_energy_limited(config, ch);
        int ref = -1;
        tdma_energy_threshold(config, ch, tdma, {0, 1, 2}, 2, &ref);
        // Without an IRS gamma_k(v_j) = gamma_k, so the slot with the smallest 1 + p_j gamma_j wins
        const int expected = (1.0 + tdma.power[0] * tdma.gain[0] <= 1.0 + tdma.power[1] * tdma.gain[1]) ? 0 : 1;
        CHECK(ref == expected);
    }
}

TEST_CASE("Energy thresholds predict the solver")
{
    // Without an IRS every protocol shares the same beams, so the collapse results hold exactly
    const auto ch = fixtures::direct_only({2.0, 5.0});
    auto config = fixtures::unit_config(BudgetRegime::Energy, {1.0, 1.0}, {1.0, 1.0});
    const auto td0 = tdma_energy_limited(config, ch);
    const double e_td = tdma_energy_threshold(config, ch, td0, {0, 1}, 1);
    const double e_no = noma_energy_threshold(config, ch, {0, 1}, no_irs, 1);
    REQUIRE(e_td < e_no);

    auto run = [&](double e2)
    {
        config.devices[1].budget = e2;
        const auto tdma = tdma_energy_limited(config, ch);
        const auto noma = noma_min_delay_fixed_beam(config, ch, {0, 1}, no_irs);
        const auto hma = solve_hma(config, ch, fixed_order_without_shortcuts({0, 1}));
        const auto rep = classify_regime(config, ch, {0, 1}, no_irs, tdma);
        return std::tuple{tdma.sum_delay, noma.delay, hma.sum_delay(), rep.regime};
    };

    SECTION("Below the TDMA threshold")
    {
        const auto [td, no, hy, regime] = run(0.9 * e_td);
        CHECK(regime == Regime::PureTdma);
        CHECK(hy == Approx(td).epsilon(1e-6));
    }
    SECTION("Between the thresholds")
    {
        const auto [td, no, hy, regime] = run(0.5 * (e_td + e_no));
        CHECK(regime == Regime::Hybrid);
        CHECK(hy < std::min(td, no) * (1.0 - 1e-4));
    }
    SECTION("Above the NOMA threshold")
    {
        const auto [td, no, hy, regime] = run(1.1 * e_no);
        CHECK(regime == Regime::PureNoma);
        CHECK(hy == Approx(no).epsilon(1e-6));
    }
}

TEST_CASE("Regime classification")
{
    SECTION("Single device")
    {
        const auto config = fixtures::unit_config(BudgetRegime::Power, {1.0}, {1.0});
        const auto ch = fixtures::direct_only({1.0});
        CHECK(classify_regime(config, ch, {0}, no_irs, solve_tdma(config, ch)).regime == Regime::PureTdma);
    }

    SECTION("Power regime")
    {
        const auto ch = fixtures::direct_only({1.0, 1.0});
        auto config = fixtures::unit_config(BudgetRegime::Power, {1.0, 1.0}, {1.0, 1.0});
        const double l_no = noma_throughput_threshold(config, ch, {0, 1}, no_irs, 1);
        config.devices[1].target_bits = 0.5 * l_no;
        auto rep = classify_regime(config, ch, {0, 1}, no_irs, solve_tdma(config, ch));
        CHECK(rep.regime == Regime::PureNoma);
        CHECK(rep.noma_side[1]);
        config.devices[1].target_bits = 1.5 * l_no;
        rep = classify_regime(config, ch, {0, 1}, no_irs, solve_tdma(config, ch));
        CHECK(rep.regime == Regime::Hybrid);
        CHECK(to_string(rep.regime) == "HYBRID");
    }
}
