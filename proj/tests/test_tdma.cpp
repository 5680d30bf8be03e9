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
#include "irsma/tdma.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace irsma;
using Catch::Approx;

TEST_CASE("Energy-limited duration closed form")
{
    // Root of tau log2(1 + 10/tau) = 1, computed independently in high precision
    CHECK(energy_limited_duration(1.0, 10.0, 1.0) == Approx(0.1692313747).epsilon(1e-9));
    CHECK(energy_limited_duration(0.0, 1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(energy_limited_duration(1.0, std::numbers::ln2, 1.0), InfeasibleError);
    CHECK_THROWS_AS(energy_limited_duration(1.0, 0.5, 1.0), InfeasibleError);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> logu(-3.0, 3.0), margin(1e-3, 3.0);
    int bad = 0;
    for (int i = 0; i < 1000; ++i)
    {
        const double L = std::pow(10.0, logu(rng));
        const double g = std::pow(10.0, logu(rng));
        const double E = L * std::numbers::ln2 / g * (1.0 + margin(rng));
        const double closed = energy_limited_duration(L, E, g);
        const double ref = energy_limited_duration_bisect(L, E, g);
        if (std::abs(closed - ref) > 1e-8 * ref)
            ++bad;
        // Both defining equations: tau log2(1 + p gamma) = L and tau p = E
        const double p = E / closed;
        if (std::abs(closed * std::log2(1.0 + p * g) - L) > 1e-9 * L)
            ++bad;
    }
    CHECK(bad == 0);

    // Doubling the gain halves the minimum energy
    const auto config = fixtures::unit_config(BudgetRegime::Energy, {5.0}, {1.0});
    CHECK(minimum_required_energy(config, fixtures::direct_only({1.0}), 0) == Approx(std::numbers::ln2));
    CHECK(minimum_required_energy(config, fixtures::direct_only({2.0}), 0) == Approx(std::numbers::ln2 / 2.0));
}

TEST_CASE("TDMA solutions")
{
    SECTION("Power limited")
    {
        const auto config = fixtures::unit_config(BudgetRegime::Power, {1.0, 2.0}, {1.0, 3.0});
        const auto sol = tdma_power_limited(config, fixtures::direct_only({1.0, 3.5}));
        CHECK(sol.tau[0] == Approx(1.0));
        CHECK(sol.tau[1] == Approx(1.0));
        CHECK(sol.sum_delay == Approx(2.0));
        CHECK(sol.power == std::vector<double>{1.0, 2.0});
    }

    SECTION("Energy limited uses every device's own budget")
    {
        const auto config = fixtures::unit_config(BudgetRegime::Energy, {10.0, 3.0}, {1.0, 1.0});
        const auto sol = tdma_energy_limited(config, fixtures::direct_only({1.0, 1.0}));
        CHECK(sol.tau[0] == Approx(0.1692313747).epsilon(1e-9));
        CHECK(sol.tau[1] == Approx(energy_limited_duration_bisect(1.0, 3.0, 1.0)).epsilon(1e-9));
        CHECK(sol.power[0] * sol.tau[0] == Approx(10.0));
    }

    SECTION("Infeasible energy names the device")
    {
        const auto config = fixtures::unit_config(BudgetRegime::Energy, {10.0, 0.5}, {1.0, 1.0});
        const auto ch = fixtures::direct_only({1.0, 1.0});
        CHECK_THROWS_AS(tdma_energy_limited(config, ch), InfeasibleError);
        CHECK_THROWS_WITH(check_energy_feasible(config, ch), Catch::Matchers::ContainsSubstring("Device 2"));
    }

    SECTION("Regime mismatch")
    {
        const auto config = fixtures::unit_config(BudgetRegime::Energy, {10.0}, {1.0});
        CHECK_THROWS_AS(tdma_power_limited(config, fixtures::direct_only({1.0})), std::invalid_argument);
    }
}

TEST_CASE("Aligned beam is the best single-slot beam")
{
    auto config = fixtures::two_device_energy(0.1, 4, 16);
    const auto ch = generate_channels(config);
    const auto sol = tdma_energy_limited(config, ch);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    int worse = 0;
    for (int trial = 0; trial < 200; ++trial)
    {
        CVector v(17);
        for (int n = 0; n < 16; ++n)
            v[n] = std::polar(1.0, phase(rng));
        v[16] = 1.0;
        for (int k = 0; k < 2; ++k)
        {
            const double g = snr_gain(ch.composite[k], BeamVector(v), config.noise_power_w);
            double tau = std::numeric_limits<double>::infinity();
            try
            {
                tau = energy_limited_duration(config.normalized_target(k), config.devices[k].budget, g);
            }
            catch (const InfeasibleError &)
            {
            }
            if (tau < sol.tau[k])
                ++worse;
        }
    }
    CHECK(worse == 0);
}

TEST_CASE("TDMA layout along an order")
{
    const auto config = fixtures::unit_config(BudgetRegime::Power, {1.0, 2.0, 1.0}, {1.0, 3.0, 2.0});
    const auto sol = tdma_power_limited(config, fixtures::direct_only({1.0, 3.5, 3.0}));
    const std::vector<int> order{2, 0, 1};
    const auto s = tdma_schedule(sol, order);
    CHECK(s.order == order);
    CHECK(s.tau == std::vector<double>{sol.tau[2], sol.tau[0], sol.tau[1]});
    CHECK(s.power(0, 0) == 1.0);
    CHECK(s.power(2, 2) == 2.0);
    CHECK(s.power(2, 0) == 0.0);
    CHECK(tdma_beams(sol, order).size() == 3);
}
