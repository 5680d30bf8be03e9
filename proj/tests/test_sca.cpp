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
#include "irsma/ordering.hpp"
#include "irsma/sca.hpp"
#include "irsma/tdma.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace irsma;
using Catch::Approx;

namespace
{

// Exhaustive K = 2 power-regime optimum for fixed per-slot gains. Device 2 transmits at full power
// in both slots (it interferes with nobody), so the delay is a function of p_{1,1} alone.
double two_device_grid(const SystemConfig &config, const Eigen::MatrixXd &g, const std::vector<int> &order)
{
    const double L1 = config.normalized_target(order[0]), L2 = config.normalized_target(order[1]);
    const double P1 = config.devices[order[0]].budget, P2 = config.devices[order[1]].budget;
    double best = std::numeric_limits<double>::infinity();
    for (int step = 1; step <= 1000; ++step)
    {
        const double p1 = P1 * step * 1e-3;
        const double tau1 = L1 / std::log2(1.0 + p1 * g(0, 0));
        const double shared = tau1 * std::log2(1.0 + P2 * g(1, 0) / (1.0 + p1 * g(0, 0)));
        const double tau2 = std::max(0.0, (L2 - shared) / std::log2(1.0 + P2 * g(1, 1)));
        best = std::min(best, tau1 + tau2);
    }
    return best;
}

} // namespace

TEST_CASE("Taylor bound of the interference term")
{
    const std::vector<double> gains{2.0, 0.5, 3.0};
    const std::vector<double> z_hat{0.3, 0.1, 0.7};
    const double tau_hat = 0.4;
    CHECK(taylor_bound(tau_hat, z_hat, tau_hat, z_hat, gains) ==
          Approx(interference_term(tau_hat, z_hat, gains)).epsilon(1e-14));
    CHECK(interference_term(0.5, {}, {}) == 0.0);
    CHECK(taylor_bound(0.5, {}, 0.7, {}, {}) == 0.0);
    CHECK_THROWS_AS(taylor_bound(0.0, z_hat, 1.0, z_hat, gains), std::invalid_argument);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    int violations = 0;
    for (int trial = 0; trial < 10000; ++trial)
    {
        std::vector<double> zh(3), z(3), g(3);
        for (int j = 0; j < 3; ++j)
        {
            zh[j] = u(rng);
            z[j] = u(rng);
            g[j] = std::exp(3.0 * u(rng) - 3.0);
        }
        const double th = 0.01 + u(rng), t = 0.01 + u(rng);
        const double exact = interference_term(t, z, g);
        if (taylor_bound(th, zh, t, z, g) < exact - 1e-12 * std::max(1.0, exact))
            ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("Single device collapses to TDMA")
{
    const auto config = fixtures::unit_config(BudgetRegime::Power, {2.0}, {3.0});
    const auto ch = fixtures::direct_only({1.5});
    const auto tdma = tdma_power_limited(config, ch);
    auto warm = tdma_schedule(tdma, {0});
    warm.tau[0] *= 1.5;
    const auto res = sca_resource_allocation(config, ch, tdma_beams(tdma, {0}), warm);
    REQUIRE(res.report.feasibility.feasible);
    CHECK(res.schedule.sum_delay() == Approx(tdma.sum_delay).epsilon(1e-9));
    CHECK(res.schedule.power(0, 0) == 2.0);

    const auto econfig = fixtures::unit_config(BudgetRegime::Energy, {2.0}, {1.0});
    const auto etdma = tdma_energy_limited(econfig, ch);
    auto ewarm = tdma_schedule(etdma, {0});
    ewarm.tau[0] *= 2.0;
    ewarm.power(0, 0) *= 0.5;
    const auto eres = sca_resource_allocation(econfig, ch, tdma_beams(etdma, {0}), ewarm);
    REQUIRE(eres.report.feasibility.feasible);
    CHECK(eres.schedule.sum_delay() == Approx(etdma.sum_delay).epsilon(1e-6));
}

TEST_CASE("Two devices against the exhaustive grid")
{
    for (std::uint64_t seed : {1u, 2u, 3u, 4u})
    {
        const auto config = fixtures::two_device_power(100.0, seed, 20);
        const auto ch = generate_channels(config);
        const auto tdma = tdma_power_limited(config, ch);
        const auto order = propose_order(tdma_snr(tdma));
        const auto beams = tdma_beams(tdma, order);
        const auto res = sca_resource_allocation(config, ch, beams, tdma_schedule(tdma, order));
        REQUIRE(res.report.feasibility.feasible);
        const double oracle = two_device_grid(config, gain_table(config, ch, order, beams), order);
        CHECK(res.schedule.sum_delay() <= oracle * 1.02);
        CHECK(res.schedule.sum_delay() >= oracle * (1.0 - 1e-3));
        CHECK(res.schedule.sum_delay() < tdma.sum_delay);
    }
}

TEST_CASE("SCA descent, feasibility and the last-device pin")
{
    for (auto regime : {BudgetRegime::Power, BudgetRegime::Energy})
    {
        for (std::uint64_t seed = 0; seed < 3; ++seed)
        {
            const auto config = fixtures::random_instance(4, regime, seed);
            const auto ch = generate_channels(config);
            const auto tdma = solve_tdma(config, ch);
            const auto order = propose_order(tdma_snr(tdma));
            const auto beams = tdma_beams(tdma, order);
            const auto res = sca_resource_allocation(config, ch, beams, tdma_schedule(tdma, order));
            const auto &trace = res.report.delay_trace;
            REQUIRE(trace.size() >= 1);
            CHECK(trace.front() == Approx(tdma.sum_delay));
            for (std::size_t t = 1; t < trace.size(); ++t)
                CHECK(trace[t] <= trace[t - 1]);
            const auto check = evaluate_schedule(config, ch, res.schedule, beams, 1e-8);
            CHECK(check.feasible);
            CHECK(check.max_shortfall <= 1e-8);
            CHECK(res.schedule.sum_delay() <= tdma.sum_delay);
            if (regime == BudgetRegime::Power)
            {
                for (int i = 0; i < 4; ++i)
                    CHECK(res.schedule.power(3, i) == config.devices[order[3]].budget);
            }
            // Tightness: every target met with equality
            CHECK(check.max_shortfall >= -1e-6);
        }
    }
}

TEST_CASE("Tightening never lengthens the schedule")
{
    const auto config = fixtures::random_instance(3, BudgetRegime::Power, 5);
    const auto ch = generate_channels(config);
    const auto tdma = tdma_power_limited(config, ch);
    const std::vector<int> order{0, 1, 2};
    const auto beams = tdma_beams(tdma, order);
    auto s = tdma_schedule(tdma, order);
    for (int k = 0; k < 3; ++k)
        s.tau[k] *= 1.3;
    const double before = s.sum_delay();
    tighten_schedule(config, gain_table(config, ch, order, beams), s, true);
    CHECK(s.sum_delay() <= before);
    const auto delivered = delivered_throughput(s, gain_table(config, ch, order, beams));
    for (int k = 0; k < 3; ++k)
        CHECK(delivered[k] == Approx(config.normalized_target(order[k])).epsilon(1e-9));
}
