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
#include "irsma/schedule.hpp"
#include "irsma/tdma.hpp"

using namespace irsma;
using Catch::Approx;

TEST_CASE("Schedule bookkeeping")
{
    Schedule s;
    s.order = {1, 0};
    s.tau = {0.5, 0.25};
    s.power = Eigen::MatrixXd::Zero(2, 2);
    s.power(0, 0) = 2.0;
    s.power(1, 0) = 1.0;
    s.power(1, 1) = 3.0;

    CHECK(s.sum_delay() == 0.75);
    CHECK(s.energy(1, 1) == 0.75);
    CHECK(s.completion_times() == std::vector<double>{0.5, 0.75});
    CHECK(s.device_completion_times() == std::vector<double>{0.75, 0.5});
    CHECK_NOTHROW(s.check_shape(2));
    CHECK_THROWS_AS(s.check_shape(3), std::invalid_argument);

    Schedule bad = s;
    bad.order = {0, 0};
    CHECK_THROWS_AS(bad.check_shape(2), std::invalid_argument);
    bad = s;
    bad.tau[1] = -1.0;
    CHECK_THROWS_AS(bad.check_shape(2), std::invalid_argument);
}

TEST_CASE("Feasibility evaluation")
{
    // gamma = 1 and 3, B = 1: slot 0 carries device 0 alone at power 1 -> 1 bit/Hz per second
    const auto config = fixtures::unit_config(BudgetRegime::Power, {1.0, 1.0}, {1.0, 2.0});
    const auto ch = fixtures::direct_only({1.0, 3.0});
    Schedule s;
    s.order = {0, 1};
    s.tau = {1.0, 1.0};
    s.power = Eigen::MatrixXd::Zero(2, 2);
    s.power(0, 0) = 1.0;
    s.power(1, 1) = 1.0;
    const BeamPlan beams(2, BeamVector::identity(0));

    auto rep = evaluate_schedule(config, ch, s, beams);
    CHECK(rep.feasible);
    CHECK(rep.throughput_bits[0] == Approx(1.0));
    CHECK(rep.throughput_bits[1] == Approx(2.0));
    CHECK(rep.max_shortfall == Approx(0.0).margin(1e-15));

    // Device 1 added to slot 0 under SIC: log2(1 + 3 p / (1 + 1))
    s.power(1, 0) = 1.0;
    rep = evaluate_schedule(config, ch, s, beams);
    CHECK(rep.throughput_bits[1] == Approx(2.0 + std::log2(2.5)));
    CHECK(rep.feasible);

    s.tau[1] = 0.1;
    s.power(1, 0) = 0.0;
    rep = evaluate_schedule(config, ch, s, beams);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.max_shortfall == Approx(0.9));

    s.tau[1] = 1.0;
    s.power(0, 0) = 1.5;
    rep = evaluate_schedule(config, ch, s, beams);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.max_budget_excess == Approx(0.5));
}

TEST_CASE("Gain table follows the per-slot beams")
{
    const auto config = fixtures::two_device_power(100.0, 3, 8);
    const auto ch = generate_channels(config);
    const std::vector<int> order{1, 0};
    const BeamPlan beams{aligned_beam(ch.composite[1]), aligned_beam(ch.composite[0])};
    const auto g = gain_table(config, ch, order, beams);
    CHECK(g(0, 0) == Approx(snr_gain(ch.composite[1], beams[0], config.noise_power_w)));
    CHECK(g(1, 0) == Approx(snr_gain(ch.composite[0], beams[0], config.noise_power_w)));
    CHECK(g(1, 1) == Approx(snr_gain(ch.composite[0], beams[1], config.noise_power_w)));
    CHECK(g(1, 1) >= g(1, 0));
}
