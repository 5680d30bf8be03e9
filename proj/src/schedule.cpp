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

#include "irsma/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace irsma
{

double Schedule::sum_delay() const
{
    return std::accumulate(tau.begin(), tau.end(), 0.0);
}

std::vector<double> Schedule::completion_times() const
{
    std::vector<double> out(tau.size());
    double t = 0.0;
    for (std::size_t k = 0; k < tau.size(); ++k)
    {
        t += tau[k];
        out[k] = t;
    }
    return out;
}

std::vector<double> Schedule::device_completion_times() const
{
    const auto ordered = completion_times();
    std::vector<double> out(order.size(), 0.0);
    for (std::size_t k = 0; k < order.size(); ++k)
        out[order[k]] = ordered[k];
    return out;
}

void Schedule::check_shape(int device_count) const
{
    const auto K = static_cast<std::size_t>(device_count);
    if (order.size() != K || tau.size() != K || power.rows() != device_count || power.cols() != device_count)
        throw std::invalid_argument("Schedule dimensions do not match the device count.");
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < device_count; ++k)
    {
        if (sorted[k] != k)
            throw std::invalid_argument("Schedule order is not a permutation.");
    }
    for (int i = 0; i < device_count; ++i)
    {
        if (!(tau[i] >= 0.0) || !std::isfinite(tau[i]))
            throw std::invalid_argument("Slot durations must be finite and nonnegative.");
        for (int k = 0; k < device_count; ++k)
        {
            if (!(power(k, i) >= 0.0) || !std::isfinite(power(k, i)))
                throw std::invalid_argument("Powers must be finite and nonnegative.");
        }
    }
}

Eigen::MatrixXd gain_table(const SystemConfig &config, const ChannelRealization &channels,
                           const std::vector<int> &order, const BeamPlan &beams)
{
    const int K = static_cast<int>(order.size());
    if (static_cast<int>(beams.size()) != K)
        throw std::invalid_argument("Beam plan must hold one beam per slot.");
    Eigen::MatrixXd g(K, K);
    for (int i = 0; i < K; ++i)
    {
        for (int k = 0; k < K; ++k)
            g(k, i) = snr_gain(channels.composite[order[k]], beams[i], config.noise_power_w);
    }
    return g;
}

FeasibilityReport evaluate_schedule(const SystemConfig &config, const ChannelRealization &channels,
                                    const Schedule &schedule, const BeamPlan &beams, double tolerance)
{
    const int K = config.device_count();
    schedule.check_shape(K);
    if (static_cast<int>(beams.size()) != K)
        throw std::invalid_argument("Beam plan must hold one beam per slot.");

    FeasibilityReport rep;
    rep.throughput_bits.assign(K, 0.0);
    rep.max_shortfall = -1.0;
    for (int i = 0; i < K; ++i)
    {
        if (schedule.tau[i] == 0.0)
            continue;
        // Devices ordered before slot i do not transmit in it
        std::vector<double> slot_powers(K, 0.0);
        for (int k = i; k < K; ++k)
            slot_powers[k] = schedule.power(k, i);
        for (int k = i; k < K; ++k)
        {
            const double r = achievable_rate(k, i, schedule.order, slot_powers, beams[i], channels,
                                             config.noise_power_w, config.bandwidth_hz);
            rep.throughput_bits[k] += schedule.tau[i] * r;
        }
    }
    rep.max_shortfall = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k)
    {
        const double L = config.devices[schedule.order[k]].target_bits;
        rep.max_shortfall = std::max(rep.max_shortfall, (L - rep.throughput_bits[k]) / L);
    }

    rep.max_budget_excess = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k)
    {
        const double budget = config.devices[schedule.order[k]].budget;
        if (config.regime == BudgetRegime::Power)
        {
            for (int i = 0; i <= k; ++i)
            {
                if (schedule.tau[i] > 0.0)
                    rep.max_budget_excess = std::max(rep.max_budget_excess, (schedule.power(k, i) - budget) / budget);
            }
        }
        else
        {
            double used = 0.0;
            for (int i = 0; i <= k; ++i)
                used += schedule.energy(k, i);
            rep.max_budget_excess = std::max(rep.max_budget_excess, (used - budget) / budget);
        }
        for (int i = k + 1; i < K; ++i)
        {
            if (schedule.power(k, i) != 0.0)
                rep.max_budget_excess = std::numeric_limits<double>::infinity();
        }
    }
    rep.feasible = rep.max_shortfall <= tolerance && rep.max_budget_excess <= tolerance;
    return rep;
}

} // namespace irsma
