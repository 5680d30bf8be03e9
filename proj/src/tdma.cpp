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

#include "irsma/tdma.hpp"
#include "irsma/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace irsma
{

double energy_limited_duration(double normalized_target, double energy, double gain)
{
    if (!(normalized_target >= 0.0) || !(energy > 0.0) || !(gain >= 0.0))
        throw std::invalid_argument("energy_limited_duration: invalid arguments.");
    if (normalized_target == 0.0)
        return 0.0;
    const double xi = -normalized_target * std::numbers::ln2 / (energy * gain);
    if (!(xi > -1.0))
        throw InfeasibleError("Energy budget does not exceed the minimum required energy.");
    const double w = lambert_w_m1(xi * std::exp(xi));
    return normalized_target * std::numbers::ln2 / (xi - w);
}

double energy_limited_duration_bisect(double normalized_target, double energy, double gain)
{
    if (normalized_target == 0.0)
        return 0.0;
    const double a = energy * gain;
    if (!(a > normalized_target * std::numbers::ln2))
        throw InfeasibleError("Energy budget does not exceed the minimum required energy.");
    // Delivered bits/Hz tau log2(1 + a/tau) increase with tau towards a/ln2
    auto f = [&](double t) { return t * std::log2(1.0 + a / t) - normalized_target; };
    double hi = normalized_target;
    while (f(hi) < 0.0)
        hi *= 2.0;
    double lo = hi;
    while (lo > 1e-300 && f(lo) > 0.0)
        lo *= 0.5;
    return bisect(f, lo, hi, 1e-15 * hi);
}

TdmaSolution tdma_power_limited(const SystemConfig &config, const ChannelRealization &channels)
{
    if (config.regime != BudgetRegime::Power)
        throw std::invalid_argument("tdma_power_limited requires the power regime.");
    const int K = config.device_count();
    TdmaSolution sol;
    for (int k = 0; k < K; ++k)
    {
        const auto v = aligned_beam(channels.composite[k]);
        const double g = snr_gain(channels.composite[k], v, config.noise_power_w);
        const double P = config.devices[k].budget;
        const double tau = config.normalized_target(k) / std::log2(1.0 + P * g);
        sol.beams.push_back(v);
        sol.gain.push_back(g);
        sol.power.push_back(P);
        sol.tau.push_back(tau);
        sol.sum_delay += tau;
    }
    return sol;
}

TdmaSolution tdma_energy_limited(const SystemConfig &config, const ChannelRealization &channels)
{
    if (config.regime != BudgetRegime::Energy)
        throw std::invalid_argument("tdma_energy_limited requires the energy regime.");
    const int K = config.device_count();
    TdmaSolution sol;
    for (int k = 0; k < K; ++k)
    {
        const auto v = aligned_beam(channels.composite[k]);
        const double g = snr_gain(channels.composite[k], v, config.noise_power_w);
        const double E = config.devices[k].budget;
        double tau = 0.0;
        try
        {
            tau = energy_limited_duration(config.normalized_target(k), E, g);
        }
        catch (const InfeasibleError &)
        {
            throw InfeasibleError("Device " + std::to_string(k + 1) + ": energy " + std::to_string(E) +
                                  " J does not exceed the minimum required energy " +
                                  std::to_string(minimum_required_energy(config, channels, k)) + " J.");
        }
        sol.beams.push_back(v);
        sol.gain.push_back(g);
        sol.power.push_back(E / tau);
        sol.tau.push_back(tau);
        sol.sum_delay += tau;
    }
    return sol;
}

TdmaSolution solve_tdma(const SystemConfig &config, const ChannelRealization &channels)
{
    return config.regime == BudgetRegime::Power ? tdma_power_limited(config, channels)
                                                : tdma_energy_limited(config, channels);
}

double minimum_required_energy(const SystemConfig &config, const ChannelRealization &channels, int device)
{
    const auto &b = channels.composite.at(device);
    const double g = snr_gain(b, aligned_beam(b), config.noise_power_w);
    return config.normalized_target(device) * std::numbers::ln2 / g;
}

void check_energy_feasible(const SystemConfig &config, const ChannelRealization &channels)
{
    if (config.regime != BudgetRegime::Energy)
        return;
    for (int k = 0; k < config.device_count(); ++k)
    {
        const double emin = minimum_required_energy(config, channels, k);
        if (!(config.devices[k].budget > emin))
            throw InfeasibleError("Device " + std::to_string(k + 1) + ": energy " +
                                  std::to_string(config.devices[k].budget) +
                                  " J does not exceed the minimum required energy " + std::to_string(emin) + " J.");
    }
}

Schedule tdma_schedule(const TdmaSolution &sol, const std::vector<int> &order)
{
    const int K = static_cast<int>(order.size());
    Schedule s;
    s.order = order;
    s.tau.resize(K);
    s.power = Eigen::MatrixXd::Zero(K, K);
    for (int k = 0; k < K; ++k)
    {
        s.tau[k] = sol.tau[order[k]];
        s.power(k, k) = sol.power[order[k]];
    }
    return s;
}

BeamPlan tdma_beams(const TdmaSolution &sol, const std::vector<int> &order)
{
    BeamPlan plan;
    for (int d : order)
        plan.push_back(sol.beams[d]);
    return plan;
}

std::vector<double> tdma_completion_times(const SystemConfig &config, const ChannelRealization &channels,
                                          const std::vector<int> &order, const BeamPlan &beams)
{
    const int K = config.device_count();
    if (static_cast<int>(order.size()) != K)
        throw std::invalid_argument("Order length does not match the device count.");
    if (beams.size() != 1 && static_cast<int>(beams.size()) != K)
        throw std::invalid_argument("Expected one beam per slot or a single shared beam.");
    std::vector<double> out(K);
    double t = 0.0;
    for (int k = 0; k < K; ++k)
    {
        const int d = order[k];
        if (d < 0 || d >= K)
            throw std::out_of_range("Order entry out of range.");
        const double g = snr_gain(channels.composite[d], beams[beams.size() == 1 ? 0 : k], config.noise_power_w);
        const double l = config.normalized_target(d);
        const double budget = config.devices[d].budget;
        double tau = std::numeric_limits<double>::infinity();
        if (config.regime == BudgetRegime::Power)
        {
            if (budget * g > 0.0)
                tau = l / std::log2(1.0 + budget * g);
        }
        else if (budget * g > l * std::numbers::ln2)
            tau = energy_limited_duration(l, budget, g);
        t += tau;
        out[k] = t;
    }
    return out;
}

} // namespace irsma
