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

#include "irsma/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace irsma
{

std::vector<double> tdma_snr(const TdmaSolution &sol)
{
    std::vector<double> rho(sol.power.size());
    for (std::size_t k = 0; k < rho.size(); ++k)
        rho[k] = sol.power[k] * sol.gain[k];
    return rho;
}

std::vector<int> propose_order(const std::vector<double> &rho)
{
    std::vector<int> order(rho.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rho[a] < rho[b]; });
    return order;
}

std::vector<int> descending_order(const std::vector<double> &rho)
{
    std::vector<int> order(rho.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rho[a] > rho[b]; });
    return order;
}

std::vector<int> random_order(int device_count, std::uint64_t seed)
{
    std::vector<int> order(device_count);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    // Explicit Fisher-Yates so the permutation does not depend on the standard library's shuffle
    for (int i = device_count - 1; i > 0; --i)
    {
        std::uniform_int_distribution<int> pick(0, i);
        std::swap(order[i], order[pick(rng)]);
    }
    return order;
}

std::vector<std::vector<int>> all_orders(int device_count)
{
    std::vector<int> order(device_count);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::vector<int>> out;
    do
        out.push_back(order);
    while (std::next_permutation(order.begin(), order.end()));
    return out;
}

double two_device_order_gap(const SystemConfig &config, const ChannelRealization &channels)
{
    if (config.device_count() != 2)
        throw std::invalid_argument("two_device_order_gap requires exactly two devices.");
    if (config.regime != BudgetRegime::Power)
        throw std::invalid_argument("two_device_order_gap requires the power regime.");
    const auto v1 = aligned_beam(channels.composite[0]);
    const auto v2 = aligned_beam(channels.composite[1]);
    const double s = config.noise_power_w;
    const double P1 = config.devices[0].budget, P2 = config.devices[1].budget;
    const double L1 = config.normalized_target(0), L2 = config.normalized_target(1);
    const double g11 = snr_gain(channels.composite[0], v1, s), g12 = snr_gain(channels.composite[0], v2, s);
    const double g21 = snr_gain(channels.composite[1], v1, s), g22 = snr_gain(channels.composite[1], v2, s);
    const double num = L2 * std::log2(1.0 + P1 * g12 / (1.0 + P2 * g22)) - L1 * std::log2(1.0 + P2 * g21 / (1.0 + P1 * g11));
    return num / (std::log2(1.0 + P1 * g11) * std::log2(1.0 + P2 * g22));
}

} // namespace irsma
