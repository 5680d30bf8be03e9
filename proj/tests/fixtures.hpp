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


#ifndef IRSMA_TEST_FIXTURES_HPP
#define IRSMA_TEST_FIXTURES_HPP

#include "irsma/system_model.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace fixtures
{

// BS at the origin, IRS at (30, 0, 5), 500 kHz, -80 dBm noise.
inline irsma::SystemConfig base_config(int irs_elements, irsma::BudgetRegime regime, std::uint64_t seed)
{
    irsma::SystemConfig c;
    c.irs_elements = irs_elements;
    c.bandwidth_hz = 500e3;
    c.noise_power_w = irsma::dbm_to_watt(-80.0);
    c.irs_pos = {30.0, 0.0, 5.0};
    c.regime = regime;
    c.rng_seed = seed;
    return c;
}

// Two devices at 20 m and 40 m, 5 dBm, L1 = 200 Kbits.
inline irsma::SystemConfig two_device_power(double l2_kbits, std::uint64_t seed, int irs_elements = 50)
{
    auto c = base_config(irs_elements, irsma::BudgetRegime::Power, seed);
    c.devices = {{{20.0, 0.0, 0.0}, irsma::dbm_to_watt(5.0), 200e3}, {{40.0, 0.0, 0.0}, irsma::dbm_to_watt(5.0), l2_kbits * 1e3}};
    return c;
}

// Two devices at 20 m and 40 m, L1 = 2000 Kbits, L2 = 200 Kbits, E1 = 0.1 J.
inline irsma::SystemConfig two_device_energy(double e2_j, std::uint64_t seed, int irs_elements = 50)
{
    auto c = base_config(irs_elements, irsma::BudgetRegime::Energy, seed);
    c.devices = {{{20.0, 0.0, 0.0}, 0.1, 2000e3}, {{40.0, 0.0, 0.0}, e2_j, 200e3}};
    return c;
}

// K devices at 5(K - k + 1) m; power: 10 dBm and 10(K - k + 1) Kbits, energy: k J and 200(K - k + 1) Kbits.
inline irsma::SystemConfig line_of_devices(int K, irsma::BudgetRegime regime, std::uint64_t seed, int irs_elements = 50)
{
    auto c = base_config(irs_elements, regime, seed);
    for (int k = 1; k <= K; ++k)
    {
        const double pos = 5.0 * (K - k + 1);
        if (regime == irsma::BudgetRegime::Power)
            c.devices.push_back({{pos, 0.0, 0.0}, irsma::dbm_to_watt(10.0), 10e3 * (K - k + 1)});
        else
            c.devices.push_back({{pos, 0.0, 0.0}, static_cast<double>(k), 200e3 * (K - k + 1)});
    }
    return c;
}

// K devices scattered in a 10-50 m annulus sector, random targets and budgets.
inline irsma::SystemConfig random_instance(int K, irsma::BudgetRegime regime, std::uint64_t seed, int irs_elements = 20)
{
    std::mt19937_64 rng(seed * 7919 + 17);
    std::uniform_real_distribution<double> radius(10.0, 50.0), angle(-0.6, 0.6), bits(20e3, 200e3);
    std::uniform_real_distribution<double> pdbm(0.0, 10.0), energy(0.05, 0.5);
    auto c = base_config(irs_elements, regime, seed);
    for (int k = 0; k < K; ++k)
    {
        const double r = radius(rng), a = angle(rng);
        const double budget = regime == irsma::BudgetRegime::Power ? irsma::dbm_to_watt(pdbm(rng)) : energy(rng);
        c.devices.push_back({{r * std::cos(a), r * std::sin(a), 0.0}, budget, bits(rng)});
    }
    return c;
}

// Single-antenna links without IRS and unit noise: gamma_k = |h_k|^2, B = 1 so L_bar = L.
inline irsma::ChannelRealization direct_only(const std::vector<double> &gains)
{
    irsma::ChannelRealization ch;
    for (double g : gains)
    {
        ch.direct.emplace_back(std::sqrt(g), 0.0);
        ch.irs_device.emplace_back(0);
    }
    ch.irs_bs = irsma::CVector(0);
    ch.rebuild_composite();
    return ch;
}

inline irsma::SystemConfig unit_config(irsma::BudgetRegime regime, const std::vector<double> &budgets,
                                       const std::vector<double> &targets)
{
    irsma::SystemConfig c;
    c.irs_elements = 0;
    c.bandwidth_hz = 1.0;
    c.noise_power_w = 1.0;
    c.regime = regime;
    c.irs_pos = {30.0, 0.0, 5.0};
    for (std::size_t k = 0; k < budgets.size(); ++k)
        c.devices.push_back({{10.0 * (k + 1), 0.0, 0.0}, budgets[k], targets[k]});
    return c;
}

} // namespace fixtures

#endif
