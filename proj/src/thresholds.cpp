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


#include "irsma/thresholds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace irsma
{

namespace
{

void check_index(const SystemConfig &config, const std::vector<int> &order, int k)
{
    if (static_cast<int>(order.size()) != config.device_count())
        throw std::invalid_argument("Order must list every device.");
    if (k < 1 || k >= config.device_count())
        throw std::invalid_argument("Thresholds are defined for the second and later devices only.");
}

double gain_of(const SystemConfig &config, const ChannelRealization &channels, int device, const BeamVector &v)
{
    return snr_gain(channels.composite.at(device), v, config.noise_power_w);
}

} // namespace

std::string to_string(Regime regime)
{
    switch (regime)
    {
    case Regime::PureNoma:
        return "PURE_NOMA";
    case Regime::PureTdma:
        return "PURE_TDMA";
    case Regime::Hybrid:
        return "HYBRID";
    }
    return "UNKNOWN";
}

double noma_throughput_threshold(const SystemConfig &config, const ChannelRealization &channels,
                                 const std::vector<int> &order, const BeamVector &v1, int k)
{
    if (config.regime != BudgetRegime::Power)
        throw std::invalid_argument("The throughput threshold applies to the power regime.");
    check_index(config, order, k);
    double interference = 1.0;
    for (int i = 0; i < k; ++i)
        interference += config.devices[order[i]].budget * gain_of(config, channels, order[i], v1);
    const double first_rate = std::log2(1.0 + config.devices[order[0]].budget * gain_of(config, channels, order[0], v1));
    const double own = std::log2(1.0 + config.devices[order[k]].budget * gain_of(config, channels, order[k], v1) /
                                           interference);
    return own * config.devices[order[0]].target_bits / first_rate;
}

double noma_energy_threshold(const SystemConfig &config, const ChannelRealization &channels,
                             const std::vector<int> &order, const BeamVector &v1, int k)
{
    if (config.regime != BudgetRegime::Energy)
        throw std::invalid_argument("The NOMA energy threshold applies to the energy regime.");
    check_index(config, order, k);
    const double g1 = energy_limited_duration(config.normalized_target(order[0]), config.devices[order[0]].budget,
                                              gain_of(config, channels, order[0], v1));
    double earlier = 0.0;
    for (int j = 0; j < k; ++j)
        earlier += config.normalized_target(order[j]);
    const double Lk = config.normalized_target(order[k]);
    return g1 / gain_of(config, channels, order[k], v1) * std::exp2(earlier / g1) * std::expm1(Lk / g1 * std::numbers::ln2);
}

double tdma_energy_threshold(const SystemConfig &config, const ChannelRealization &channels,
                             const TdmaSolution &tdma, const std::vector<int> &order, int k, int *reference)
{
    if (config.regime != BudgetRegime::Energy)
        throw std::invalid_argument("The TDMA energy threshold applies to the energy regime.");
    check_index(config, order, k);
    const int dk = order[k];
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j)
    {
        const int dj = order[j];
        const double ratio = (1.0 + tdma.power[dj] * tdma.gain[dj]) / gain_of(config, channels, dk, tdma.beams[dj]);
        if (ratio < best_ratio)
        {
            best_ratio = ratio;
            best = j;
        }
    }
    if (reference)
        *reference = best;
    const int di = order[best];
    const double gki = gain_of(config, channels, dk, tdma.beams[di]);
    const double gkk = tdma.gain[dk];
    const double exponent = config.normalized_target(di) / tdma.tau[di];
    const double numerator = config.normalized_target(dk) * (std::exp2(exponent) / gki - 1.0 / gkk);
    const double denominator = std::log2(gkk / gki) + exponent;
    return numerator / denominator;
}

RegimeReport classify_regime(const SystemConfig &config, const ChannelRealization &channels,
                             const std::vector<int> &order, const BeamVector &noma_v1, const TdmaSolution &tdma)
{
    const int K = config.device_count();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    RegimeReport rep;
    rep.budget_regime = config.regime;
    rep.order = order;
    rep.noma_threshold.assign(K, nan);
    rep.tdma_threshold.assign(K, nan);
    rep.tdma_reference.assign(K, -1);
    rep.requirement.assign(K, nan);
    rep.noma_side.assign(K, false);
    rep.tdma_side.assign(K, false);
    if (K == 1)
    {
        rep.regime = Regime::PureTdma;
        return rep;
    }

    bool all_noma = true;
    bool all_tdma = true;
    if (config.regime == BudgetRegime::Power)
    {
        for (int k = 1; k < K; ++k)
        {
            rep.requirement[k] = config.devices[order[k]].target_bits;
            rep.noma_threshold[k] = noma_throughput_threshold(config, channels, order, noma_v1, k);
            rep.noma_side[k] = rep.requirement[k] <= rep.noma_threshold[k];
            all_noma = all_noma && rep.noma_side[k];
        }
        rep.regime = all_noma ? Regime::PureNoma : Regime::Hybrid;
        return rep;
    }

    for (int k = 1; k < K; ++k)
    {
        rep.requirement[k] = config.devices[order[k]].budget;
        try
        {
            rep.noma_threshold[k] = noma_energy_threshold(config, channels, order, noma_v1, k);
        }
        catch (const InfeasibleError &)
        {
            rep.noma_threshold[k] = std::numeric_limits<double>::infinity();
        }
        rep.tdma_threshold[k] = tdma_energy_threshold(config, channels, tdma, order, k, &rep.tdma_reference[k]);
        rep.noma_side[k] = rep.requirement[k] >= rep.noma_threshold[k];
        rep.tdma_side[k] = rep.requirement[k] <= rep.tdma_threshold[k];
        all_noma = all_noma && rep.noma_side[k];
        all_tdma = all_tdma && rep.tdma_side[k];
    }
    rep.both_collapse = all_noma && all_tdma;
    if (all_noma)
        rep.regime = Regime::PureNoma;
    else if (all_tdma)
        rep.regime = Regime::PureTdma;
    else
        rep.regime = Regime::Hybrid;
    return rep;
}

} // namespace irsma
