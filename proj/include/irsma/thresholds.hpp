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


#ifndef IRSMA_THRESHOLDS_HPP
#define IRSMA_THRESHOLDS_HPP

#include "irsma/system_model.hpp"
#include "irsma/tdma.hpp"

#include <string>
#include <vector>

namespace irsma
{

enum class Regime
{
    PureNoma,
    PureTdma,
    Hybrid
};

std::string to_string(Regime regime);

// Threshold comparisons along the decoding order; entry 0 (the first device) is unused and NaN.
struct RegimeReport
{
    Regime regime = Regime::Hybrid;
    BudgetRegime budget_regime = BudgetRegime::Power;
    std::vector<int> order;
    std::vector<double> noma_threshold;   // L^no_k (bits) or E^no_k (J)
    std::vector<double> tdma_threshold;   // E^td_k (J), energy regime only
    std::vector<int> tdma_reference;      // slot index i selected for E^td_k
    std::vector<double> requirement;      // L_k (bits) or E_k (J) compared against the thresholds
    std::vector<bool> noma_side;          // L_k <= L^no_k, or E_k >= E^no_k
    std::vector<bool> tdma_side;          // E_k <= E^td_k
    // Energy regime: both collapse conditions hold (possible since they use different beams).
    // regime is then PureNoma and the caller picks the shorter of the two schedules.
    bool both_collapse = false;
};

// Throughput (bits) up to which ordered device k (0-based, k >= 1) rides along device order[0]'s
// interference-free NOMA slot at full power under beam v1. Power regime.
double noma_throughput_threshold(const SystemConfig &config, const ChannelRealization &channels,
                                 const std::vector<int> &order, const BeamVector &v1, int k);

// Energy (J) from which ordered device k no longer lengthens the NOMA slot set by device order[0]'s
// energy-limited duration under v1. Throws InfeasibleError when device order[0] is energy infeasible.
double noma_energy_threshold(const SystemConfig &config, const ChannelRealization &channels,
                             const std::vector<int> &order, const BeamVector &v1, int k);

// Energy (J) below which ordered device k gains nothing from sharing earlier TDMA slots.
// reference receives the selected earlier slot when not null.
double tdma_energy_threshold(const SystemConfig &config, const ChannelRealization &channels,
                             const TdmaSolution &tdma, const std::vector<int> &order, int k,
                             int *reference = nullptr);

RegimeReport classify_regime(const SystemConfig &config, const ChannelRealization &channels,
                             const std::vector<int> &order, const BeamVector &noma_v1, const TdmaSolution &tdma);

} // namespace irsma

#endif
