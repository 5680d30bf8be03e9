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

#ifndef IRSMA_TDMA_HPP
#define IRSMA_TDMA_HPP

#include "irsma/schedule.hpp"
#include "irsma/system_model.hpp"

#include <vector>

namespace irsma
{

// Per-device single-slot solution, indexed by original device.
struct TdmaSolution
{
    std::vector<BeamVector> beams;
    std::vector<double> tau;    // s
    std::vector<double> power;  // W
    std::vector<double> gain;   // gamma under the own aligned beam
    double sum_delay = 0.0;
};

// Shortest duration meeting L_bar (bits/Hz) with energy E (J) on gain gamma:
// tau = L_bar ln2 / (xi - W_{-1}(xi e^xi)), xi = -L_bar ln2 / (E gamma).
// Throws InfeasibleError when xi <= -1.
double energy_limited_duration(double normalized_target, double energy, double gain);

// Same quantity expressed through the throughput equation, solved by bisection (independent check).
double energy_limited_duration_bisect(double normalized_target, double energy, double gain);

TdmaSolution tdma_power_limited(const SystemConfig &config, const ChannelRealization &channels);
TdmaSolution tdma_energy_limited(const SystemConfig &config, const ChannelRealization &channels);
TdmaSolution solve_tdma(const SystemConfig &config, const ChannelRealization &channels);

// L_bar ln2 / gamma(aligned beam); the energy regime requires E_k strictly above it.
double minimum_required_energy(const SystemConfig &config, const ChannelRealization &channels, int device);

// Throws InfeasibleError naming the first device whose energy does not exceed its minimum.
void check_energy_feasible(const SystemConfig &config, const ChannelRealization &channels);

// Lays the per-device solution out along an order: slot k carries device order[k] alone.
Schedule tdma_schedule(const TdmaSolution &sol, const std::vector<int> &order);
BeamPlan tdma_beams(const TdmaSolution &sol, const std::vector<int> &order);

// Cumulative completion times when ordered device k transmits alone at full budget in slot k
// under beams[k] (a single shared beam is also accepted). Infinite once a device cannot finish.
std::vector<double> tdma_completion_times(const SystemConfig &config, const ChannelRealization &channels,
                                          const std::vector<int> &order, const BeamPlan &beams);

} // namespace irsma

#endif
