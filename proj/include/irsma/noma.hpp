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


#ifndef IRSMA_NOMA_HPP
#define IRSMA_NOMA_HPP

#include "irsma/schedule.hpp"
#include "irsma/system_model.hpp"

#include <vector>

namespace irsma
{

// Single-slot SIC transmission of every device.
struct NomaSolution
{
    std::vector<int> order;
    double tau = 0.0;            // tau_1 (s)
    std::vector<double> power;   // p_{pi(k),1} per ordered device (W)
    BeamVector beam;             // v_1
    double delay = 0.0;
    std::vector<double> trace;   // delay after every accepted beam update, first entry at the initial beam
    int iterations = 0;
    bool monotonicity_fallback = false;  // the sampled monotonicity check failed and a scan was used

    // Slot 0 carries everything; later slots have zero length.
    Schedule to_schedule() const;
    BeamPlan beams() const { return BeamPlan(order.size(), beam); }
};

// Powers meeting every target (bits/Hz) with equality in one slot of length tau, in decoding order.
std::vector<double> recursive_powers(double tau, const std::vector<double> &targets, const std::vector<double> &gains);

// Smallest feasible tau_1 at a fixed beam. Throws InfeasibleError when some device cannot meet its
// target with its energy under this beam.
NomaSolution noma_min_delay_fixed_beam(const SystemConfig &config, const ChannelRealization &channels,
                                       const std::vector<int> &order, const BeamVector &beam);

struct NomaSettings
{
    double relative_tolerance = 1e-6;
    int max_iterations = 100;
};

// Starts from the best beam aligned to one device, then alternates the fixed-beam solve with FP
// beamforming of v_1, accepting beam updates only when they shorten the slot.
NomaSolution solve_noma(const SystemConfig &config, const ChannelRealization &channels, const std::vector<int> &order,
                        const NomaSettings &settings = {});

// Uses the ascending TDMA-SNR order.
NomaSolution solve_noma(const SystemConfig &config, const ChannelRealization &channels);

} // namespace irsma

#endif
