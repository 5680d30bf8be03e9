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

#ifndef IRSMA_SCHEDULE_HPP
#define IRSMA_SCHEDULE_HPP

#include "irsma/system_model.hpp"

#include <vector>

namespace irsma
{

// Slot i is the i-th time slot; ordered device k (0-based) may transmit in slots 0..k.
struct Schedule
{
    std::vector<int> order;   // order[k] = original index of the k-th decoded-last device
    std::vector<double> tau;  // slot durations (s)
    Eigen::MatrixXd power;    // power(k, i) in W for ordered device k in slot i, zero when i > k

    int slots() const { return static_cast<int>(tau.size()); }
    double sum_delay() const;

    // z_{k,i} = tau_i p_{k,i} (J)
    double energy(int k, int i) const { return tau[i] * power(k, i); }

    // Completion time of ordered device k, sum of tau_0..tau_k.
    std::vector<double> completion_times() const;

    // Same, indexed by original device.
    std::vector<double> device_completion_times() const;

    // Throws std::invalid_argument on malformed dimensions, a non-permutation order or negative entries.
    void check_shape(int device_count) const;
};

// gains(k, i) = gamma of ordered device k under the beam of slot i.
Eigen::MatrixXd gain_table(const SystemConfig &config, const ChannelRealization &channels,
                           const std::vector<int> &order, const BeamPlan &beams);

struct FeasibilityReport
{
    std::vector<double> throughput_bits;  // delivered bits per ordered device
    double max_shortfall = 0.0;           // max over devices of (L_k - delivered) / L_k, <= 0 when met
    double max_budget_excess = 0.0;       // relative excess over P^m (per slot) or E (total)
    bool feasible = false;
};

// Recomputes delivered throughput from the rate expressions and checks every budget.
FeasibilityReport evaluate_schedule(const SystemConfig &config, const ChannelRealization &channels,
                                    const Schedule &schedule, const BeamPlan &beams, double tolerance = 1e-8);

} // namespace irsma

#endif
