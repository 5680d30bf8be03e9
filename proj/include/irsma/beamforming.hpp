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


#ifndef IRSMA_BEAMFORMING_HPP
#define IRSMA_BEAMFORMING_HPP

#include "irsma/schedule.hpp"
#include "irsma/system_model.hpp"

#include <vector>

namespace irsma
{

enum class BeamMode
{
    Dynamic,  // one IRS vector per slot
    Static    // one IRS vector shared by every slot
};

// Quadratic-transform auxiliaries, entries (k, i) with i <= k.
struct FpAuxiliaries
{
    Eigen::MatrixXd chi;   // SINR of ordered device k in slot i
    Eigen::MatrixXcd iota; // sqrt((1 + chi) p) b^H v / (1 + sum_{j=i..k} p_j |b_j^H v|^2), noise-normalized
};

FpAuxiliaries fp_auxiliary_update(const SystemConfig &config, const ChannelRealization &channels,
                                  const Schedule &schedule, const BeamPlan &beams);

// Surrogate of log2(1 + SINR_{k,i}) under beam v. Equals the exact rate (per Hz) at the beam the
// auxiliaries were computed for and lower-bounds it everywhere.
double fp_surrogate_rate(const SystemConfig &config, const ChannelRealization &channels, const Schedule &schedule,
                         const FpAuxiliaries &aux, int k, int i, const BeamVector &v);

struct BeamUpdateOptions
{
    BeamMode mode = BeamMode::Dynamic;
    std::vector<double> weights;        // per ordered device, empty means all ones
    bool preserve_feasibility = false;  // keep every delta_k >= min(0, its starting value)
};

struct BeamUpdateReport
{
    std::vector<int> sweeps;                     // per active slot (one entry in static mode)
    std::vector<std::vector<double>> objective;  // per slot group, sum of delta after every sweep (first = start)
};

// Maximizes sum_k w_k delta_k, delta_k = sum_i tau_i u_{k,i}(v_i) - L_bar_k. Each unit-modulus element
// is set to its best phase in closed form, cycling until the sum improves by less than 1e-8. With
// preserve_feasibility no delta_k drops below min(0, its starting value), and the best phase is
// taken over the feasible arcs. Dynamic mode updates slot after slot; static mode moves all slots
// together. Slots of zero duration keep their beam in dynamic mode.
BeamPlan beamforming_update(const SystemConfig &config, const ChannelRealization &channels, const Schedule &schedule,
                            const FpAuxiliaries &aux, const BeamPlan &beams, const BeamUpdateOptions &options,
                            BeamUpdateReport *report = nullptr);

BeamPlan beamforming_update(const SystemConfig &config, const ChannelRealization &channels, const Schedule &schedule,
                            const FpAuxiliaries &aux, const BeamPlan &beams, BeamMode mode,
                            BeamUpdateReport *report = nullptr);

struct FpSettings
{
    double surplus_tolerance = 1e-6;  // stop once the total throughput surplus (bits/Hz) changes less
    int max_iterations = 50;
    BeamMode mode = BeamMode::Dynamic;
    std::vector<double> weights;      // per ordered device, empty means all ones
    bool preserve_feasibility = false;
};

struct FpResult
{
    BeamPlan beams;
    int iterations = 0;
    std::vector<double> surplus_trace;  // Phase-wise interpolation: element n of slot i rotates by t times the wrapped phase step from a to b.
BeamPlan interpolate_beams(const BeamPlan &a, const BeamPlan &b, double t);

// sum_k w_k (delivered_k - L_bar_k), first entry at the input beams
};

// Alternates auxiliary and beam updates at a fixed schedule. The weighted surplus is nondecreasing.
FpResult fp_beamforming(const SystemConfig &config, const ChannelRealization &channels, const Schedule &schedule,
                        const BeamPlan &beams, const FpSettings &settings = {});

// Phase-wise interpolation: element n of slot i rotates by t times the wrapped phase step from a to b.
BeamPlan interpolate_beams(const BeamPlan &a, const BeamPlan &b, double t);

// sum_k w_k (delivered_k - L_bar_k) in bits/Hz, unit weights when none are given.
double throughput_surplus(const SystemConfig &config, const ChannelRealization &channels, const Schedule &schedule,
                          const BeamPlan &beams, const std::vector<double> &weights = {});

} // namespace irsma

#endif
