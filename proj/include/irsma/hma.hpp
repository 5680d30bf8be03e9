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


#ifndef IRSMA_HMA_HPP
#define IRSMA_HMA_HPP

#include "irsma/beamforming.hpp"
#include "irsma/noma.hpp"
#include "irsma/sca.hpp"
#include "irsma/schedule.hpp"
#include "irsma/thresholds.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace irsma
{

enum class OrderPolicy
{
    Proposed,    // ascending TDMA-based SNR
    Descending,
    Random,
    Exhaustive,  // best of all K! orders, K <= 8
    Explicit
};

OrderPolicy parse_order_policy(const std::string &name);
std::string to_string(OrderPolicy policy);

struct HmaOptions
{
    OrderPolicy order_policy = OrderPolicy::Proposed;
    std::vector<int> explicit_order;  // used with OrderPolicy::Explicit
    std::uint64_t order_seed = 0;     // used with OrderPolicy::Random
    BeamMode beam_mode = BeamMode::Dynamic;
    bool optimize_beams = true;       // false keeps the aligned TDMA beams throughout
    bool use_shortcuts = true;
    bool static_candidate = true;     // dynamic mode also continues from the shared-beam solution
    double relative_tolerance = 1e-4;
    int max_outer_iterations = 50;
    ScaSettings sca;
    FpSettings fp;
    NomaSettings noma;
};

struct AoTrace
{
    std::vector<double> delay;          // best delay after every outer iteration (entry 0 is the first SCA)
    std::vector<int> fp_iterations;
    std::vector<int> sca_iterations;
    std::vector<double> beam_change;    // max over slots of ||v_new - v_old||
};

enum class SolvePath
{
    SingleDevice,
    NomaShortcut,
    TdmaShortcut,
    Alternating
};

std::string to_string(SolvePath path);

struct SolveReport
{
    SolvePath path = SolvePath::Alternating;
    Regime regime = Regime::Hybrid;
    bool thresholds_evaluated = false;
    RegimeReport thresholds;
    double tdma_delay = 0.0;
    bool noma_feasible = false;
    double noma_delay = 0.0;
    AoTrace trace;
    int outer_iterations = 0;
    bool converged = true;
    FeasibilityReport feasibility;
};

struct HmaSolution
{
    Schedule schedule;
    BeamPlan beams;
    SolveReport report;

    double sum_delay() const { return schedule.sum_delay(); }
};

// Hybrid multiple access delay minimization: TDMA solve, ordering, NOMA solve, threshold
// shortcuts, then alternating FP beamforming and SCA resource allocation.
// Throws InfeasibleError when the energy budgets cannot be met.
HmaSolution solve_hma(const SystemConfig &config, const ChannelRealization &channels, const HmaOptions &options = {});

// Decoding order selected by a policy other than Exhaustive.
std::vector<int> select_order(const SystemConfig &config, const TdmaSolution &tdma, const HmaOptions &options);

} // namespace irsma

#endif
