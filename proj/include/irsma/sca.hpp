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

#ifndef IRSMA_SCA_HPP
#define IRSMA_SCA_HPP

#include "irsma/numerics.hpp"
#include "irsma/schedule.hpp"
#include "irsma/system_model.hpp"

#include <vector>

namespace irsma
{

// Convex restriction of the delay problem at a fixed order and beam plan. Ordered device k needs
//   sum_{i<=k} tau_i log2(1 + S_{i,k}) - sum_{i<k} T_{k,i}(tau_i, z) >= targets[k],
// S_{i,k} = sum_{j=i..k} gains(j,i) z_{j,i} / tau_i, where T_{k,i} is the tangent of
// tau_i log2(1 + S_{i,k-1}) taken at the SINR implied by local_power.
struct StructuredConvexProblem
{
    BudgetRegime regime = BudgetRegime::Power;
    std::vector<double> targets;  // bits/Hz per ordered device
    std::vector<double> budgets;  // W or J per ordered device
    Eigen::MatrixXd gains;        // gains(k, i)
    Eigen::MatrixXd local_power;  // expansion point p_hat(k, i)
    bool pin_last = true;         // power regime: z_{K,i} = tau_i P_K

    int slots() const { return static_cast<int>(targets.size()); }
    void validate() const;
};

struct StructuredSolution
{
    std::vector<double> tau;
    Eigen::MatrixXd power;   // z / tau, pinned rows set to the budget
    Eigen::MatrixXd energy;  // z
    std::vector<double> qos_multipliers;  // delay sensitivity (s per bits/Hz) of each target
    BarrierReport report;
};

// Solves the restriction from a positive start (tau0, power0); Phase I runs when the start is not interior.
StructuredSolution solve_structured_convex(const StructuredConvexProblem &problem, const std::vector<double> &tau0,
                                           const Eigen::MatrixXd &power0, const SolverSettings &settings = {});

// First-order upper bound of tau log2(1 + sum_j gains_j z_j / tau) expanded at (tau_hat, z_hat).
// Equals the exact value at the expansion point. Throws std::invalid_argument when tau_hat <= 0.
double taylor_bound(double tau_hat, const std::vector<double> &z_hat, double tau, const std::vector<double> &z,
                    const std::vector<double> &gains);

// tau log2(1 + sum_j gains_j z_j / tau)
double interference_term(double tau, const std::vector<double> &z, const std::vector<double> &gains);

struct ScaSettings
{
    double relative_tolerance = 1e-4;  // stop once the fractional delay decrease falls below it
    int max_iterations = 100;
    bool pin_last = true;
    SolverSettings solver;
};

struct ScaReport
{
    int iterations = 0;
    int newton_iterations = 0;
    bool converged = false;
    bool start_feasible = true;
    bool restriction_infeasible = false;  // a convex restriction had no interior point
    std::vector<double> delay_trace;      // accepted delays, starting with the warm start when feasible
    std::vector<double> qos_multipliers;  // from the last convex restriction solved, per ordered device
    FeasibilityReport feasibility;
};

struct ScaResult
{
    Schedule schedule;
    ScaReport report;
};

// Successive convex approximation of the resource allocation for fixed beams, warm-started at `warm`.
// The returned schedule never has larger delay than a feasible warm start.
ScaResult sca_resource_allocation(const SystemConfig &config, const ChannelRealization &channels,
                                  const BeamPlan &beams, const Schedule &warm, const ScaSettings &settings = {});

// Makes every QoS constraint active without increasing delay: scales each device's powers
// and, for a pinned last device, shortens its own slot. Gains as in gain_table.
void tighten_schedule(const SystemConfig &config, const Eigen::MatrixXd &gains, Schedule &schedule, bool pin_last);

// Delivered bits/Hz per ordered device under a gain table.
std::vector<double> delivered_throughput(const Schedule &schedule, const Eigen::MatrixXd &gains);

} // namespace irsma

#endif
