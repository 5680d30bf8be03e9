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

#ifndef IRSMA_NUMERICS_HPP
#define IRSMA_NUMERICS_HPP

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace irsma
{

// Lower real branch W_{-1}(x) for -1/e <= x < 0; returns w <= -1 with w*exp(w) = x.
// Throws std::domain_error outside the domain.
double lambert_w_m1(double x);

// Root of a monotone f on [lo, hi] by bisection, stopping when the bracket is narrower than tol.
// Throws std::invalid_argument if f(lo) and f(hi) have the same strict sign.
double bisect(const std::function<double(double)> &f, double lo, double hi, double tol);

// Perspective of log2(1 + .): t*log2(1 + s/t) for t > 0, s >= 0, with value 0 at t = 0.
double perspective_log2(double t, double s);

struct SolverSettings
{
    double feasibility_tol = 1e-8;   // relative constraint violation accepted on return
    double kkt_tol = 1e-6;           // scaled stationarity residual
    double gap_tol = 1e-10;          // relative duality gap bound m/t
    double barrier_growth = 8.0;     // mu
    int max_newton_per_center = 200;
    int max_iterations = 4000;       // Newton steps over all centering phases
    double tau_floor = 1e-9;         // s; slots below are reported as zero-duration
};

// sum_j weight * perspective_log2(x[t_var], a . x)
struct PerspectiveTerm
{
    int t_var = 0;
    double weight = 1.0;
    std::vector<std::pair<int, double>> s;  // nonnegative coefficients
};

// sum(terms) - linear . x >= rhs   (concave in x)
struct ConcaveConstraint
{
    std::vector<PerspectiveTerm> terms;
    std::vector<std::pair<int, double>> linear;
    double rhs = 0.0;
};

// a . x <= b
struct LinearConstraint
{
    std::vector<std::pair<int, double>> a;
    double b = 0.0;
};

// min cost . x  s.t. concave and linear constraints, x > 0 componentwise.
struct ConvexProgram
{
    int variables = 0;
    Eigen::VectorXd cost;
    std::vector<ConcaveConstraint> concave;
    std::vector<LinearConstraint> linear;
};

enum class SolveStatus
{
    Converged,
    Infeasible,
    MaxIterations
};

std::string to_string(SolveStatus s);

struct BarrierReport
{
    SolveStatus status = SolveStatus::MaxIterations;
    int newton_iterations = 0;
    int phase1_iterations = 0;
    double phase1_value = 0.0;        // minimum of the max scaled violation; < 0 means strictly feasible
    double duality_gap = 0.0;         // m / t at exit
    double kkt_residual = 0.0;        // scaled stationarity residual with barrier multipliers
    double max_violation = 0.0;       // largest constraint violation of the returned point
    std::vector<double> objective_trace;  // cost . x after each centering phase
    std::vector<double> concave_multipliers;  // dual estimates 1 / (t g_j(x)) of the concave constraints
};

struct BarrierResult
{
    Eigen::VectorXd x;
    BarrierReport report;
};

// Value g(x) of a concave constraint (sum of terms minus linear part minus rhs).
double concave_value(const ConcaveConstraint &c, const Eigen::VectorXd &x);

// Log-barrier interior point method with a Phase I feasibility stage.
// x0 must be componentwise positive; it need not be feasible.
BarrierResult solve_convex_program(const ConvexProgram &program, const Eigen::VectorXd &x0,
                                   const SolverSettings &settings = {});

} // namespace irsma

#endif
