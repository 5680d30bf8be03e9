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

#include "irsma/sca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace irsma
{

namespace
{

// Slope of tau log2(1 + s/tau) in tau and s at SINR u; the tangent is phi_t tau + phi_s s.
void tangent_slopes(double u, double &phi_t, double &phi_s)
{
    phi_t = (std::log1p(u) - u / (1.0 + u)) / std::numbers::ln2;
    phi_s = 1.0 / ((1.0 + u) * std::numbers::ln2);
}

double throughput_of(const Schedule &s, const Eigen::MatrixXd &gains, int k)
{
    double total = 0.0;
    for (int i = 0; i <= k; ++i)
    {
        if (s.tau[i] == 0.0)
            continue;
        double interference = 1.0;
        for (int j = i; j < k; ++j)
            interference += s.power(j, i) * gains(j, i);
        total += s.tau[i] * std::log1p(s.power(k, i) * gains(k, i) / interference) / std::numbers::ln2;
    }
    return total;
}

} // namespace

void StructuredConvexProblem::validate() const
{
    const int K = slots();
    if (K < 1)
        throw std::invalid_argument("Structured problem needs at least one device.");
    if (static_cast<int>(budgets.size()) != K || gains.rows() != K || gains.cols() != K ||
        local_power.rows() != K || local_power.cols() != K)
        throw std::invalid_argument("Structured problem dimensions are inconsistent.");
    for (int k = 0; k < K; ++k)
    {
        if (!(targets[k] > 0.0) || !(budgets[k] > 0.0) || !std::isfinite(targets[k]) || !std::isfinite(budgets[k]))
            throw std::invalid_argument("Structured problem targets and budgets must be positive.");
        for (int i = 0; i <= k; ++i)
        {
            if (!(gains(k, i) >= 0.0) || !std::isfinite(gains(k, i)) || !(local_power(k, i) >= 0.0) ||
                !std::isfinite(local_power(k, i)))
                throw std::invalid_argument("Structured problem gains and powers must be finite and nonnegative.");
        }
    }
}

StructuredSolution solve_structured_convex(const StructuredConvexProblem &problem, const std::vector<double> &tau0,
                                           const Eigen::MatrixXd &power0, const SolverSettings &settings)
{
    problem.validate();
    const int K = problem.slots();
    if (static_cast<int>(tau0.size()) != K || power0.rows() != K || power0.cols() != K)
        throw std::invalid_argument("Starting point dimensions are inconsistent.");
    const bool power = problem.regime == BudgetRegime::Power;
    const bool pin = power && problem.pin_last;

    double T = 0.0;
    for (double t : tau0)
        T += std::max(t, 0.0);
    T /= K;
    if (!(T > 0.0))
        throw std::invalid_argument("Starting point needs a positive total duration.");

    // Variable layout: tau_i -> i, then z_{k,i} (i <= k) row by row
    Eigen::MatrixXi zi = Eigen::MatrixXi::Constant(K, K, -1);
    int n = K;
    for (int k = 0; k < K; ++k)
    {
        if (pin && k == K - 1)
            break;
        for (int i = 0; i <= k; ++i)
            zi(k, i) = n++;
    }
    std::vector<double> Z(K);
    for (int k = 0; k < K; ++k)
        Z[k] = power ? problem.budgets[k] * T : problem.budgets[k] / (k + 1);

    ConvexProgram prog;
    prog.variables = n;
    prog.cost = Eigen::VectorXd::Zero(n);
    prog.cost.head(K).setOnes();

    for (int k = 0; k < K; ++k)
    {
        const double L = problem.targets[k];
        ConcaveConstraint c;
        c.rhs = 1.0;
        for (int i = 0; i <= k; ++i)
        {
            PerspectiveTerm term;
            term.t_var = i;
            term.weight = T / L;
            for (int j = i; j <= k; ++j)
            {
                const double g = problem.gains(j, i);
                if (g <= 0.0)
                    continue;
                if (zi(j, i) >= 0)
                    term.s.emplace_back(zi(j, i), g * Z[j] / T);
                else
                    term.s.emplace_back(i, g * problem.budgets[j]);  // pinned z = tau P
            }
            c.terms.push_back(std::move(term));
        }
        for (int i = 0; i < k; ++i)
        {
            double u = 0.0;
            for (int j = i; j < k; ++j)
                u += problem.local_power(j, i) * problem.gains(j, i);
            double phi_t = 0.0, phi_s = 0.0;
            tangent_slopes(u, phi_t, phi_s);
            if (phi_t != 0.0)
                c.linear.emplace_back(i, phi_t * T / L);
            for (int j = i; j < k; ++j)
            {
                const double g = problem.gains(j, i);
                if (g > 0.0)
                    c.linear.emplace_back(zi(j, i), phi_s * g * Z[j] / L);
            }
        }
        prog.concave.push_back(std::move(c));
    }

    for (int k = 0; k < K; ++k)
    {
        if (zi(k, 0) < 0)
            continue;
        if (power)
        {
            for (int i = 0; i <= k; ++i)
                prog.linear.push_back({{{zi(k, i), 1.0}, {i, -1.0}}, 0.0});
        }
        else
        {
            LinearConstraint c;
            for (int i = 0; i <= k; ++i)
                c.a.emplace_back(zi(k, i), Z[k] / problem.budgets[k]);
            c.b = 1.0;
            prog.linear.push_back(std::move(c));
        }
    }

    Eigen::VectorXd x0(n);
    for (int i = 0; i < K; ++i)
        x0[i] = std::max(tau0[i] / T, 1e-8);
    for (int k = 0; k < K; ++k)
    {
        for (int i = 0; i <= k; ++i)
        {
            if (zi(k, i) >= 0)
                // Entries at zero start well inside so Newton does not crawl away from the boundary
                x0[zi(k, i)] = std::max(std::max(tau0[i], 0.0) * power0(k, i) / Z[k], 1e-3 * (power ? x0[i] : 1.0));
        }
    }

    const auto res = solve_convex_program(prog, x0, settings);

    StructuredSolution out;
    out.report = res.report;
    out.tau.resize(K);
    out.power = Eigen::MatrixXd::Zero(K, K);
    out.energy = Eigen::MatrixXd::Zero(K, K);
    for (int i = 0; i < K; ++i)
        out.tau[i] = T * res.x[i];
    for (std::size_t k = 0; k < res.report.concave_multipliers.size(); ++k)
        out.qos_multipliers.push_back(T * res.report.concave_multipliers[k] / problem.targets[k]);
    for (int k = 0; k < K; ++k)
    {
        for (int i = 0; i <= k; ++i)
        {
            if (zi(k, i) >= 0)
            {
                out.energy(k, i) = Z[k] * res.x[zi(k, i)];
                out.power(k, i) = out.energy(k, i) / out.tau[i];
            }
            else
            {
                out.power(k, i) = problem.budgets[k];
                out.energy(k, i) = out.tau[i] * problem.budgets[k];
            }
        }
    }
    return out;
}

double interference_term(double tau, const std::vector<double> &z, const std::vector<double> &gains)
{
    if (z.size() != gains.size())
        throw std::invalid_argument("interference_term: length mismatch.");
    double s = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j)
        s += gains[j] * z[j];
    return perspective_log2(tau, s);
}

double taylor_bound(double tau_hat, const std::vector<double> &z_hat, double tau, const std::vector<double> &z,
                    const std::vector<double> &gains)
{
    if (!(tau_hat > 0.0))
        throw std::invalid_argument("taylor_bound: expansion duration must be positive.");
    if (z_hat.size() != gains.size() || z.size() != gains.size())
        throw std::invalid_argument("taylor_bound: length mismatch.");
    double u = 0.0, s = 0.0;
    for (std::size_t j = 0; j < gains.size(); ++j)
    {
        u += gains[j] * z_hat[j] / tau_hat;
        s += gains[j] * z[j];
    }
    double phi_t = 0.0, phi_s = 0.0;
    tangent_slopes(u, phi_t, phi_s);
    return phi_t * tau + phi_s * s;
}

std::vector<double> delivered_throughput(const Schedule &schedule, const Eigen::MatrixXd &gains)
{
    std::vector<double> out(schedule.slots());
    for (int k = 0; k < schedule.slots(); ++k)
        out[k] = throughput_of(schedule, gains, k);
    return out;
}

void tighten_schedule(const SystemConfig &config, const Eigen::MatrixXd &gains, Schedule &s, bool pin_last)
{
    const int K = s.slots();
    const bool power = config.regime == BudgetRegime::Power;
    for (int k = 0; k < K; ++k)
    {
        const double L = config.normalized_target(s.order[k]);
        const double budget = config.devices[s.order[k]].budget;
        if (power && pin_last && k == K - 1)
        {
            // Only the last device transmits in the last slot
            s.tau[k] = 0.0;
            const double others = throughput_of(s, gains, k);
            const double rate = std::log1p(budget * gains(k, k)) / std::numbers::ln2;
            s.tau[k] = std::max(0.0, (L - others) / rate);
            s.power(k, k) = budget;
            continue;
        }

        const Eigen::VectorXd base = s.power.row(k).transpose();
        auto delivered = [&](double alpha)
        {
            s.power.row(k) = alpha * base.transpose();
            return throughput_of(s, gains, k) - L;
        };
        double alpha_max = std::numeric_limits<double>::infinity();
        if (power)
        {
            for (int i = 0; i <= k; ++i)
            {
                if (s.tau[i] > 0.0 && base[i] > 0.0)
                    alpha_max = std::min(alpha_max, budget / base[i]);
            }
        }
        else
        {
            double used = 0.0;
            for (int i = 0; i <= k; ++i)
                used += s.tau[i] * base[i];
            if (used > 0.0)
                alpha_max = budget / used;
        }
        if (!std::isfinite(alpha_max) || alpha_max <= 0.0)
        {
            s.power.row(k) = base.transpose();
            continue;
        }
        const double f1 = delivered(1.0);
        double alpha = 1.0;
        if (f1 > 0.0)
            alpha = bisect(delivered, 0.0, 1.0, 1e-15);
        else if (f1 < 0.0 && alpha_max > 1.0 && delivered(alpha_max) >= 0.0)
            alpha = bisect(delivered, 1.0, alpha_max, 1e-15 * alpha_max);
        // Bisection may stop on either side of the root; keep the side that meets the target
        double a = alpha;
        if (delivered(a) < 0.0)
            a = std::min(alpha * (1.0 + 4e-15), std::max(alpha_max, 1.0));
        if (delivered(a) < 0.0)
            a = (f1 >= 0.0) ? 1.0 : alpha;
        s.power.row(k) = a * base.transpose();
    }
}

ScaResult sca_resource_allocation(const SystemConfig &config, const ChannelRealization &channels,
                                  const BeamPlan &beams, const Schedule &warm, const ScaSettings &settings)
{
    const int K = config.device_count();
    warm.check_shape(K);
    const bool power = config.regime == BudgetRegime::Power;
    const bool pin = power && settings.pin_last;
    const Eigen::MatrixXd gains = gain_table(config, channels, warm.order, beams);
    const double tol = settings.solver.feasibility_tol;

    StructuredConvexProblem prob;
    prob.regime = config.regime;
    prob.gains = gains;
    prob.pin_last = settings.pin_last;
    for (int k = 0; k < K; ++k)
    {
        prob.targets.push_back(config.normalized_target(warm.order[k]));
        prob.budgets.push_back(config.devices[warm.order[k]].budget);
    }

    ScaResult result;
    result.schedule = warm;
    ScaReport &rep = result.report;
    FeasibilityReport feas = evaluate_schedule(config, channels, warm, beams, tol);
    rep.start_feasible = feas.feasible;
    double current = feas.feasible ? warm.sum_delay() : std::numeric_limits<double>::infinity();
    if (feas.feasible)
        rep.delay_trace.push_back(current);
    rep.feasibility = feas;

    Schedule point = warm;
    for (int it = 0; it < settings.max_iterations; ++it)
    {
        prob.local_power = point.power;
        const auto sol = solve_structured_convex(prob, point.tau, point.power, settings.solver);
        rep.iterations = it + 1;
        rep.newton_iterations += sol.report.newton_iterations;
        if (!sol.qos_multipliers.empty())
            rep.qos_multipliers = sol.qos_multipliers;
        if (sol.report.status == SolveStatus::Infeasible)
        {
            rep.restriction_infeasible = true;
            break;
        }

        Schedule cand;
        cand.order = warm.order;
        cand.tau = sol.tau;
        cand.power = sol.power;
        const double slack_floor = settings.solver.tau_floor;

        // Zero-duration slots, kept only when the schedule stays feasible without them
        Schedule trimmed = cand;
        bool trimmed_any = false;
        for (int i = 0; i < K; ++i)
        {
            if (trimmed.tau[i] < slack_floor)
            {
                trimmed.tau[i] = 0.0;
                for (int k = i; k < K; ++k)
                    trimmed.power(k, i) = (pin && k == K - 1) ? prob.budgets[k] : 0.0;
                trimmed_any = true;
            }
        }
        tighten_schedule(config, gains, trimmed, pin);
        FeasibilityReport cf = evaluate_schedule(config, channels, trimmed, beams, tol);
        if (trimmed_any && !cf.feasible)
        {
            trimmed = cand;
            tighten_schedule(config, gains, trimmed, pin);
            cf = evaluate_schedule(config, channels, trimmed, beams, tol);
        }
        if (!cf.feasible)
            break;

        const double delay = trimmed.sum_delay();
        if (!(delay < current))
        {
            rep.converged = std::isfinite(current);
            break;
        }
        const double previous = current;
        current = delay;
        result.schedule = trimmed;
        rep.feasibility = cf;
        rep.delay_trace.push_back(delay);
        // Expand the next restriction at the untrimmed SINRs so dead slots can revive
        point = trimmed;
        for (int i = 0; i < K; ++i)
        {
            if (point.tau[i] == 0.0)
            {
                point.tau[i] = cand.tau[i];
                for (int k = i; k < K; ++k)
                    point.power(k, i) = cand.power(k, i);
            }
        }
        if (std::isfinite(previous) && (previous - delay) / previous < settings.relative_tolerance)
        {
            rep.converged = true;
            break;
        }
    }
    if (!rep.converged && rep.iterations >= settings.max_iterations)
        rep.converged = false;
    return result;
}

} // namespace irsma
