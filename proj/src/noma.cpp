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


#include "irsma/noma.hpp"
#include "irsma/beamforming.hpp"
#include "irsma/ordering.hpp"
#include "irsma/tdma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace irsma
{

namespace
{

constexpr int bracket_doublings = 200;
constexpr int monotonicity_samples = 16;
constexpr int fallback_samples = 4096;

struct FixedBeamProblem
{
    BudgetRegime regime;
    std::vector<double> targets;
    std::vector<double> budgets;
    std::vector<double> gains;

    // Largest budget use ratio; at most 1 means feasible.
    double load(double tau) const
    {
        const auto p = recursive_powers(tau, targets, gains);
        double worst = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k)
        {
            const double use = regime == BudgetRegime::Power ? p[k] : p[k] * tau;
            worst = std::max(worst, use / budgets[k]);
        }
        return std::isnan(worst) ? std::numeric_limits<double>::infinity() : worst;
    }
    bool feasible(double tau) const { return load(tau) <= 1.0; }

    // Every per-device use ratio nonincreasing on a grid of [lo, hi].
    bool sampled_monotone(double lo, double hi) const
    {
        std::vector<double> prev;
        for (int s = 0; s <= monotonicity_samples; ++s)
        {
            const double tau = lo + (hi - lo) * s / monotonicity_samples;
            const auto p = recursive_powers(tau, targets, gains);
            std::vector<double> use(p.size());
            for (std::size_t k = 0; k < p.size(); ++k)
                use[k] = regime == BudgetRegime::Power ? p[k] : p[k] * tau;
            if (!prev.empty())
            {
                for (std::size_t k = 0; k < use.size(); ++k)
                {
                    if (std::isfinite(prev[k]) && use[k] > prev[k] * (1.0 + 1e-12))
                        return false;
                }
            }
            prev = std::move(use);
        }
        return true;
    }
};

} // namespace

Schedule NomaSolution::to_schedule() const
{
    const int K = static_cast<int>(order.size());
    Schedule s;
    s.order = order;
    s.tau.assign(K, 0.0);
    s.tau[0] = tau;
    s.power = Eigen::MatrixXd::Zero(K, K);
    for (int k = 0; k < K; ++k)
        s.power(k, 0) = power[k];
    return s;
}

std::vector<double> recursive_powers(double tau, const std::vector<double> &targets, const std::vector<double> &gains)
{
    if (!(tau > 0.0))
        throw std::invalid_argument("recursive_powers: slot length must be positive.");
    if (targets.size() != gains.size())
        throw std::invalid_argument("recursive_powers: target and gain arrays differ in length.");
    std::vector<double> p(targets.size());
    double interference = 1.0;
    for (std::size_t k = 0; k < targets.size(); ++k)
    {
        p[k] = std::expm1(targets[k] / tau * std::numbers::ln2) * interference / gains[k];
        interference += p[k] * gains[k];
    }
    return p;
}

NomaSolution noma_min_delay_fixed_beam(const SystemConfig &config, const ChannelRealization &channels,
                                       const std::vector<int> &order, const BeamVector &beam)
{
    const int K = config.device_count();
    if (static_cast<int>(order.size()) != K)
        throw std::invalid_argument("NOMA order must list every device.");
    FixedBeamProblem prob{config.regime, {}, {}, {}};
    double lo = 0.0;
    for (int k = 0; k < K; ++k)
    {
        const int d = order[k];
        const double L = config.normalized_target(d);
        const double g = snr_gain(channels.composite.at(d), beam, config.noise_power_w);
        const double budget = config.devices[d].budget;
        if (!(g > 0.0))
            throw InfeasibleError("Device " + std::to_string(d + 1) + " has no channel gain under the NOMA beam.");
        prob.targets.push_back(L);
        prob.budgets.push_back(budget);
        prob.gains.push_back(g);
        double alone = 0.0;
        if (config.regime == BudgetRegime::Power)
            alone = L / std::log2(1.0 + budget * g);
        else
        {
            try
            {
                alone = energy_limited_duration(L, budget, g);
            }
            catch (const InfeasibleError &)
            {
                throw InfeasibleError("Device " + std::to_string(d + 1) +
                                      ": energy does not exceed the minimum required energy under the NOMA beam.");
            }
        }
        lo = std::max(lo, alone);
    }

    NomaSolution sol;
    sol.order = order;
    sol.beam = beam;
    double tau = lo;
    if (!prob.feasible(lo))
    {
        double hi = 2.0 * lo;
        int grow = 0;
        while (!prob.feasible(hi))
        {
            lo = hi;
            hi *= 2.0;
            if (++grow > bracket_doublings)
                throw std::runtime_error("NOMA delay search failed to bracket a feasible slot length.");
        }
        if (!prob.sampled_monotone(lo, hi))
        {
            // Scan for the first feasible grid point, then refine between it and its predecessor
            sol.monotonicity_fallback = true;
            double prev = lo;
            for (int s = 1; s <= fallback_samples; ++s)
            {
                const double t = lo + (hi - lo) * s / fallback_samples;
                if (prob.feasible(t))
                {
                    lo = prev;
                    hi = t;
                    break;
                }
                prev = t;
            }
        }
        const double tol = std::max(1e-10 * (hi - lo), 1e-12);
        while (hi - lo > tol)
        {
            const double mid = 0.5 * (lo + hi);
            if (prob.feasible(mid))
                hi = mid;
            else
                lo = mid;
        }
        tau = hi;
    }
    sol.tau = tau;
    sol.power = recursive_powers(tau, prob.targets, prob.gains);
    for (int k = 0; k < K; ++k)
    {
        // Rounding may leave the binding device a hair above its budget
        const double cap = config.regime == BudgetRegime::Power ? prob.budgets[k] : prob.budgets[k] / tau;
        sol.power[k] = std::min(sol.power[k], cap);
    }
    sol.delay = tau;
    return sol;
}

NomaSolution solve_noma(const SystemConfig &config, const ChannelRealization &channels, const std::vector<int> &order,
                        const NomaSettings &settings)
{
    const int K = config.device_count();
    if (static_cast<int>(order.size()) != K)
        throw std::invalid_argument("NOMA order must list every device.");

    // Initial beam: the best of the beams aligned to each device, weakest aligned gain first on ties
    std::vector<int> by_gain = order;
    std::vector<double> aligned_gain(config.device_count());
    for (int d : order)
    {
        const auto &b = channels.composite.at(d);
        aligned_gain[d] = snr_gain(b, aligned_beam(b), config.noise_power_w);
    }
    std::stable_sort(by_gain.begin(), by_gain.end(),
                     [&](int a, int b) { return aligned_gain[a] < aligned_gain[b]; });

    NomaSolution best;
    bool found = false;
    std::string failure;
    for (int d : by_gain)
    {
        try
        {
            NomaSolution cand = noma_min_delay_fixed_beam(config, channels, order, aligned_beam(channels.composite[d]));
            if (!found || cand.delay < best.delay)
                best = std::move(cand);
            found = true;
        }
        catch (const InfeasibleError &e)
        {
            if (failure.empty())
                failure = e.what();
        }
    }
    if (!found)
        throw InfeasibleError("NOMA is infeasible under every aligned beam: " + failure);
    best.trace.push_back(best.delay);

    auto attempt = [&](const BeamVector &v, NomaSolution &out)
    {
        try
        {
            out = noma_min_delay_fixed_beam(config, channels, order, v);
        }
        catch (const InfeasibleError &)
        {
            return false;
        }
        return out.delay < best.delay;
    };

    for (int it = 0; it < settings.max_iterations; ++it)
    {
        best.iterations = it + 1;
        const Schedule schedule = best.to_schedule();
        const BeamPlan current = best.beams();
        NomaSolution cand;
        bool improved = false;
        FpSettings fp;
        fp.mode = BeamMode::Dynamic;
        const BeamPlan free = fp_beamforming(config, channels, schedule, current, fp).beams;
        for (double t : {1.0, 0.5, 0.25, 0.125})
        {
            improved = attempt((t == 1.0 ? free : interpolate_beams(current, free, t)).front(), cand);
            if (improved)
                break;
        }
        if (!improved)
        {
            fp.preserve_feasibility = true;
            improved = attempt(fp_beamforming(config, channels, schedule, current, fp).beams.front(), cand);
        }
        if (!improved)
            break;
        const double decrease = (best.delay - cand.delay) / best.delay;
        cand.trace = std::move(best.trace);
        cand.trace.push_back(cand.delay);
        cand.iterations = best.iterations;
        cand.monotonicity_fallback = cand.monotonicity_fallback || best.monotonicity_fallback;
        best = std::move(cand);
        if (decrease < settings.relative_tolerance)
            break;
    }
    return best;
}

NomaSolution solve_noma(const SystemConfig &config, const ChannelRealization &channels)
{
    const auto tdma = solve_tdma(config, channels);
    return solve_noma(config, channels, propose_order(tdma_snr(tdma)));
}

} // namespace irsma
