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


#include "irsma/hma.hpp"
#include "irsma/ordering.hpp"
#include "irsma/tdma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace irsma
{

namespace
{

constexpr int max_exhaustive_devices = 8;

// Single-device slots along the order, all under one beam.
Schedule shared_beam_tdma(const SystemConfig &config, const ChannelRealization &channels,
                          const std::vector<int> &order, const BeamVector &beam)
{
    const int K = config.device_count();
    Schedule s;
    s.order = order;
    s.tau.assign(K, 0.0);
    s.power = Eigen::MatrixXd::Zero(K, K);
    for (int k = 0; k < K; ++k)
    {
        const int d = order[k];
        const double g = snr_gain(channels.composite[d], beam, config.noise_power_w);
        const double L = config.normalized_target(d);
        const double budget = config.devices[d].budget;
        if (config.regime == BudgetRegime::Power)
        {
            s.tau[k] = L / std::log2(1.0 + budget * g);
            s.power(k, k) = budget;
        }
        else
        {
            s.tau[k] = energy_limited_duration(L, budget, g);
            s.power(k, k) = budget / s.tau[k];
        }
    }
    return s;
}

// The last device transmits at full power in every slot; its own slot shrinks accordingly.
void pin_last_device(const SystemConfig &config, const ChannelRealization &channels, Schedule &s,
                     const BeamPlan &beams)
{
    const int K = s.slots();
    const double P = config.devices[s.order[K - 1]].budget;
    for (int i = 0; i < K; ++i)
        s.power(K - 1, i) = P;
    const Eigen::MatrixXd gains = gain_table(config, channels, s.order, beams);
    const double L = config.normalized_target(s.order[K - 1]);
    s.tau[K - 1] = 0.0;
    const double others = delivered_throughput(s, gains)[K - 1];
    s.tau[K - 1] = std::max(0.0, (L - others) / std::log2(1.0 + P * gains(K - 1, K - 1)));
}

double beam_change(const BeamPlan &a, const BeamPlan &b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, (a[i].values() - b[i].values()).norm());
    return worst;
}

struct AoState
{
    Schedule schedule;
    BeamPlan beams;
    double delay = std::numeric_limits<double>::infinity();
    std::vector<double> multipliers;  // delay sensitivity of each target at the current schedule
};

constexpr double damping_steps[] = {1.0, 0.5, 0.25, 0.125};

// Outer FP/SCA alternation from a feasible state; only delay-reducing steps are accepted.
// Beam candidates, tried in turn until one lowers the delay: the FP update weighted by the
// delay sensitivities of the targets (with damped phase steps), then the update that keeps every
// target met.
void alternate(const SystemConfig &config, const ChannelRealization &channels, const HmaOptions &options,
               AoState &state, SolveReport &report)
{
    while (report.outer_iterations < options.max_outer_iterations)
    {
        ++report.outer_iterations;
        int fp_iterations = 0;
        int sca_iterations = 0;
        bool accepted = false;
        ScaResult best;
        BeamPlan best_beams;

        auto try_beams = [&](const BeamPlan &beams)
        {
            ScaResult sca = sca_resource_allocation(config, channels, beams, state.schedule, options.sca);
            sca_iterations += sca.report.iterations;
            if (sca.report.feasibility.feasible && sca.schedule.sum_delay() < state.delay)
            {
                best = std::move(sca);
                best_beams = beams;
                accepted = true;
            }
        };

        FpSettings fp = options.fp;
        fp.mode = options.beam_mode;
        if (!state.multipliers.empty())
        {
            fp.weights = state.multipliers;
            fp.preserve_feasibility = false;
            const FpResult weighted = fp_beamforming(config, channels, state.schedule, state.beams, fp);
            fp_iterations += weighted.iterations;
            for (double t : damping_steps)
            {
                try_beams(t == 1.0 ? weighted.beams : interpolate_beams(state.beams, weighted.beams, t));
                if (accepted)
                    break;
            }
        }
        if (!accepted)
        {
            fp.weights.clear();
            fp.preserve_feasibility = true;
            const FpResult kept = fp_beamforming(config, channels, state.schedule, state.beams, fp);
            fp_iterations += kept.iterations;
            try_beams(kept.beams);
        }

        report.trace.fp_iterations.push_back(fp_iterations);
        report.trace.sca_iterations.push_back(sca_iterations);
        if (!accepted)
        {
            report.trace.beam_change.push_back(0.0);
            report.trace.delay.push_back(state.delay);
            return;
        }
        const double delay = best.schedule.sum_delay();
        report.trace.beam_change.push_back(beam_change(state.beams, best_beams));
        const double decrease = (state.delay - delay) / state.delay;
        state.schedule = std::move(best.schedule);
        state.beams = std::move(best_beams);
        state.delay = delay;
        if (!best.report.qos_multipliers.empty())
            state.multipliers = best.report.qos_multipliers;
        report.trace.delay.push_back(delay);
        if (decrease < options.relative_tolerance)
            return;
    }
    report.converged = false;
}

HmaSolution finish(const SystemConfig &config, const ChannelRealization &channels, Schedule schedule, BeamPlan beams,
                   SolveReport report)
{
    if (config.regime == BudgetRegime::Power && schedule.slots() > 0)
        pin_last_device(config, channels, schedule, beams);
    report.feasibility = evaluate_schedule(config, channels, schedule, beams);
    return HmaSolution{std::move(schedule), std::move(beams), std::move(report)};
}

HmaSolution solve_fixed_order(const SystemConfig &config, const ChannelRealization &channels,
                              const TdmaSolution &tdma, const std::vector<int> &order, const HmaOptions &options)
{
    const int K = config.device_count();
    SolveReport report;
    report.tdma_delay = tdma.sum_delay;
    const bool dynamic = options.beam_mode == BeamMode::Dynamic;

    if (K == 1)
    {
        report.path = SolvePath::SingleDevice;
        report.regime = Regime::PureTdma;
        report.trace.delay.push_back(tdma.sum_delay);
        return finish(config, channels, tdma_schedule(tdma, order), tdma_beams(tdma, order), std::move(report));
    }

    NomaSolution noma;
    if (options.optimize_beams)
    {
        try
        {
            noma = solve_noma(config, channels, order, options.noma);
            report.noma_feasible = true;
            report.noma_delay = noma.delay;
        }
        catch (const InfeasibleError &)
        {
            report.noma_feasible = false;
        }
    }

    SolvePath shortcut = SolvePath::Alternating;
    if (options.optimize_beams && options.use_shortcuts)
    {
        const BeamVector v1 = report.noma_feasible ? noma.beam : aligned_beam(channels.composite[order[0]]);
        report.thresholds = classify_regime(config, channels, order, v1, tdma);
        report.thresholds_evaluated = true;
        Regime regime = report.thresholds.regime;
        if (regime == Regime::PureNoma && !report.noma_feasible)
        {
            const auto &side = report.thresholds.tdma_side;
            const bool all_tdma = config.regime == BudgetRegime::Energy &&
                                  std::all_of(side.begin() + 1, side.end(), [](bool b) { return b; });
            regime = all_tdma ? Regime::PureTdma : Regime::Hybrid;
        }
        if (regime == Regime::PureNoma && report.thresholds.both_collapse && tdma.sum_delay < noma.delay)
            regime = Regime::PureTdma;
        report.regime = regime;
        // The collapse results hold for a beam shared by both protocols; with per-slot beams the other
        // protocol or the first resource allocation can still be shorter, and then the loop runs instead.
        const bool noma_ok = !dynamic || noma.delay <= tdma.sum_delay;
        const bool tdma_ok = !report.noma_feasible || tdma.sum_delay <= noma.delay;
        if (regime == Regime::PureNoma && noma_ok)
            shortcut = SolvePath::NomaShortcut;
        if (regime == Regime::PureTdma && dynamic && tdma_ok)
            shortcut = SolvePath::TdmaShortcut;
    }
    else
    {
        report.regime = Regime::Hybrid;
    }
    report.path = SolvePath::Alternating;

    // Initial beams: aligned TDMA beams, or one aligned beam shared by every slot
    BeamPlan beams;
    Schedule warm;
    if (dynamic)
    {
        beams = tdma_beams(tdma, order);
        warm = tdma_schedule(tdma, order);
    }
    else
    {
        bool found = false;
        for (int k = 0; k < K && !found; ++k)
        {
            const BeamVector v = aligned_beam(channels.composite[order[k]]);
            try
            {
                warm = shared_beam_tdma(config, channels, order, v);
                beams.assign(K, v);
                found = true;
            }
            catch (const InfeasibleError &)
            {
            }
        }
        if (!found)
        {
            if (!report.noma_feasible)
                throw InfeasibleError("No shared IRS beam admits a feasible schedule.");
            warm = noma.to_schedule();
            beams = noma.beams();
        }
    }

    AoState state;
    const ScaResult first = sca_resource_allocation(config, channels, beams, warm, options.sca);
    state.schedule = first.report.feasibility.feasible ? first.schedule : warm;
    state.beams = beams;
    state.delay = state.schedule.sum_delay();
    state.multipliers = first.report.qos_multipliers;
    report.trace.delay.push_back(state.delay);
    report.trace.sca_iterations.push_back(first.report.iterations);
    report.trace.fp_iterations.push_back(0);
    report.trace.beam_change.push_back(0.0);

    if (shortcut != SolvePath::Alternating)
    {
        const bool take_noma = shortcut == SolvePath::NomaShortcut;
        const double d = take_noma ? noma.delay : tdma.sum_delay;
        if (d <= state.delay * (1.0 + 1e-12))
        {
            report.path = shortcut;
            report.trace = AoTrace{};
            report.trace.delay.push_back(d);
            if (take_noma)
                return finish(config, channels, noma.to_schedule(), noma.beams(), std::move(report));
            return finish(config, channels, tdma_schedule(tdma, order), tdma_beams(tdma, order), std::move(report));
        }
    }

    if (options.optimize_beams)
    {
        alternate(config, channels, options, state, report);
        if (report.noma_feasible && noma.delay < state.delay)
        {
            // The single-slot solution is a point of the hybrid problem; continue from it
            AoState from_noma{noma.to_schedule(), noma.beams(), noma.delay, {}};
            const ScaResult polish = sca_resource_allocation(config, channels, from_noma.beams, from_noma.schedule,
                                                             options.sca);
            from_noma.multipliers = polish.report.qos_multipliers;
            if (polish.report.feasibility.feasible && polish.schedule.sum_delay() < from_noma.delay)
            {
                from_noma.schedule = polish.schedule;
                from_noma.delay = polish.schedule.sum_delay();
            }
            report.trace.delay.push_back(noma.delay);
            report.trace.fp_iterations.push_back(0);
            report.trace.sca_iterations.push_back(0);
            report.trace.beam_change.push_back(beam_change(state.beams, from_noma.beams));
            alternate(config, channels, options, from_noma, report);
            state = std::move(from_noma);
        }
        if (dynamic && options.static_candidate)
        {
            // A shared-beam solution is a point of the per-slot problem; continue from it when better
            HmaOptions shared = options;
            shared.beam_mode = BeamMode::Static;
            shared.static_candidate = false;
            const HmaSolution st = solve_fixed_order(config, channels, tdma, order, shared);
            if (st.report.feasibility.feasible && st.sum_delay() < state.delay)
            {
                AoState from_static{st.schedule, st.beams, st.sum_delay(), {}};
                const ScaResult polish = sca_resource_allocation(config, channels, from_static.beams,
                                                                 from_static.schedule, options.sca);
                from_static.multipliers = polish.report.qos_multipliers;
                if (polish.report.feasibility.feasible && polish.schedule.sum_delay() < from_static.delay)
                {
                    from_static.schedule = polish.schedule;
                    from_static.delay = polish.schedule.sum_delay();
                }
                report.trace.delay.push_back(from_static.delay);
                report.trace.fp_iterations.push_back(0);
                report.trace.sca_iterations.push_back(polish.report.iterations);
                report.trace.beam_change.push_back(beam_change(state.beams, from_static.beams));
                alternate(config, channels, options, from_static, report);
                state = std::move(from_static);
            }
        }
    }
    return finish(config, channels, std::move(state.schedule), std::move(state.beams), std::move(report));
}

} // namespace

OrderPolicy parse_order_policy(const std::string &name)
{
    if (name == "pro")
        return OrderPolicy::Proposed;
    if (name == "des")
        return OrderPolicy::Descending;
    if (name == "rand")
        return OrderPolicy::Random;
    if (name == "exhaustive")
        return OrderPolicy::Exhaustive;
    throw std::invalid_argument("Unknown order policy '" + name + "' (expected pro, des, rand or exhaustive).");
}

std::string to_string(OrderPolicy policy)
{
    switch (policy)
    {
    case OrderPolicy::Proposed:
        return "pro";
    case OrderPolicy::Descending:
        return "des";
    case OrderPolicy::Random:
        return "rand";
    case OrderPolicy::Exhaustive:
        return "exhaustive";
    case OrderPolicy::Explicit:
        return "explicit";
    }
    return "unknown";
}

std::string to_string(SolvePath path)
{
    switch (path)
    {
    case SolvePath::SingleDevice:
        return "single-device";
    case SolvePath::NomaShortcut:
        return "noma-shortcut";
    case SolvePath::TdmaShortcut:
        return "tdma-shortcut";
    case SolvePath::Alternating:
        return "alternating";
    }
    return "unknown";
}

std::vector<int> select_order(const SystemConfig &config, const TdmaSolution &tdma, const HmaOptions &options)
{
    const int K = config.device_count();
    switch (options.order_policy)
    {
    case OrderPolicy::Proposed:
        return propose_order(tdma_snr(tdma));
    case OrderPolicy::Descending:
        return descending_order(tdma_snr(tdma));
    case OrderPolicy::Random:
        return random_order(K, options.order_seed);
    case OrderPolicy::Explicit:
    {
        std::vector<int> sorted = options.explicit_order;
        std::sort(sorted.begin(), sorted.end());
        for (int k = 0; k < K; ++k)
        {
            if (static_cast<int>(sorted.size()) != K || sorted[k] != k)
                throw std::invalid_argument("Explicit order must be a permutation of the devices.");
        }
        return options.explicit_order;
    }
    case OrderPolicy::Exhaustive:
        break;
    }
    throw std::invalid_argument("Exhaustive search does not select a single order.");
}

HmaSolution solve_hma(const SystemConfig &config, const ChannelRealization &channels, const HmaOptions &options)
{
    config.validate();
    if (channels.device_count() != config.device_count())
        throw std::invalid_argument("Channel realization does not match the device count.");
    const TdmaSolution tdma = solve_tdma(config, channels);
    if (options.order_policy != OrderPolicy::Exhaustive)
        return solve_fixed_order(config, channels, tdma, select_order(config, tdma, options), options);

    if (config.device_count() > max_exhaustive_devices)
        throw std::invalid_argument("Exhaustive order search is limited to 8 devices.");
    HmaSolution best;
    bool have = false;
    for (const auto &order : all_orders(config.device_count()))
    {
        HmaSolution cand = solve_fixed_order(config, channels, tdma, order, options);
        if (!have || cand.sum_delay() < best.sum_delay())
        {
            best = std::move(cand);
            have = true;
        }
    }
    return best;
}

} // namespace irsma
