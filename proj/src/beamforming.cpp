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


#include "irsma/beamforming.hpp"
#include "irsma/sca.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsma
{

namespace
{

constexpr double sweep_tolerance = 1e-8;
constexpr int max_sweeps = 100;

// Noise-normalized composite channels in decoding order.
std::vector<CVector> normalized_channels(const SystemConfig &config, const ChannelRealization &channels,
                                         const std::vector<int> &order)
{
    const double inv_sigma = 1.0 / std::sqrt(config.noise_power_w);
    std::vector<CVector> c;
    c.reserve(order.size());
    for (int d : order)
        c.push_back(channels.composite.at(d) * inv_sigma);
    return c;
}

// Incremental state of the constrained element-wise ascent. Every device carries its surrogate
// surplus delta_k = sum_i tau_i u_{k,i}(v_i) - L_bar_k, which must not drop below its floor.
struct AscentState
{
    const std::vector<CVector> &c;
    const Schedule &s;
    const FpAuxiliaries &aux;
    std::vector<CVector> v;        // per slot
    Eigen::MatrixXcd e;            // e(j, i) = c_j^H v_i
    std::vector<double> delta;
    std::vector<double> floor;
    std::vector<double> weight;
    bool constrained = false;

    AscentState(const std::vector<CVector> &c_, const Schedule &s_, const FpAuxiliaries &aux_, const BeamPlan &beams,
                const std::vector<double> &targets, const std::vector<double> &weights, bool preserve)
        : c(c_), s(s_), aux(aux_), constrained(preserve)
    {
        const int K = s.slots();
        e = Eigen::MatrixXcd::Zero(K, K);
        for (int i = 0; i < K; ++i)
        {
            v.push_back(beams[i].values());
            for (int j = i; j < K; ++j)
                e(j, i) = c[j].dot(v[i]);
        }
        delta.assign(K, 0.0);
        for (int k = 0; k < K; ++k)
        {
            double total = -targets[k];
            for (int i = 0; i <= k; ++i)
            {
                if (s.tau[i] > 0.0)
                    total += s.tau[i] * surrogate(k, i);
            }
            delta[k] = total;
            floor.push_back(std::min(total, 0.0));
        }
        weight = weights.empty() ? std::vector<double>(K, 1.0) : weights;
        if (static_cast<int>(weight.size()) != K)
            throw std::invalid_argument("One beamforming weight per device is required.");
    }

    double surrogate(int k, int i) const
    {
        const double chi = aux.chi(k, i);
        const double p = s.power(k, i);
        double denom = 1.0;
        for (int j = i; j <= k; ++j)
            denom += s.power(j, i) * std::norm(e(j, i));
        const double value = std::log1p(chi) - chi +
                             2.0 * std::sqrt((1.0 + chi) * p) * (std::conj(aux.iota(k, i)) * e(k, i)).real() -
                             std::norm(aux.iota(k, i)) * denom;
        return value / std::numbers::ln2;
    }

    double objective() const
    {
        double sum = 0.0;
        for (std::size_t k = 0; k < delta.size(); ++k)
            sum += weight[k] * delta[k];
        return sum;
    }

    // Updates element n of the beams of the given slots, which share its value. Returns true on a move.
    bool update_element(const std::vector<int> &group, Eigen::Index n)
    {
        const int K = s.slots();
        // delta_k(v_n) = delta_k + Re{conj(v_n - v_n^old) beta_k}
        std::vector<Complex> beta(K, Complex(0.0, 0.0));
        const Complex old = v[group.front()][n];
        for (int i : group)
        {
            Complex cumulative(0.0, 0.0);
            for (int k = i; k < K; ++k)
            {
                const double p = s.power(k, i);
                const Complex cn = c[k][n];
                const Complex rest = e(k, i) - std::conj(cn) * old;
                cumulative += p * rest * cn;
                const Complex iota = aux.iota(k, i);
                const Complex b = 2.0 * std::sqrt((1.0 + aux.chi(k, i)) * p) * iota * cn -
                                  2.0 * std::norm(iota) * cumulative;
                beta[k] += (s.tau[i] / std::numbers::ln2) * b;
            }
        }
        Complex total(0.0, 0.0);
        for (int k = 0; k < K; ++k)
            total += weight[k] * beta[k];
        if (std::abs(total) == 0.0)
            return false;

        auto gain = [&](Complex cand) { return (std::conj(cand - old) * total).real(); };
        auto feasible = [&](Complex cand)
        {
            if (!constrained)
                return true;
            for (int k = 0; k < K; ++k)
            {
                if (delta[k] + (std::conj(cand - old) * beta[k]).real() < floor[k])
                    return false;
            }
            return true;
        };

        std::vector<Complex> candidates{total / std::abs(total)};
        for (int k = 0; k < K && constrained; ++k)
        {
            const double mag = std::abs(beta[k]);
            if (mag == 0.0)
                continue;
            // Boundary of device k: Re{conj(v) beta_k} = floor_k - delta_k + Re{conj(old) beta_k}
            const double r = (floor[k] - delta[k] + (std::conj(old) * beta[k]).real()) / mag;
            if (std::abs(r) > 1.0)
                continue;
            const double phi = std::arg(beta[k]);
            const double w = std::acos(r);
            for (double theta : {phi + w, phi - w})
            {
                for (double nudge : {0.0, 1e-9, -1e-9})
                    candidates.push_back(std::polar(1.0, theta + nudge));
            }
        }

        Complex best = old;
        double best_gain = 0.0;
        for (const auto &cand : candidates)
        {
            const double g = gain(cand);
            if (g > best_gain && feasible(cand))
            {
                best = cand;
                best_gain = g;
            }
        }
        if (best == old)
            return false;
        const Complex d = best - old;
        for (int k = 0; k < K; ++k)
            delta[k] += (std::conj(d) * beta[k]).real();
        for (int i : group)
        {
            v[i][n] = best;
            for (int j = i; j < K; ++j)
                e(j, i) += std::conj(c[j][n]) * d;
        }
        return true;
    }

    // Sweeps the elements of a slot group until the summed surplus stops improving.
    int ascend(const std::vector<int> &group, std::vector<double> *trace)
    {
        const Eigen::Index last = v[group.front()].size() - 1;
        double f = objective();
        if (trace)
            trace->push_back(f);
        int sweeps = 0;
        for (int sweep = 0; sweep < max_sweeps; ++sweep)
        {
            bool moved = false;
            for (Eigen::Index n = 0; n < last; ++n)
                moved = update_element(group, n) || moved;
            ++sweeps;
            const double g = objective();
            if (trace)
                trace->push_back(g);
            const bool done = !moved || g - f < sweep_tolerance;
            f = g;
            if (done)
                break;
        }
        return sweeps;
    }
};

} // namespace

FpAuxiliaries fp_auxiliary_update(const SystemConfig &config, const ChannelRealization &channels,
                                  const Schedule &schedule, const BeamPlan &beams)
{
    const int K = schedule.slots();
    if (static_cast<int>(beams.size()) != K)
        throw std::invalid_argument("Beam plan must hold one beam per slot.");
    const auto c = normalized_channels(config, channels, schedule.order);
    FpAuxiliaries aux;
    aux.chi = Eigen::MatrixXd::Zero(K, K);
    aux.iota = Eigen::MatrixXcd::Zero(K, K);
    for (int i = 0; i < K; ++i)
    {
        const CVector &v = beams[i].values();
        double interference = 1.0;
        for (int k = i; k < K; ++k)
        {
            const double p = schedule.power(k, i);
            const Complex e = c[k].dot(v);
            const double q = p * std::norm(e);
            const double chi = q / interference;
            aux.chi(k, i) = chi;
            aux.iota(k, i) = std::sqrt((1.0 + chi) * p) * e / (interference + q);
            interference += q;
        }
    }
    return aux;
}

double fp_surrogate_rate(const SystemConfig &config, const ChannelRealization &channels, const Schedule &schedule,
                         const FpAuxiliaries &aux, int k, int i, const BeamVector &v)
{
    if (i < 0 || k < i || k >= schedule.slots())
        throw std::out_of_range("Surrogate index out of range.");
    const auto c = normalized_channels(config, channels, schedule.order);
    const double chi = aux.chi(k, i);
    const Complex iota = aux.iota(k, i);
    const double p = schedule.power(k, i);
    const Complex e = c[k].dot(v.values());
    double denom = 1.0;
    for (int j = i; j <= k; ++j)
        denom += schedule.power(j, i) * std::norm(c[j].dot(v.values()));
    const double value = std::log1p(chi) - chi + 2.0 * std::sqrt((1.0 + chi) * p) * (std::conj(iota) * e).real() -
                         std::norm(iota) * denom;
    return value / std::numbers::ln2;
}

BeamPlan beamforming_update(const SystemConfig &config, const ChannelRealization &channels, const Schedule &schedule,
                            const FpAuxiliaries &aux, const BeamPlan &beams, BeamMode mode,
                            BeamUpdateReport *report)
{
    BeamUpdateOptions options;
    options.mode = mode;
    return beamforming_update(config, channels, schedule, aux, beams, options, report);
}

BeamPlan beamforming_update(const SystemConfig &config, const ChannelRealization &channels, const Schedule &schedule,
                            const FpAuxiliaries &aux, const BeamPlan &beams, const BeamUpdateOptions &options,
                            BeamUpdateReport *report)
{
    const BeamMode mode = options.mode;
    const int K = schedule.slots();
    if (static_cast<int>(beams.size()) != K)
        throw std::invalid_argument("Beam plan must hold one beam per slot.");
    if (report)
        *report = BeamUpdateReport{};
    if (K == 0 || beams.front().irs_elements() == 0)
        return beams;
    const auto c = normalized_channels(config, channels, schedule.order);
    std::vector<double> targets(K);
    for (int k = 0; k < K; ++k)
        targets[k] = config.normalized_target(schedule.order[k]);

    std::vector<int> active;
    for (int i = 0; i < K; ++i)
    {
        if (schedule.tau[i] > 0.0)
            active.push_back(i);
    }
    if (active.empty())
        return beams;
    BeamPlan start = beams;
    std::vector<std::vector<int>> groups;
    if (mode == BeamMode::Dynamic)
    {
        for (int i : active)
            groups.push_back({i});
    }
    else
    {
        for (auto &b : start)
            b = beams[active.front()];
        groups.push_back(active);
    }
    AscentState state(c, schedule, aux, start, targets, options.weights, options.preserve_feasibility);
    for (const auto &group : groups)
    {
        std::vector<double> trace;
        const int sweeps = state.ascend(group, &trace);
        if (report)
        {
            report->sweeps.push_back(sweeps);
            report->objective.push_back(std::move(trace));
        }
    }

    BeamPlan out = beams;
    for (int i = 0; i < K; ++i)
    {
        if (mode == BeamMode::Static)
            state.v[i] = state.v[active.front()];
        CVector v = state.v[i];
        // Projection keeps the unit-modulus check exact after repeated updates
        for (Eigen::Index n = 0; n + 1 < v.size(); ++n)
            v[n] = std::polar(1.0, std::arg(v[n]));
        v[v.size() - 1] = 1.0;
        out[i] = BeamVector(std::move(v));
    }
    return out;
}

BeamPlan interpolate_beams(const BeamPlan &a, const BeamPlan &b, double t)
{
    if (a.size() != b.size())
        throw std::invalid_argument("Beam plans differ in slot count.");
    BeamPlan out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const CVector &va = a[i].values();
        const CVector &vb = b[i].values();
        if (va.size() != vb.size())
            throw std::invalid_argument("Beam vectors differ in length.");
        CVector v = va;
        for (Eigen::Index n = 0; n + 1 < v.size(); ++n)
            v[n] = std::polar(1.0, std::arg(va[n]) + t * std::arg(vb[n] * std::conj(va[n])));
        out.emplace_back(std::move(v));
    }
    return out;
}

double throughput_surplus(const SystemConfig &config, const ChannelRealization &channels, const Schedule &schedule,
                          const BeamPlan &beams, const std::vector<double> &weights)
{
    if (!weights.empty() && static_cast<int>(weights.size()) != schedule.slots())
        throw std::invalid_argument("One beamforming weight per device is required.");
    const Eigen::MatrixXd gains = gain_table(config, channels, schedule.order, beams);
    const auto delivered = delivered_throughput(schedule, gains);
    double surplus = 0.0;
    for (int k = 0; k < schedule.slots(); ++k)
        surplus += (weights.empty() ? 1.0 : weights[k]) * (delivered[k] - config.normalized_target(schedule.order[k]));
    return surplus;
}

FpResult fp_beamforming(const SystemConfig &config, const ChannelRealization &channels, const Schedule &schedule,
                        const BeamPlan &beams, const FpSettings &settings)
{
    FpResult result;
    result.beams = beams;
    BeamUpdateOptions options;
    options.mode = settings.mode;
    options.weights = settings.weights;
    options.preserve_feasibility = settings.preserve_feasibility;
    double current = throughput_surplus(config, channels, schedule, beams, settings.weights);
    result.surplus_trace.push_back(current);
    for (int it = 0; it < settings.max_iterations; ++it)
    {
        const FpAuxiliaries aux = fp_auxiliary_update(config, channels, schedule, result.beams);
        BeamPlan next = beamforming_update(config, channels, schedule, aux, result.beams, options);
        const double value = throughput_surplus(config, channels, schedule, next, settings.weights);
        result.iterations = it + 1;
        if (value < current)
            break;  // rounding-level regression, keep the previous beams
        const double change = value - current;
        result.beams = std::move(next);
        current = value;
        result.surplus_trace.push_back(value);
        if (change < settings.surplus_tolerance)
            break;
    }
    return result;
}

} // namespace irsma
