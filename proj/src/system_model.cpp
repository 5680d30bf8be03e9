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

#include "irsma/system_model.hpp"

#include <cmath>
#include <random>

namespace irsma
{

double SystemConfig::normalized_target(int device) const
{
    if (device < 0 || device >= device_count())
        throw std::out_of_range("Device index out of range.");
    return devices[device].target_bits / bandwidth_hz;
}

void SystemConfig::validate() const
{
    if (devices.empty())
        throw std::invalid_argument("At least one device is required.");
    if (irs_elements < 0)
        throw std::invalid_argument("IRS element count cannot be negative.");
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw std::invalid_argument("Bandwidth must be positive.");
    if (!(noise_power_w > 0.0) || !std::isfinite(noise_power_w))
        throw std::invalid_argument("Noise power must be positive.");
    if (!std::isfinite(alpha_direct) || !std::isfinite(alpha_cascaded) || !std::isfinite(ref_gain_db))
        throw std::invalid_argument("Path-loss parameters must be finite.");
    for (std::size_t k = 0; k < devices.size(); ++k)
    {
        const auto &d = devices[k];
        if (!(d.target_bits > 0.0) || !std::isfinite(d.target_bits))
            throw std::invalid_argument("Device " + std::to_string(k + 1) + ": throughput target must be positive.");
        if (!(d.budget > 0.0) || !std::isfinite(d.budget))
            throw std::invalid_argument("Device " + std::to_string(k + 1) + ": budget must be positive.");
    }
}

void ChannelRealization::rebuild_composite()
{
    const int n_irs = irs_elements();
    composite.assign(direct.size(), CVector());
    for (std::size_t k = 0; k < direct.size(); ++k)
    {
        if (irs_device[k].size() != n_irs)
            throw std::invalid_argument("IRS-device channel length does not match the IRS-BS channel.");
        CVector b(n_irs + 1);
        // b^H v = h_d + sum_n conj(g_n) h_r,n v_n
        for (int n = 0; n < n_irs; ++n)
            b[n] = irs_bs[n] * std::conj(irs_device[k][n]);
        b[n_irs] = std::conj(direct[k]);
        composite[k] = std::move(b);
    }
}

ChannelRealization ChannelRealization::without_irs() const
{
    ChannelRealization out;
    out.direct = direct;
    out.irs_device.assign(direct.size(), CVector(0));
    out.irs_bs = CVector(0);
    out.rebuild_composite();
    return out;
}

BeamVector::BeamVector(CVector v) : v_(std::move(v))
{
    if (v_.size() < 1)
        throw std::invalid_argument("Beam vector needs at least the trailing fixed entry.");
    for (Eigen::Index n = 0; n < v_.size() - 1; ++n)
    {
        if (std::abs(std::abs(v_[n]) - 1.0) > 1e-12)
            throw std::invalid_argument("IRS coefficients must have unit modulus.");
    }
    if (v_[v_.size() - 1] != Complex(1.0, 0.0))
        throw std::invalid_argument("Last beam entry must be exactly 1.");
}

BeamVector BeamVector::identity(int irs_elements)
{
    if (irs_elements < 0)
        throw std::invalid_argument("IRS element count cannot be negative.");
    return BeamVector(CVector::Ones(irs_elements + 1));
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double dbm_to_watt(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double distance(const Point3 &a, const Point3 &b)
{
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double path_loss(double ref_gain_db, double distance_m, double alpha)
{
    if (!(distance_m > 0.0))
        throw std::invalid_argument("Invalid geometry: link distance must be positive.");
    return db_to_linear(ref_gain_db) * std::pow(distance_m, -alpha);
}

ChannelRealization generate_channels(const SystemConfig &config)
{
    config.validate();
    const int K = config.device_count();
    const int N = config.irs_elements;

    // Separate streams for h_d, g and every h_r,k: the direct links do not depend on N, and the
    // IRS channels of a smaller surface are a prefix of those of a larger one.
    auto stream = [&](std::uint64_t id)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(config.rng_seed), static_cast<std::uint32_t>(config.rng_seed >> 32),
                          static_cast<std::uint32_t>(id)};
        return std::mt19937_64(seq);
    };
    std::normal_distribution<double> normal(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto cn = [&](std::mt19937_64 &rng)
    {
        const double re = normal(rng);
        const double im = normal(rng);
        return Complex(re * inv_sqrt2, im * inv_sqrt2);
    };

    ChannelRealization ch;
    auto direct_rng = stream(0);
    ch.direct.resize(K);
    for (int k = 0; k < K; ++k)
    {
        const double a = std::sqrt(path_loss(config.ref_gain_db, distance(config.devices[k].position, config.bs_pos),
                                             config.alpha_direct));
        normal.reset();
        ch.direct[k] = a * cn(direct_rng);
    }

    ch.irs_bs = CVector(N);
    ch.irs_device.assign(K, CVector(N));
    if (N > 0)
    {
        auto g_rng = stream(1);
        normal.reset();
        const double a = std::sqrt(path_loss(config.ref_gain_db, distance(config.irs_pos, config.bs_pos), config.alpha_cascaded));
        for (int n = 0; n < N; ++n)
            ch.irs_bs[n] = a * cn(g_rng);
        for (int k = 0; k < K; ++k)
        {
            auto rng = stream(2 + static_cast<std::uint64_t>(k));
            normal.reset();
            const double b = std::sqrt(path_loss(config.ref_gain_db, distance(config.devices[k].position, config.irs_pos),
                                                 config.alpha_cascaded));
            for (int n = 0; n < N; ++n)
                ch.irs_device[k][n] = b * cn(rng);
        }
    }
    ch.rebuild_composite();
    return ch;
}

double snr_gain(const CVector &b, const BeamVector &v, double noise_power)
{
    if (b.size() != v.values().size())
        throw std::invalid_argument("Composite channel and beam vector lengths differ.");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("Noise power must be positive.");
    return std::norm(b.dot(v.values())) / noise_power; // Eigen's dot conjugates the first argument
}

BeamVector aligned_beam(const CVector &b)
{
    if (b.size() < 1)
        throw std::invalid_argument("Composite channel must have at least one entry.");
    const Eigen::Index last = b.size() - 1;
    const double ref = (b[last] == Complex(0.0, 0.0)) ? 0.0 : std::arg(b[last]);
    CVector v(b.size());
    for (Eigen::Index n = 0; n < last; ++n)
    {
        const double phase = (b[n] == Complex(0.0, 0.0)) ? 0.0 : std::arg(b[n]);
        v[n] = std::polar(1.0, phase - ref);
    }
    v[last] = 1.0;
    return BeamVector(std::move(v));
}

double achievable_rate(int k, int i, std::span<const double> powers, std::span<const double> gains,
                       double bandwidth_hz)
{
    if (powers.size() != gains.size())
        throw std::invalid_argument("Power and gain arrays differ in length.");
    if (i < 0 || k < 0 || k >= static_cast<int>(powers.size()))
        throw std::out_of_range("Device or slot index out of range.");
    if (i > k)
        throw std::invalid_argument("Device cannot transmit in a slot after its own.");
    double interference = 1.0;
    for (int j = i; j < k; ++j)
        interference += powers[j] * gains[j];
    return bandwidth_hz * std::log2(1.0 + powers[k] * gains[k] / interference);
}

double achievable_rate(int k, int i, std::span<const int> order, std::span<const double> slot_powers,
                       const BeamVector &beam, const ChannelRealization &channels, double noise_power,
                       double bandwidth_hz)
{
    if (order.size() != slot_powers.size())
        throw std::invalid_argument("Order and power arrays differ in length.");
    std::vector<double> gains(order.size(), 0.0);
    for (std::size_t j = 0; j < order.size(); ++j)
    {
        if (order[j] < 0 || order[j] >= channels.device_count())
            throw std::out_of_range("Order entry out of range.");
        gains[j] = snr_gain(channels.composite[order[j]], beam, noise_power);
    }
    return achievable_rate(k, i, slot_powers, gains, bandwidth_hz);
}

} // namespace irsma
