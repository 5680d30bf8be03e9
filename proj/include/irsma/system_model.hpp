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

#ifndef IRSMA_SYSTEM_MODEL_HPP
#define IRSMA_SYSTEM_MODEL_HPP

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace irsma
{

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using Point3 = std::array<double, 3>;

// Thrown when an instance has no feasible schedule (e.g. energy below the
// minimum required energy of some device).
class InfeasibleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class BudgetRegime
{
    Power,  // per-device maximum transmit power P^m_k (W)
    Energy  // per-device energy budget E_k (J)
};

struct Device
{
    Point3 position{};
    double budget = 0.0;       // W in the power regime, J in the energy regime
    double target_bits = 0.0;  // L_k
};

// All quantities are linear SI units; dB/dBm conversion happens in the config parser.
struct SystemConfig
{
    int irs_elements = 0;         // N
    double bandwidth_hz = 0.0;    // B
    double noise_power_w = 0.0;   // sigma^2
    Point3 bs_pos{0.0, 0.0, 0.0};
    Point3 irs_pos{0.0, 0.0, 0.0};
    double alpha_direct = 3.6;
    double alpha_cascaded = 2.2;
    double ref_gain_db = -30.0;   // path loss at 1 m
    BudgetRegime regime = BudgetRegime::Power;
    std::vector<Device> devices;
    std::uint64_t rng_seed = 0;

    int device_count() const { return static_cast<int>(devices.size()); }

    // Normalized throughput target L_k / B in bits/Hz.
    double normalized_target(int device) const;

    // Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

struct ChannelRealization
{
    std::vector<Complex> direct;        // h_d,k
    std::vector<CVector> irs_device;    // h_r,k (length N)
    CVector irs_bs;                     // g (length N)
    std::vector<CVector> composite;     // b_k (length N+1)

    int device_count() const { return static_cast<int>(direct.size()); }
    int irs_elements() const { return static_cast<int>(irs_bs.size()); }

    // Rebuilds b_k from h_d, h_r and g.
    void rebuild_composite();

    // Same draw with the IRS removed (N = 0).
    ChannelRealization without_irs() const;
};

// Unit-modulus IRS configuration extended by a trailing fixed 1.
class BeamVector
{
public:
    BeamVector() : v_(CVector::Ones(1)) {}
    explicit BeamVector(CVector v);

    // v_n = 1 for every element.
    static BeamVector identity(int irs_elements);

    const CVector& values() const { return v_; }
    int irs_elements() const { return static_cast<int>(v_.size()) - 1; }

private:
    CVector v_;
};

// Per-slot beams (slot i uses plan[i]).
using BeamPlan = std::vector<BeamVector>;

double db_to_linear(double db);
double dbm_to_watt(double dbm);
double distance(const Point3& a, const Point3& b);

// Large-scale power gain ref_gain * d^-alpha.
double path_loss(double ref_gain_db, double distance_m, double alpha);

ChannelRealization generate_channels(const SystemConfig& config);

// |b^H v|^2 / sigma^2
double snr_gain(const CVector& b, const BeamVector& v, double noise_power);

// Co-phases every reflected path with the direct path (maximizes |b^H v|).
BeamVector aligned_beam(const CVector& b);

// Rate in bits/s of ordered device k in slot i (both 0-based) under SIC decoding.
// gains[j] is gamma_j(v_i) of ordered device j in that slot, powers[j] its power.
double achievable_rate(int k, int i, std::span<const double> powers, std::span<const double> gains,
                       double bandwidth_hz);

// Same, with gains evaluated from the channels: slot_powers[j] is p_{pi(j),i}.
double achievable_rate(int k, int i, std::span<const int> order, std::span<const double> slot_powers,
                       const BeamVector& beam, const ChannelRealization& channels, double noise_power,
                       double bandwidth_hz);

}  // namespace irsma

#endif
