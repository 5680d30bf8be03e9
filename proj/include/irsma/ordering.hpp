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

#ifndef IRSMA_ORDERING_HPP
#define IRSMA_ORDERING_HPP

#include "irsma/system_model.hpp"
#include "irsma/tdma.hpp"

#include <cstdint>
#include <vector>

namespace irsma
{

// rho_k = p_k^td gamma_k(v_k^td), indexed by original device.
std::vector<double> tdma_snr(const TdmaSolution &sol);

// Ascending rho, ties by original index.
std::vector<int> propose_order(const std::vector<double> &rho);

// Descending rho, ties by original index.
std::vector<int> descending_order(const std::vector<double> &rho);

// Uniformly random permutation drawn from the given seed.
std::vector<int> random_order(int device_count, std::uint64_t seed);

// All permutations of 0..K-1 in lexicographic order.
std::vector<std::vector<int>> all_orders(int device_count);

// Delay of order (1,2) minus delay of order (2,1) for K = 2 in the power regime,
// with aligned beams and maximum powers. Positive means decoding device 2 first is better.
double two_device_order_gap(const SystemConfig &config, const ChannelRealization &channels);

} // namespace irsma

#endif
