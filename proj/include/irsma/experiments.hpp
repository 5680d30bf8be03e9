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


#ifndef IRSMA_EXPERIMENTS_HPP
#define IRSMA_EXPERIMENTS_HPP

#include "irsma/config.hpp"
#include "irsma/hma.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace irsma
{

enum class Protocol
{
    Hma,
    Tdma,
    Noma
};

enum class IrsMode
{
    Dynamic,
    Static,
    None
};

enum class SweepVariable
{
    TargetKbits,    // "L2": throughput target of one device, Kbits
    EnergyJ,        // "E2": energy budget of one device, J
    AlphaCascaded,  // "alpha": path-loss exponent of g and h_r
    IrsElements,    // "N"
    DeviceCount     // "K": first K devices of the template
};

// Textual id "protocol/irs/order", e.g. "hma/dyn/pro", "noma/none/pro", "hma/dyn/rand2".
struct Baseline
{
    Protocol protocol = Protocol::Hma;
    IrsMode irs = IrsMode::Dynamic;
    OrderPolicy order = OrderPolicy::Proposed;
    std::uint64_t order_seed = 0;  // "randN" selects seed N

    std::string id() const;
    bool operator==(const Baseline &) const = default;
};

Baseline parse_baseline(const std::string &id);
std::vector<Baseline> parse_baseline_list(const std::string &text);
SweepVariable parse_sweep_variable(const std::string &name);
std::string to_string(SweepVariable v);

struct Scenario
{
    std::string name;
    std::string figure;
    std::string caption;
    SystemConfig base;
    SweepVariable sweep = SweepVariable::TargetKbits;
    int sweep_device = 1;  // 0-based device for L2 and E2 sweeps
    std::vector<double> grid;
    std::vector<Baseline> baselines;
    int draws = 50;
    std::uint64_t seed_base = 1;
    int threads = 0;  // 0 uses the hardware concurrency

    // Throws std::invalid_argument on an empty or unsorted grid, draws < 1, no baselines
    // or a sweep value the template cannot express.
    void validate() const;

    // Template with the sweep value applied and the draw seed set.
    SystemConfig instance(double sweep_value, std::uint64_t seed) const;
};

// [scenario] keys: name, figure, caption, sweep, device (1-based), grid, draws, seed, baselines, threads.
// The template comes from the [system] and [device] sections of the same file.
Scenario scenario_from(const ConfigDocument &doc);
Scenario load_scenario(const std::string &path);

enum class RowStatus
{
    Ok,
    Infeasible,
    Error
};

std::string to_string(RowStatus s);

struct ResultRow
{
    std::string scenario;
    double sweep_value = 0.0;
    std::string baseline;
    std::uint64_t seed = 0;
    RowStatus status = RowStatus::Ok;
    double sum_delay = 0.0;                 // s, zero unless status is Ok
    std::vector<double> completion_times;   // s, indexed by original device
    std::string regime;                     // HMA rows only
    std::string path;                       // HMA rows only
    int iterations = 0;
    bool converged = true;
    bool trace_nonincreasing = true;
    std::string message;

    bool operator==(const ResultRow &) const = default;
};

struct TimingRow
{
    std::string scenario;
    double sweep_value = 0.0;
    std::string baseline;
    std::uint64_t seed = 0;
    double wall_s = 0.0;
};

struct SummaryRow
{
    double sweep_value = 0.0;
    std::string baseline;
    int ok = 0;
    int failed = 0;
    double mean_delay = 0.0;  // over Ok rows, NaN when there are none
    double std_delay = 0.0;
    double min_delay = 0.0;
    double max_delay = 0.0;
};

struct ScenarioResult
{
    std::vector<ResultRow> rows;  // sorted by (sweep index, baseline index, seed)
    std::vector<TimingRow> timing;
    std::vector<SummaryRow> summary;
};

// Solves one instance under a baseline; solver errors are captured in the row.
ResultRow run_baseline(const SystemConfig &config, const ChannelRealization &channels, const Baseline &baseline);

ScenarioResult run_scenario(const Scenario &scenario);

std::vector<SummaryRow> summarize(const Scenario &scenario, const std::vector<ResultRow> &rows);

// RFC 4180 with LF line endings, numbers as %.17g.
std::string rows_to_csv(const std::vector<ResultRow> &rows);
std::vector<ResultRow> rows_from_csv(const std::string &text);
std::string timing_to_csv(const std::vector<TimingRow> &rows);
std::string summary_to_csv(const std::vector<SummaryRow> &rows);

// Writes rows.csv, timing.csv, summary.csv and, when requested, <baseline>.dat into dir (created if missing).
// Throws std::invalid_argument on empty rows and std::runtime_error naming the path on I/O failures.
void emit_outputs(const ScenarioResult &result, const std::string &dir, bool plot_data = true);

} // namespace irsma

#endif
