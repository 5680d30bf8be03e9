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


#include "irsma/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace irsma
{

namespace
{

std::vector<std::string> split(const std::string &text, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, sep))
    {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        out.push_back(a == std::string::npos ? std::string() : item.substr(a, b - a + 1));
    }
    return out;
}

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i)
    {
        const char c = text[i];
        if (quoted)
        {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"')
                field += text[++i];
            else if (c == '"')
                quoted = false;
            else
                field += c;
            continue;
        }
        if (c == '"')
            quoted = any = true;
        else if (c == ',')
        {
            record.push_back(std::move(field));
            field.clear();
            any = true;
        }
        else if (c == '\n' || c == '\r')
        {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')
                ++i;
            if (any || !field.empty())
            {
                record.push_back(std::move(field));
                records.push_back(std::move(record));
            }
            record.clear();
            field.clear();
            any = false;
        }
        else
        {
            field += c;
            any = true;
        }
    }
    if (quoted)
        throw std::invalid_argument("CSV ends inside a quoted field.");
    if (any || !field.empty())
    {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

double parse_double(const std::string &s)
{
    if (s == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
        throw std::invalid_argument("CSV field \"" + s + "\" is not a number.");
    return v;
}

const std::vector<std::string> row_header = {"scenario",  "sweep_value", "baseline",   "seed",      "status",
                                             "sum_delay_s", "completion_s", "regime",   "path",      "iterations",
                                             "converged", "trace_nonincreasing", "message"};

// Sequential schedule under one shared beam; infinite when some device cannot finish.
double shared_beam_tdma_delay(const SystemConfig &config, const ChannelRealization &channels,
                              const std::vector<int> &order, const BeamVector &beam, std::vector<double> &done)
{
    done = tdma_completion_times(config, channels, order, BeamPlan{beam});
    return done.back();
}

std::vector<int> ascending_tau(const TdmaSolution &tdma)
{
    std::vector<int> order(tdma.tau.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return tdma.tau[a] < tdma.tau[b]; });
    return order;
}

std::vector<double> by_device(const std::vector<int> &order, const std::vector<double> &ordered)
{
    std::vector<double> out(order.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        out[order[k]] = ordered[k];
    return out;
}

ResultRow solve_row(const SystemConfig &config, const ChannelRealization &channels, const Baseline &b)
{
    ResultRow row;
    HmaOptions opt;
    opt.order_policy = b.order;
    opt.order_seed = b.order_seed;
    opt.beam_mode = b.irs == IrsMode::Static ? BeamMode::Static : BeamMode::Dynamic;

    if (b.protocol == Protocol::Hma)
    {
        const auto sol = solve_hma(config, channels, opt);
        row.sum_delay = sol.sum_delay();
        row.completion_times = sol.schedule.device_completion_times();
        row.regime = to_string(sol.report.regime);
        row.path = to_string(sol.report.path);
        row.iterations = sol.report.outer_iterations;
        row.converged = sol.report.converged;
        const auto &d = sol.report.trace.delay;
        for (std::size_t t = 1; t < d.size(); ++t)
            row.trace_nonincreasing = row.trace_nonincreasing && d[t] <= d[t - 1] * (1.0 + 1e-12);
        return row;
    }

    if (config.regime == BudgetRegime::Energy)
        check_energy_feasible(config, channels);
    const auto tdma = solve_tdma(config, channels);
    if (b.protocol == Protocol::Tdma)
    {
        const auto order = b.order == OrderPolicy::Exhaustive ? ascending_tau(tdma) : select_order(config, tdma, opt);
        std::vector<double> done;
        if (b.irs == IrsMode::Static && config.irs_elements > 0)
        {
            double best = std::numeric_limits<double>::infinity();
            for (const auto &v : tdma.beams)
            {
                std::vector<double> cand;
                if (shared_beam_tdma_delay(config, channels, order, v, cand) < best)
                {
                    best = cand.back();
                    done = cand;
                }
            }
            if (!std::isfinite(best))
                throw InfeasibleError("No shared IRS beam admits a feasible TDMA schedule.");
        }
        else
            done = tdma_completion_times(config, channels, order, tdma_beams(tdma, order));
        row.sum_delay = done.back();
        row.completion_times = by_device(order, done);
        return row;
    }

    std::vector<std::vector<int>> orders;
    if (b.order == OrderPolicy::Exhaustive)
    {
        if (config.device_count() > 8)
            throw std::invalid_argument("Exhaustive order search is limited to 8 devices.");
        std::vector<int> p(config.device_count());
        std::iota(p.begin(), p.end(), 0);
        do
            orders.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }
    else
        orders.push_back(select_order(config, tdma, opt));

    bool found = false;
    std::string last_error;
    for (const auto &order : orders)
    {
        try
        {
            const auto noma = solve_noma(config, channels, order, opt.noma);
            if (!found || noma.delay < row.sum_delay)
            {
                row.sum_delay = noma.delay;
                row.iterations = noma.iterations;
                found = true;
            }
        }
        catch (const InfeasibleError &e)
        {
            last_error = e.what();
        }
    }
    if (!found)
        throw InfeasibleError(last_error);
    row.completion_times.assign(config.device_count(), row.sum_delay);
    return row;
}

void write_file(const std::filesystem::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("Cannot open " + path.string() + " for writing.");
    out << content;
    out.close();
    if (!out)
        throw std::runtime_error("Failed writing " + path.string() + ".");
}

} // namespace

std::string Baseline::id() const
{
    std::string p = protocol == Protocol::Hma ? "hma" : protocol == Protocol::Tdma ? "tdma" : "noma";
    std::string i = irs == IrsMode::Dynamic ? "dyn" : irs == IrsMode::Static ? "static" : "none";
    std::string o = to_string(order);
    if (order == OrderPolicy::Random)
        o += std::to_string(order_seed);
    return p + "/" + i + "/" + o;
}

Baseline parse_baseline(const std::string &id)
{
    const auto parts = split(id, '/');
    if (parts.empty() || parts.size() > 3)
        throw std::invalid_argument("Baseline \"" + id + "\" must look like protocol/irs/order.");
    Baseline b;
    if (parts[0] == "hma")
        b.protocol = Protocol::Hma;
    else if (parts[0] == "tdma")
        b.protocol = Protocol::Tdma;
    else if (parts[0] == "noma")
        b.protocol = Protocol::Noma;
    else
        throw std::invalid_argument("Unknown protocol \"" + parts[0] + "\" in baseline \"" + id + "\".");
    if (parts.size() > 1)
    {
        if (parts[1] == "dyn")
            b.irs = IrsMode::Dynamic;
        else if (parts[1] == "static")
            b.irs = IrsMode::Static;
        else if (parts[1] == "none")
            b.irs = IrsMode::None;
        else
            throw std::invalid_argument("Unknown IRS mode \"" + parts[1] + "\" in baseline \"" + id + "\".");
    }
    if (parts.size() > 2)
    {
        const std::string &o = parts[2];
        if (o.rfind("rand", 0) == 0 && o.size() > 4)
        {
            const std::string digits = o.substr(4);
            if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 18)
                throw std::invalid_argument("Random order seed in \"" + id + "\" must be a nonnegative integer.");
            b.order = OrderPolicy::Random;
            b.order_seed = std::stoull(digits);
        }
        else
            b.order = parse_order_policy(o);
    }
    return b;
}

std::vector<Baseline> parse_baseline_list(const std::string &text)
{
    std::vector<Baseline> out;
    for (const auto &item : split(text, ','))
    {
        if (item.empty())
            continue;
        const auto b = parse_baseline(item);
        if (std::find(out.begin(), out.end(), b) == out.end())
            out.push_back(b);
    }
    return out;
}

SweepVariable parse_sweep_variable(const std::string &name)
{
    if (name == "L2")
        return SweepVariable::TargetKbits;
    if (name == "E2")
        return SweepVariable::EnergyJ;
    if (name == "alpha")
        return SweepVariable::AlphaCascaded;
    if (name == "N")
        return SweepVariable::IrsElements;
    if (name == "K")
        return SweepVariable::DeviceCount;
    throw std::invalid_argument("Unknown sweep variable \"" + name + "\" (expected L2, E2, alpha, N or K).");
}

std::string to_string(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::TargetKbits:
        return "L2";
    case SweepVariable::EnergyJ:
        return "E2";
    case SweepVariable::AlphaCascaded:
        return "alpha";
    case SweepVariable::IrsElements:
        return "N";
    case SweepVariable::DeviceCount:
        return "K";
    }
    return "?";
}

std::string to_string(RowStatus s)
{
    switch (s)
    {
    case RowStatus::Ok:
        return "ok";
    case RowStatus::Infeasible:
        return "infeasible";
    case RowStatus::Error:
        return "error";
    }
    return "?";
}

void Scenario::validate() const
{
    if (grid.empty())
        throw std::invalid_argument("Scenario \"" + name + "\": sweep grid is empty.");
    if (!std::is_sorted(grid.begin(), grid.end()) || std::adjacent_find(grid.begin(), grid.end()) != grid.end())
        throw std::invalid_argument("Scenario \"" + name + "\": sweep grid must be strictly increasing.");
    if (draws < 1)
        throw std::invalid_argument("Scenario \"" + name + "\": draws must be at least 1.");
    if (baselines.empty())
        throw std::invalid_argument("Scenario \"" + name + "\": no baselines selected.");
    if (threads < 0)
        throw std::invalid_argument("Scenario \"" + name + "\": threads cannot be negative.");
    const int K = base.device_count();
    if ((sweep == SweepVariable::TargetKbits || sweep == SweepVariable::EnergyJ) && (sweep_device < 0 || sweep_device >= K))
        throw std::invalid_argument("Scenario \"" + name + "\": swept device does not exist.");
    if (sweep == SweepVariable::EnergyJ && base.regime != BudgetRegime::Energy)
        throw std::invalid_argument("Scenario \"" + name + "\": an E2 sweep needs the energy regime.");
    for (double x : grid)
    {
        if (!std::isfinite(x))
            throw std::invalid_argument("Scenario \"" + name + "\": sweep values must be finite.");
        if ((sweep == SweepVariable::IrsElements || sweep == SweepVariable::DeviceCount) && x != std::floor(x))
            throw std::invalid_argument("Scenario \"" + name + "\": " + to_string(sweep) + " values must be integers.");
        if (sweep == SweepVariable::DeviceCount && (x < 1 || x > K))
            throw std::invalid_argument("Scenario \"" + name + "\": K values must lie in 1.." + std::to_string(K) + ".");
        if (sweep == SweepVariable::IrsElements && x < 0)
            throw std::invalid_argument("Scenario \"" + name + "\": N values cannot be negative.");
        if ((sweep == SweepVariable::TargetKbits || sweep == SweepVariable::EnergyJ) && !(x > 0))
            throw std::invalid_argument("Scenario \"" + name + "\": " + to_string(sweep) + " values must be positive.");
    }
}

SystemConfig Scenario::instance(double v, std::uint64_t seed) const
{
    SystemConfig c = base;
    c.rng_seed = seed;
    switch (sweep)
    {
    case SweepVariable::TargetKbits:
        c.devices[sweep_device].target_bits = v * 1e3;
        break;
    case SweepVariable::EnergyJ:
        c.devices[sweep_device].budget = v;
        break;
    case SweepVariable::AlphaCascaded:
        c.alpha_cascaded = v;
        break;
    case SweepVariable::IrsElements:
        c.irs_elements = static_cast<int>(v);
        break;
    case SweepVariable::DeviceCount:
        c.devices.resize(static_cast<std::size_t>(v));
        break;
    }
    c.validate();
    return c;
}

Scenario scenario_from(const ConfigDocument &doc)
{
    const ConfigSection *s = doc.find("scenario");
    if (s == nullptr)
        throw std::invalid_argument("Scenario file has no [scenario] section.");
    for (const auto &[key, value] : s->values)
    {
        static const std::vector<std::string> allowed = {"name",  "figure", "caption",   "sweep",  "device",
                                                         "grid",  "draws",  "seed",      "baselines", "threads"};
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw std::invalid_argument("Unknown key [scenario] " + key + " (line " + std::to_string(s->lines.at(key)) + ").");
    }
    Scenario sc;
    sc.base = system_config_from(doc);
    sc.name = s->has("name") ? s->get("name") : std::string("scenario");
    sc.figure = s->has("figure") ? s->get("figure") : std::string();
    sc.caption = s->has("caption") ? s->get("caption") : std::string();
    sc.sweep = parse_sweep_variable(s->get("sweep"));
    sc.sweep_device = static_cast<int>(s->get_int("device", 2)) - 1;
    sc.grid = s->get_list("grid");
    sc.draws = static_cast<int>(s->get_int("draws", 50));
    const long long seed = s->get_int("seed", 1);
    if (seed < 0)
        throw std::invalid_argument("Scenario seed cannot be negative.");
    sc.seed_base = static_cast<std::uint64_t>(seed);
    sc.baselines = parse_baseline_list(s->has("baselines") ? s->get("baselines") : std::string("hma/dyn/pro"));
    sc.threads = static_cast<int>(s->get_int("threads", 0));
    sc.validate();
    return sc;
}

Scenario load_scenario(const std::string &path)
{
    return scenario_from(load_config_file(path));
}

ResultRow run_baseline(const SystemConfig &config, const ChannelRealization &channels, const Baseline &baseline)
{
    ResultRow row;
    try
    {
        if (baseline.irs == IrsMode::None)
        {
            SystemConfig bare = config;
            bare.irs_elements = 0;
            row = solve_row(bare, channels.without_irs(), baseline);
        }
        else
            row = solve_row(config, channels, baseline);
    }
    catch (const InfeasibleError &e)
    {
        row = ResultRow{};
        row.status = RowStatus::Infeasible;
        row.message = e.what();
    }
    catch (const std::exception &e)
    {
        row = ResultRow{};
        row.status = RowStatus::Error;
        row.message = e.what();
    }
    row.baseline = baseline.id();
    row.seed = config.rng_seed;
    return row;
}

ScenarioResult run_scenario(const Scenario &scenario)
{
    scenario.validate();
    const std::size_t G = scenario.grid.size(), D = static_cast<std::size_t>(scenario.draws);
    const std::size_t B = scenario.baselines.size();
    const std::size_t tasks = G * D;

    std::vector<ResultRow> rows(tasks * B);
    std::vector<TimingRow> timing(tasks * B);
    std::atomic<std::size_t> next{0};

    // Task t covers one (sweep value, draw); every baseline shares the channel draw.
    auto worker = [&]()
    {
        for (std::size_t t = next++; t < tasks; t = next++)
        {
            const std::size_t g = t / D, d = t % D;
            const double x = scenario.grid[g];
            const std::uint64_t seed = scenario.seed_base + d;
            SystemConfig config;
            ChannelRealization ch;
            std::string setup_error;
            try
            {
                config = scenario.instance(x, seed);
                ch = generate_channels(config);
            }
            catch (const std::exception &e)
            {
                setup_error = e.what();
            }
            for (std::size_t b = 0; b < B; ++b)
            {
                const auto t0 = std::chrono::steady_clock::now();
                ResultRow row;
                if (setup_error.empty())
                    row = run_baseline(config, ch, scenario.baselines[b]);
                else
                {
                    row.status = RowStatus::Error;
                    row.message = setup_error;
                    row.baseline = scenario.baselines[b].id();
                    row.seed = seed;
                }
                const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                row.scenario = scenario.name;
                row.sweep_value = x;
                // Slot index orders rows by (sweep value, baseline, seed) regardless of completion order.
                const std::size_t slot = (g * B + b) * D + d;
                timing[slot] = {scenario.name, x, row.baseline, seed, wall};
                rows[slot] = std::move(row);
            }
        }
    };

    int n = scenario.threads > 0 ? scenario.threads : static_cast<int>(std::thread::hardware_concurrency());
    n = std::clamp(n, 1, static_cast<int>(std::max<std::size_t>(tasks, 1)));
    if (n == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (int i = 0; i < n; ++i)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }

    ScenarioResult result;
    result.rows = std::move(rows);
    result.timing = std::move(timing);
    result.summary = summarize(scenario, result.rows);
    return result;
}

std::vector<SummaryRow> summarize(const Scenario &scenario, const std::vector<ResultRow> &rows)
{
    std::vector<SummaryRow> out;
    for (double x : scenario.grid)
    {
        for (const auto &b : scenario.baselines)
        {
            SummaryRow s;
            s.sweep_value = x;
            s.baseline = b.id();
            std::vector<double> v;
            for (const auto &r : rows)
            {
                if (r.sweep_value != x || r.baseline != s.baseline)
                    continue;
                if (r.status == RowStatus::Ok)
                    v.push_back(r.sum_delay);
                else
                    ++s.failed;
            }
            s.ok = static_cast<int>(v.size());
            if (v.empty())
            {
                s.mean_delay = s.std_delay = s.min_delay = s.max_delay = std::numeric_limits<double>::quiet_NaN();
            }
            else
            {
                const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
                double ss = 0.0;
                for (double d : v)
                    ss += (d - mean) * (d - mean);
                s.mean_delay = mean;
                s.std_delay = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0;
                s.min_delay = *std::min_element(v.begin(), v.end());
                s.max_delay = *std::max_element(v.begin(), v.end());
            }
            out.push_back(s);
        }
    }
    return out;
}

std::string rows_to_csv(const std::vector<ResultRow> &rows)
{
    std::string out;
    for (std::size_t i = 0; i < row_header.size(); ++i)
        out += (i ? "," : "") + row_header[i];
    out += '\n';
    for (const auto &r : rows)
    {
        std::string times;
        for (std::size_t k = 0; k < r.completion_times.size(); ++k)
            times += (k ? ";" : "") + fmt(r.completion_times[k]);
        const std::vector<std::string> f = {r.scenario,     fmt(r.sweep_value), r.baseline,  std::to_string(r.seed),
                                            to_string(r.status), fmt(r.sum_delay), times,   r.regime,
                                            r.path,         std::to_string(r.iterations), r.converged ? "1" : "0",
                                            r.trace_nonincreasing ? "1" : "0", r.message};
        for (std::size_t i = 0; i < f.size(); ++i)
            out += (i ? "," : "") + csv_field(f[i]);
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> rows_from_csv(const std::string &text)
{
    const auto records = parse_csv(text);
    if (records.empty() || records.front() != row_header)
        throw std::invalid_argument("CSV header does not match the result row layout.");
    std::vector<ResultRow> rows;
    for (std::size_t n = 1; n < records.size(); ++n)
    {
        const auto &f = records[n];
        if (f.size() != row_header.size())
            throw std::invalid_argument("CSV record " + std::to_string(n) + " has " + std::to_string(f.size()) + " fields.");
        ResultRow r;
        r.scenario = f[0];
        r.sweep_value = parse_double(f[1]);
        r.baseline = f[2];
        r.seed = std::stoull(f[3]);
        if (f[4] == "ok")
            r.status = RowStatus::Ok;
        else if (f[4] == "infeasible")
            r.status = RowStatus::Infeasible;
        else if (f[4] == "error")
            r.status = RowStatus::Error;
        else
            throw std::invalid_argument("Unknown row status \"" + f[4] + "\".");
        r.sum_delay = parse_double(f[5]);
        if (!f[6].empty())
            for (const auto &t : split(f[6], ';'))
                r.completion_times.push_back(parse_double(t));
        r.regime = f[7];
        r.path = f[8];
        r.iterations = std::stoi(f[9]);
        r.converged = f[10] == "1";
        r.trace_nonincreasing = f[11] == "1";
        r.message = f[12];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string timing_to_csv(const std::vector<TimingRow> &rows)
{
    std::string out = "scenario,sweep_value,baseline,seed,wall_s\n";
    for (const auto &r : rows)
        out += csv_field(r.scenario) + "," + fmt(r.sweep_value) + "," + csv_field(r.baseline) + "," +
               std::to_string(r.seed) + "," + fmt(r.wall_s) + "\n";
    return out;
}

std::string summary_to_csv(const std::vector<SummaryRow> &rows)
{
    std::string out = "sweep_value,baseline,ok,failed,mean_delay_s,std_delay_s,min_delay_s,max_delay_s\n";
    for (const auto &r : rows)
        out += fmt(r.sweep_value) + "," + csv_field(r.baseline) + "," + std::to_string(r.ok) + "," +
               std::to_string(r.failed) + "," + fmt(r.mean_delay) + "," + fmt(r.std_delay) + "," + fmt(r.min_delay) +
               "," + fmt(r.max_delay) + "\n";
    return out;
}

void emit_outputs(const ScenarioResult &result, const std::string &dir, bool plot_data)
{
    if (result.rows.empty())
        throw std::invalid_argument("No result rows to write.");
    namespace fs = std::filesystem;
    const fs::path root(dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec)
        throw std::runtime_error("Cannot create output directory " + root.string() + ": " + ec.message());

    write_file(root / "rows.csv", rows_to_csv(result.rows));
    write_file(root / "timing.csv", timing_to_csv(result.timing));
    write_file(root / "summary.csv", summary_to_csv(result.summary));
    if (!plot_data)
        return;

    std::vector<std::string> ids;
    for (const auto &s : result.summary)
        if (std::find(ids.begin(), ids.end(), s.baseline) == ids.end())
            ids.push_back(s.baseline);
    for (const auto &id : ids)
    {
        std::string dat = "# " + id + "\n# sweep_value mean_delay_s std_delay_s ok\n";
        for (const auto &s : result.summary)
            if (s.baseline == id)
                dat += fmt(s.sweep_value) + " " + fmt(s.mean_delay) + " " + fmt(s.std_delay) + " " + std::to_string(s.ok) + "\n";
        std::string file = id;
        std::replace(file.begin(), file.end(), '/', '_');
        write_file(root / (file + ".dat"), dat);
    }
}

} // namespace irsma
