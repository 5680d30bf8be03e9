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


#include "CLI11.hpp"

#include "irsma/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

using namespace irsma;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_infeasible = 2;
constexpr int exit_nonconvergence = 3;

struct SolveFlags
{
    std::string config;
    std::string order = "pro";
    bool static_irs = false;
    bool no_irs = false;
};

HmaOptions hma_options(const SolveFlags &f)
{
    HmaOptions o;
    o.order_policy = parse_order_policy(f.order);
    o.beam_mode = f.static_irs ? BeamMode::Static : BeamMode::Dynamic;
    return o;
}

void load_instance(const SolveFlags &f, SystemConfig &config, ChannelRealization &channels)
{
    config = load_system_config(f.config);
    channels = generate_channels(config);
    if (f.no_irs)
    {
        config.irs_elements = 0;
        channels = channels.without_irs();
    }
}

std::string join(const std::vector<double> &v, const char *format)
{
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        std::snprintf(buf, sizeof(buf), format, v[i]);
        out += (i ? " " : "") + std::string(buf);
    }
    return out;
}

int cmd_run(const std::string &scenario_path, const std::string &out_dir, int draws, long long seed,
            const std::string &baselines, bool static_irs, bool no_irs, const std::string &order, int threads,
            bool plot_data)
{
    Scenario sc = load_scenario(scenario_path);
    if (draws > 0)
        sc.draws = draws;
    if (seed >= 0)
        sc.seed_base = static_cast<std::uint64_t>(seed);
    if (threads >= 0)
        sc.threads = threads;
    if (!baselines.empty())
        sc.baselines = parse_baseline_list(baselines);
    std::vector<Baseline> adjusted;
    for (auto b : sc.baselines)
    {
        if (static_irs)
            b.irs = IrsMode::Static;
        if (no_irs)
            b.irs = IrsMode::None;
        if (!order.empty())
        {
            const auto parsed = parse_baseline("hma/dyn/" + order);
            b.order = parsed.order;
            b.order_seed = parsed.order_seed;
        }
        if (std::find(adjusted.begin(), adjusted.end(), b) == adjusted.end())
            adjusted.push_back(b);
    }
    sc.baselines = adjusted;
    sc.validate();

    const auto result = run_scenario(sc);
    emit_outputs(result, out_dir, plot_data);

    std::printf("%s  %s  (%zu rows)\n", sc.name.c_str(), sc.figure.c_str(), result.rows.size());
    std::printf("%14s  %-24s %5s %6s  %14s\n", to_string(sc.sweep).c_str(), "baseline", "ok", "failed", "mean delay (s)");
    for (const auto &s : result.summary)
        std::printf("%14.6g  %-24s %5d %6d  %14.6g\n", s.sweep_value, s.baseline.c_str(), s.ok, s.failed, s.mean_delay);
    return exit_ok;
}

int cmd_thresholds(const SolveFlags &f)
{
    SystemConfig config;
    ChannelRealization ch;
    load_instance(f, config, ch);
    if (config.regime == BudgetRegime::Energy)
        check_energy_feasible(config, ch);
    const auto tdma = solve_tdma(config, ch);
    const auto order = select_order(config, tdma, hma_options(f));
    const auto noma = solve_noma(config, ch, order, {});
    const auto rep = classify_regime(config, ch, order, noma.beam, tdma);

    const bool power = config.regime == BudgetRegime::Power;
    std::printf("regime        %s\n", to_string(rep.regime).c_str());
    std::printf("budget        %s\n", power ? "power" : "energy");
    std::printf("tdma delay    %.9g s\n", tdma.sum_delay);
    std::printf("noma delay    %.9g s\n", noma.delay);
    if (rep.both_collapse)
        std::printf("note          both collapse conditions hold, the shorter schedule is used\n");
    std::printf("\n%5s %6s", "slot", "device");
    if (power)
        std::printf(" %14s %14s %6s\n", "L (Kbits)", "L^no (Kbits)", "noma");
    else
        std::printf(" %12s %12s %12s %4s %6s %6s\n", "E (J)", "E^no (J)", "E^td (J)", "ref", "noma", "tdma");
    for (std::size_t k = 0; k < order.size(); ++k)
    {
        std::printf("%5zu %6d", k + 1, order[k] + 1);
        if (k == 0)
        {
            std::printf("   (reference device)\n");
            continue;
        }
        if (power)
            std::printf(" %14.6g %14.6g %6s\n", rep.requirement[k] / 1e3, rep.noma_threshold[k] / 1e3,
                        rep.noma_side[k] ? "yes" : "no");
        else
            std::printf(" %12.6g %12.6g %12.6g %4d %6s %6s\n", rep.requirement[k], rep.noma_threshold[k],
                        rep.tdma_threshold[k], rep.tdma_reference[k] + 1, rep.noma_side[k] ? "yes" : "no",
                        rep.tdma_side[k] ? "yes" : "no");
    }
    return exit_ok;
}

int cmd_solve(const SolveFlags &f)
{
    SystemConfig config;
    ChannelRealization ch;
    load_instance(f, config, ch);
    const auto sol = solve_hma(config, ch, hma_options(f));
    const auto &s = sol.schedule;
    const auto &rep = sol.report;

    std::vector<double> order1;
    for (int d : s.order)
        order1.push_back(d + 1);
    std::printf("sum delay     %.9g s\n", sol.sum_delay());
    std::printf("regime        %s\n", to_string(rep.regime).c_str());
    std::printf("path          %s\n", to_string(rep.path).c_str());
    std::printf("iterations    %d%s\n", rep.outer_iterations, rep.converged ? "" : " (not converged)");
    std::printf("tdma delay    %.9g s\n", rep.tdma_delay);
    if (rep.noma_feasible)
        std::printf("noma delay    %.9g s\n", rep.noma_delay);
    std::printf("feasible      %s (shortfall %.3g, budget excess %.3g)\n", rep.feasibility.feasible ? "yes" : "no",
                rep.feasibility.max_shortfall, rep.feasibility.max_budget_excess);
    std::printf("order         %s\n", join(order1, "%.0f").c_str());
    std::printf("tau (s)       %s\n", join(s.tau, "%.6g").c_str());
    std::printf("done (s)      %s\n", join(s.completion_times(), "%.6g").c_str());
    std::printf("\npower (W), row = ordered device, column = slot\n");
    for (int k = 0; k < s.slots(); ++k)
    {
        std::vector<double> row;
        for (int i = 0; i <= k; ++i)
            row.push_back(s.power(k, i));
        std::printf("  D%-3d %s\n", s.order[k] + 1, join(row, "%11.5g").c_str());
    }
    if (config.regime == BudgetRegime::Energy)
    {
        std::printf("\nenergy z (J)\n");
        for (int k = 0; k < s.slots(); ++k)
        {
            std::vector<double> row;
            for (int i = 0; i <= k; ++i)
                row.push_back(s.energy(k, i));
            std::printf("  D%-3d %s\n", s.order[k] + 1, join(row, "%11.5g").c_str());
        }
    }
    return rep.converged ? exit_ok : exit_nonconvergence;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Minimum sum-delay scheduling for IRS-aided uplink hybrid multiple access"};
    app.require_subcommand(1);

    std::string scenario, out_dir, baselines, order;
    int draws = 0, threads = -1;
    long long seed = -1;
    bool static_irs = false, no_irs = false, no_dat = false;
    auto *run = app.add_subcommand("run", "Monte Carlo sweep of a scenario file");
    run->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--draws", draws, "Fading draws per sweep value")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Seed of the first draw")->check(CLI::NonNegativeNumber);
    run->add_option("--baselines", baselines, "Comma-separated protocol/irs/order ids");
    run->add_flag("--static-irs", static_irs, "Force a static IRS on every baseline");
    run->add_flag("--no-irs", no_irs, "Remove the IRS from every baseline");
    run->add_option("--order", order, "Force the device order policy: pro, des, rand, exhaustive");
    run->add_option("--threads", threads, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
    run->add_flag("--no-dat", no_dat, "Skip the per-baseline plot data files");

    SolveFlags th_flags, solve_flags;
    auto *th = app.add_subcommand("thresholds", "Print the protocol thresholds of one instance");
    th->add_option("--config", th_flags.config, "System config file")->required()->check(CLI::ExistingFile);
    th->add_option("--order", th_flags.order, "Device order policy: pro, des, rand");
    th->add_flag("--no-irs", th_flags.no_irs, "Remove the IRS");

    auto *solve = app.add_subcommand("solve", "Solve one instance and print the schedule");
    solve->add_option("--config", solve_flags.config, "System config file")->required()->check(CLI::ExistingFile);
    solve->add_option("--order", solve_flags.order, "Device order policy: pro, des, rand, exhaustive");
    solve->add_flag("--static-irs", solve_flags.static_irs, "One IRS configuration for all slots");
    solve->add_flag("--no-irs", solve_flags.no_irs, "Remove the IRS");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (*run)
        {
            if (static_irs && no_irs)
                throw CLI::ValidationError("--static-irs and --no-irs cannot be combined.");
            return cmd_run(scenario, out_dir, draws, seed, baselines, static_irs, no_irs, order, threads, !no_dat);
        }
        if (*th)
            return cmd_thresholds(th_flags);
        return cmd_solve(solve_flags);
    }
    catch (const InfeasibleError &e)
    {
        std::cerr << "infeasible: " << e.what() << "\n";
        return exit_infeasible;
    }
    catch (const CLI::Error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
