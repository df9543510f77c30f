// SPDX-License-Identifier: Apache-2.0
//
// jamrx - jamming resistant receive combining for the massive MIMO uplink
// Copyright (C) 2026 jamrx contributors
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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <jamrx/experiments.hpp>

namespace
{

struct CliOverrides
{
    std::string config_path;
    std::string seed;
    std::string inner_samples;
    std::string outer_samples;
    std::string out_path;
    std::string format;
    std::string sweep; // start:stop:points
    std::string filters;
    std::string threads;
    std::string sigma_scale;
    bool emit_plot_script = false;
};

void apply_sweep_flag(jamrx::ExperimentConfig& cfg, const std::string& value)
{
    std::stringstream stream(value);
    std::string start, stop, points;
    if (!std::getline(stream, start, ':') || !std::getline(stream, stop, ':') ||
        !std::getline(stream, points))
        throw jamrx::ConfigError("--sweep expects start:stop:points, got '" + value + "'");
    jamrx::apply_config_entry(cfg, "sweep_start", start);
    jamrx::apply_config_entry(cfg, "sweep_stop", stop);
    jamrx::apply_config_entry(cfg, "sweep_points", points);
}

// Resolution order: built-in defaults, then config file, then JAMRX_SEED,
// then explicit flags (flags always win).
jamrx::ExperimentConfig resolve_config(const CliOverrides& cli)
{
    jamrx::ExperimentConfig cfg;
    if (!cli.config_path.empty())
        cfg = jamrx::load_config_file(cli.config_path);

    if (const char* env_seed = std::getenv("JAMRX_SEED"); env_seed && cli.seed.empty())
        jamrx::apply_config_entry(cfg, "seed", env_seed);

    if (!cli.seed.empty())
        jamrx::apply_config_entry(cfg, "seed", cli.seed);
    if (!cli.inner_samples.empty())
        jamrx::apply_config_entry(cfg, "inner_samples", cli.inner_samples);
    if (!cli.outer_samples.empty())
        jamrx::apply_config_entry(cfg, "outer_samples", cli.outer_samples);
    if (!cli.out_path.empty())
        jamrx::apply_config_entry(cfg, "out", cli.out_path);
    if (!cli.format.empty())
        jamrx::apply_config_entry(cfg, "format", cli.format);
    if (!cli.sweep.empty())
        apply_sweep_flag(cfg, cli.sweep);
    if (!cli.filters.empty())
        jamrx::apply_config_entry(cfg, "filters", cli.filters);
    if (!cli.threads.empty())
        jamrx::apply_config_entry(cfg, "threads", cli.threads);
    if (!cli.sigma_scale.empty())
        jamrx::apply_config_entry(cfg, "sigma_scale", cli.sigma_scale);
    if (cli.emit_plot_script)
        cfg.emit_plot_script = true;

    cfg.validate();
    return cfg;
}

int run_sweep_command(const jamrx::ExperimentConfig& cfg, bool antennas)
{
    const jamrx::SweepResult result =
        antennas ? jamrx::run_sweep_antennas(cfg) : jamrx::run_sweep_jamming(cfg);

    std::string path = cfg.out_path;
    if (path.empty())
        path = std::string(antennas ? "sweep_antennas" : "sweep_jamming") +
               (cfg.format == jamrx::OutputFormat::Csv ? ".csv" : ".json");
    jamrx::emit(result, cfg.format, path, cfg.emit_plot_script);

    std::cout << "wrote " << result.rows.size() << " rows to " << path << " ("
              << result.wall_seconds << " s)\n";
    return 0;
}

int run_validate_command(const jamrx::ExperimentConfig& cfg)
{
    const jamrx::ValidationReport report = jamrx::run_validation(cfg);
    jamrx::write_report(report, std::cout);
    if (!cfg.out_path.empty())
    {
        std::ofstream out(cfg.out_path);
        if (!out)
            throw std::runtime_error("cannot open '" + cfg.out_path + "' for writing");
        jamrx::write_report(report, out);
    }
    return report.all_pass() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Link-level simulator for a massive MIMO uplink under a pilot-and-data "
                 "jamming attack: achievable-rate sweeps and self-validation."};
    app.require_subcommand(1);

    CliOverrides cli;
    app.add_option("--config", cli.config_path, "flat key=value configuration file");
    app.add_option("--seed", cli.seed, "master seed (beats the JAMRX_SEED environment variable)");
    app.add_option("--inner-samples", cli.inner_samples, "channel/noise draws per jamming sequence");
    app.add_option("--outer-samples", cli.outer_samples, "jamming-sequence draws");
    app.add_option("--out", cli.out_path, "output path");
    app.add_option("--format", cli.format, "output format: csv or json");
    app.add_option("--sweep", cli.sweep, "sweep grid as start:stop:points");
    app.add_option("--filters", cli.filters, "comma list out of mrc,mmse,zf");
    app.add_option("--threads", cli.threads, "worker threads (0 = hardware concurrency)");
    app.add_option("--sigma-scale", cli.sigma_scale,
                   "debug: scale the analytic residual power (validation fault injection)");
    app.add_flag("--emit-plot-script", cli.emit_plot_script,
                 "drop a standalone plot script next to the sweep output");

    auto* sweep_antennas =
        app.add_subcommand("sweep-antennas", "achievable rate vs number of BS antennas");
    auto* sweep_jamming =
        app.add_subcommand("sweep-jamming", "achievable rate vs locked jamming powers q_t = q_d");
    auto* validate = app.add_subcommand("validate", "run the self-validation suite");
    for (auto* sub : {sweep_antennas, sweep_jamming, validate})
        sub->fallthrough(); // global flags may follow the subcommand

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& error)
    {
        return app.exit(error);
    }

    try
    {
        const jamrx::ExperimentConfig cfg = resolve_config(cli);
        if (sweep_antennas->parsed())
            return run_sweep_command(cfg, true);
        if (sweep_jamming->parsed())
            return run_sweep_command(cfg, false);
        if (validate->parsed())
            return run_validate_command(cfg);
        return 1;
    }
    catch (const jamrx::ConfigError& error)
    {
        std::cerr << "config error: " << error.what() << '\n';
        return 1;
    }
    catch (const std::exception& error)
    {
        std::cerr << "error: " << error.what() << '\n';
        return 1;
    }
}
