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

#include <jamrx/experiments.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace jamrx
{

namespace
{

std::string format_double(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    char buffer[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

std::string summarize_params(const ExperimentConfig& cfg)
{
    std::ostringstream out;
    out << "tau=" << cfg.pilot_len << " T=" << cfg.block_len << " beta_u=" << cfg.user_fading
        << " beta_j=" << cfg.jam_fading << " p_t_db=" << cfg.user_pilot_db
        << " p_d_db=" << cfg.user_data_db << " q_t_db=" << cfg.jam_pilot_db
        << " q_d_db=" << cfg.jam_data_db;
    return out.str();
}

std::vector<double> make_grid(double start, double stop, long points)
{
    std::vector<double> grid(points);
    for (long i = 0; i < points; ++i)
        grid[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    return grid;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const std::string& axis_name,
                      const std::vector<double>& grid)
{
    const auto t_start = std::chrono::steady_clock::now();

    SweepResult result;
    result.axis_name = axis_name;
    result.master_seed = cfg.mc.master_seed;
    result.inner_samples = cfg.mc.inner_samples;
    result.outer_samples = cfg.mc.outer_samples;
    result.params_summary = summarize_params(cfg);
    result.timestamp = utc_timestamp();

    for (const double axis_value : grid)
    {
        SystemParams<double> params = cfg.to_params();
        if (axis_name == "M")
        {
            params.num_antennas = static_cast<Index>(std::llround(axis_value));
        }
        else // locked jamming powers, axis value in dB
        {
            const double q = db_to_linear(axis_value);
            params.jam_pilot_power = q;
            params.jam_data_power = q;
        }

        for (const FilterKind kind : cfg.filters)
        {
            SweepRow row;
            row.axis_name = axis_name;
            row.axis_value = axis_value;
            row.filter = kind;

            const auto sim = achievable_rate(params, kind, cfg.mc, cfg.threads);
            row.rate_sim = sim.rate;
            row.rate_sim_se = sim.rate_se;
            if (kind != FilterKind::Mrc)
            {
                const auto anal = rate_from_closed_form(params, kind, params.num_antennas,
                                                        cfg.mc.outer_samples, cfg.mc.master_seed);
                row.rate_closed_form = anal.rate;
            }
            result.rows.push_back(std::move(row));
        }
    }

    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

} // namespace

SweepResult run_sweep_antennas(const ExperimentConfig& cfg)
{
    cfg.validate();
    double start = 50.0, stop = 400.0;
    long points = 8;
    if (cfg.sweep_set)
    {
        start = cfg.sweep_start;
        stop = cfg.sweep_stop;
        points = cfg.sweep_points;
        if (start < 1.0)
            throw ConfigError("config: antenna sweep requires M >= 1");
    }
    return run_sweep(cfg, "M", make_grid(start, stop, points));
}

SweepResult run_sweep_jamming(const ExperimentConfig& cfg)
{
    cfg.validate();
    double start = -20.0, stop = 40.0;
    long points = 7;
    if (cfg.sweep_set)
    {
        start = cfg.sweep_start;
        stop = cfg.sweep_stop;
        points = cfg.sweep_points;
    }
    return run_sweep(cfg, "q_db", make_grid(start, stop, points));
}

std::string to_csv(const SweepResult& result)
{
    std::ostringstream out;
    out << "# " << result.version << " sweep axis=" << result.axis_name << "\n";
    out << "# " << result.params_summary << "\n";
    out << "# seed=" << result.master_seed << " inner_samples=" << result.inner_samples
        << " outer_samples=" << result.outer_samples << "\n";
    out << "# timestamp=" << result.timestamp << "\n";
    out << "# wall_seconds=" << format_double(result.wall_seconds) << "\n";
    out << "axis_name,axis_value,filter,rate_sim_bits_per_symbol,rate_sim_stderr,"
           "rate_closed_form_bits_per_symbol\n";
    for (const SweepRow& row : result.rows)
    {
        out << row.axis_name << ',' << format_double(row.axis_value) << ',' << to_string(row.filter)
            << ',' << format_double(row.rate_sim) << ',' << format_double(row.rate_sim_se) << ',';
        if (row.rate_closed_form)
            out << format_double(*row.rate_closed_form);
        out << '\n';
    }
    return out.str();
}

std::string to_json_string(const SweepResult& result)
{
    nlohmann::json doc;
    doc["metadata"] = {{"version", result.version},
                       {"axis", result.axis_name},
                       {"params", result.params_summary},
                       {"seed", result.master_seed},
                       {"inner_samples", result.inner_samples},
                       {"outer_samples", result.outer_samples},
                       {"timestamp", result.timestamp},
                       {"wall_seconds", result.wall_seconds}};
    doc["rows"] = nlohmann::json::array();
    for (const SweepRow& row : result.rows)
    {
        nlohmann::json entry = {{"axis_name", row.axis_name},
                                {"axis_value", row.axis_value},
                                {"filter", to_string(row.filter)},
                                {"rate_sim_bits_per_symbol", row.rate_sim},
                                {"rate_sim_stderr", row.rate_sim_se}};
        if (row.rate_closed_form)
            entry["rate_closed_form_bits_per_symbol"] = *row.rate_closed_form;
        else
            entry["rate_closed_form_bits_per_symbol"] = nullptr;
        doc["rows"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

namespace
{

// Self-contained plot helper dropped next to the sweep output; reads the
// CSV schema emitted above and renders rate-vs-axis curves per filter.
constexpr const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Plot jamrx sweep output: rate vs axis, one curve per filter."""
import csv
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    rows = []
    with open(path) as fh:
        for line in fh:
            if not line.strip() or line.startswith("#"):
                continue
            rows.append(line)
    reader = csv.DictReader(rows)
    return list(reader)


def main():
    if len(sys.argv) < 2:
        print(f"usage: {sys.argv[0]} <sweep.csv> [out.png]", file=sys.stderr)
        return 1
    rows = load(sys.argv[1])
    out = sys.argv[2] if len(sys.argv) > 2 else sys.argv[1] + ".png"
    axis_name = rows[0]["axis_name"] if rows else "axis"

    fig, ax = plt.subplots(figsize=(7, 5))
    filters = sorted({r["filter"] for r in rows})
    for name in filters:
        sub = [r for r in rows if r["filter"] == name]
        x = [float(r["axis_value"]) for r in sub]
        y = [float(r["rate_sim_bits_per_symbol"]) for r in sub]
        e = [float(r["rate_sim_stderr"]) for r in sub]
        ax.errorbar(x, y, yerr=e, marker="o", label=f"{name} (simul.)")
        cf = [(float(r["axis_value"]), float(r["rate_closed_form_bits_per_symbol"]))
              for r in sub if r["rate_closed_form_bits_per_symbol"]]
        if cf:
            ax.plot([p[0] for p in cf], [p[1] for p in cf], "--", label=f"{name} (anal.)")
    ax.set_xlabel(axis_name)
    ax.set_ylabel("achievable rate [bits/symbol]")
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
)PY";

} // namespace

void emit(const SweepResult& result, OutputFormat format, const std::string& path,
          bool emit_plot_script)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("emit: cannot open '" + path + "' for writing");
    out << (format == OutputFormat::Csv ? to_csv(result) : to_json_string(result));
    if (!out)
        throw std::runtime_error("emit: write failed for '" + path + "'");

    if (emit_plot_script)
    {
        const std::string script_path = path + ".plot.py";
        std::ofstream script(script_path);
        if (!script)
            throw std::runtime_error("emit: cannot open '" + script_path + "' for writing");
        script << kPlotScript;
    }
}

std::vector<SweepRow> parse_csv_rows(std::istream& in)
{
    std::vector<SweepRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line))
    {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen)
        {
            header_seen = true; // column header
            continue;
        }
        std::stringstream fields(line);
        std::string axis_name, axis_value, filter, rate, rate_se, rate_cf;
        std::getline(fields, axis_name, ',');
        std::getline(fields, axis_value, ',');
        std::getline(fields, filter, ',');
        std::getline(fields, rate, ',');
        std::getline(fields, rate_se, ',');
        std::getline(fields, rate_cf);

        SweepRow row;
        row.axis_name = axis_name;
        row.axis_value = std::stod(axis_value);
        const auto kind = filter_from_string(filter);
        if (!kind)
            throw std::runtime_error("parse_csv_rows: unknown filter '" + filter + "'");
        row.filter = *kind;
        row.rate_sim = std::stod(rate);
        row.rate_sim_se = std::stod(rate_se);
        if (!rate_cf.empty())
            row.rate_closed_form = std::stod(rate_cf);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace jamrx
