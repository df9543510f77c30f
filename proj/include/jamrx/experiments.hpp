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

#ifndef JAMRX_EXPERIMENTS_HPP
#define JAMRX_EXPERIMENTS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jamrx.hpp"

namespace jamrx
{

constexpr const char* kVersion = "jamrx 0.1.0";

enum class OutputFormat
{
    Csv,
    Json
};

/// Raised on malformed configuration files or flag values; the CLI maps
/// it to exit code 1.
struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

/// Experiment configuration. Powers are configured in dB (converted to
/// linear at this layer only), fadings are linear. Sweep bounds are in
/// the axis' native unit: antennas for the antenna sweep, dB for the
/// locked q_t = q_d jamming sweep.
struct ExperimentConfig
{
    double user_pilot_db = 5.0; // p_t
    double user_data_db = 5.0;  // p_d
    double jam_pilot_db = 5.0;  // q_t
    double jam_data_db = 5.0;   // q_d
    double user_fading = 1.0;   // beta_u
    double jam_fading = 1.0;    // beta_j
    long pilot_len = 3;         // tau
    long block_len = 200;       // T
    long num_antennas = 100;    // M where it is not the sweep axis

    double sweep_start = 0.0;
    double sweep_stop = 0.0;
    long sweep_points = 0;
    bool sweep_set = false; // config/CLI provided an explicit grid

    std::vector<FilterKind> filters{FilterKind::Mrc, FilterKind::MmseType, FilterKind::ZfType};
    McConfig mc;
    int threads = 0; // 0: hardware concurrency

    std::string out_path;
    OutputFormat format = OutputFormat::Csv;
    bool emit_plot_script = false;

    // validation fault injection: scales the analytic residual power so
    // the simulation-vs-analysis checks must notice the mismatch
    double sigma_scale = 1.0;

    void validate() const;
    SystemParams<double> to_params() const; // uses num_antennas
};

/// Applies one `key = value` assignment; shared by the file parser and
/// the CLI override path. Throws ConfigError on unknown keys or bad
/// values.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Loads a flat key=value configuration file ('#' starts a comment).
ExperimentConfig load_config_file(const std::string& path);

struct SweepRow
{
    std::string axis_name;
    double axis_value = 0.0;
    FilterKind filter = FilterKind::Mrc;
    double rate_sim = 0.0;
    double rate_sim_se = 0.0;
    std::optional<double> rate_closed_form; // empty for the MRC baseline
};

struct SweepResult
{
    std::string axis_name;
    std::vector<SweepRow> rows;

    // metadata
    std::uint64_t master_seed = 0;
    long inner_samples = 0;
    long outer_samples = 0;
    std::string version = kVersion;
    std::string params_summary;
    double wall_seconds = 0.0;
    std::string timestamp;
};

/// Achievable-rate sweep over the antenna count (grid default
/// 50..400 in 8 points when the config does not name one).
SweepResult run_sweep_antennas(const ExperimentConfig& cfg);

/// Achievable-rate sweep over locked jamming powers q_t = q_d in dB
/// (default grid -20..40 dB in 7 points).
SweepResult run_sweep_jamming(const ExperimentConfig& cfg);

std::string to_csv(const SweepResult& result);
std::string to_json_string(const SweepResult& result);

/// Writes the result in the requested format; optionally drops a
/// standalone Python plot script next to it.
void emit(const SweepResult& result, OutputFormat format, const std::string& path,
          bool emit_plot_script = false);

/// Parses rows back out of an emitted CSV (metadata lines are skipped).
std::vector<SweepRow> parse_csv_rows(std::istream& in);

struct ValidationCheck
{
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidationReport
{
    std::vector<ValidationCheck> checks;
    bool all_pass() const;
};

/// Runs the self-validation suite: exactness identities, large-array
/// moment oracles, asymptotic agreement of the two closed forms, and
/// simulation-vs-analysis gaps. Check failures are entries in the
/// report, not errors.
ValidationReport run_validation(const ExperimentConfig& cfg);

void write_report(const ValidationReport& report, std::ostream& out);

} // namespace jamrx

#endif // JAMRX_EXPERIMENTS_HPP
