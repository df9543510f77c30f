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

#include <cmath>
#include <fstream>
#include <sstream>

namespace jamrx
{

namespace
{

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value)
{
    std::size_t pos = 0;
    double parsed = 0.0;
    try
    {
        parsed = std::stod(value, &pos);
    }
    catch (const std::exception&)
    {
        throw ConfigError("config key '" + key + "': '" + value + "' is not a number");
    }
    if (pos != value.size())
        throw ConfigError("config key '" + key + "': '" + value + "' is not a number");
    return parsed;
}

long parse_long(const std::string& key, const std::string& value)
{
    std::size_t pos = 0;
    long parsed = 0;
    try
    {
        parsed = std::stol(value, &pos);
    }
    catch (const std::exception&)
    {
        throw ConfigError("config key '" + key + "': '" + value + "' is not an integer");
    }
    if (pos != value.size())
        throw ConfigError("config key '" + key + "': '" + value + "' is not an integer");
    return parsed;
}

bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1" || value == "yes" || value == "on")
        return true;
    if (value == "false" || value == "0" || value == "no" || value == "off")
        return false;
    throw ConfigError("config key '" + key + "': '" + value + "' is not a boolean");
}

std::vector<FilterKind> parse_filters(const std::string& value)
{
    std::vector<FilterKind> kinds;
    std::stringstream stream(value);
    std::string token;
    while (std::getline(stream, token, ','))
    {
        token = trim(token);
        if (token.empty())
            continue;
        const auto kind = filter_from_string(token);
        if (!kind)
            throw ConfigError("config key 'filters': unknown filter '" + token + "'");
        kinds.push_back(*kind);
    }
    if (kinds.empty())
        throw ConfigError("config key 'filters': no filters selected");
    return kinds;
}

} // namespace

void ExperimentConfig::validate() const
{
    if (pilot_len < 2)
        throw ConfigError("config: tau must be >= 2");
    if (block_len <= pilot_len)
        throw ConfigError("config: T must exceed tau");
    if (num_antennas < 1)
        throw ConfigError("config: M must be >= 1");
    if (!(user_fading >= 0.0) || !(jam_fading >= 0.0))
        throw ConfigError("config: fadings must be nonnegative");
    for (const double db : {user_pilot_db, user_data_db, jam_pilot_db, jam_data_db})
        if (!std::isfinite(db))
            throw ConfigError("config: powers must be finite");
    if (sweep_set)
    {
        if (!std::isfinite(sweep_start) || !std::isfinite(sweep_stop))
            throw ConfigError("config: sweep bounds must be finite");
        if (sweep_points < 2)
            throw ConfigError("config: sweep must have at least 2 points");
    }
    if (filters.empty())
        throw ConfigError("config: no filters selected");
    if (!(sigma_scale > 0.0))
        throw ConfigError("config: sigma_scale must be positive");
    try
    {
        mc.validate();
    }
    catch (const std::invalid_argument& error)
    {
        throw ConfigError(std::string("config: ") + error.what());
    }
}

SystemParams<double> ExperimentConfig::to_params() const
{
    SystemParams<double> params;
    params.num_antennas = num_antennas;
    params.pilot_len = pilot_len;
    params.block_len = block_len;
    params.user_pilot_power = db_to_linear(user_pilot_db);
    params.user_data_power = db_to_linear(user_data_db);
    params.jam_pilot_power = db_to_linear(jam_pilot_db);
    params.jam_data_power = db_to_linear(jam_data_db);
    params.user_fading = user_fading;
    params.jam_fading = jam_fading;
    return params;
}

void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "p_t_db")
        cfg.user_pilot_db = parse_double(key, value);
    else if (key == "p_d_db")
        cfg.user_data_db = parse_double(key, value);
    else if (key == "q_t_db")
        cfg.jam_pilot_db = parse_double(key, value);
    else if (key == "q_d_db")
        cfg.jam_data_db = parse_double(key, value);
    else if (key == "beta_u")
        cfg.user_fading = parse_double(key, value);
    else if (key == "beta_j")
        cfg.jam_fading = parse_double(key, value);
    else if (key == "tau")
        cfg.pilot_len = parse_long(key, value);
    else if (key == "T")
        cfg.block_len = parse_long(key, value);
    else if (key == "M")
        cfg.num_antennas = parse_long(key, value);
    else if (key == "sweep_start")
    {
        cfg.sweep_start = parse_double(key, value);
        cfg.sweep_set = true;
    }
    else if (key == "sweep_stop")
    {
        cfg.sweep_stop = parse_double(key, value);
        cfg.sweep_set = true;
    }
    else if (key == "sweep_points")
    {
        cfg.sweep_points = parse_long(key, value);
        cfg.sweep_set = true;
    }
    else if (key == "filters")
        cfg.filters = parse_filters(value);
    else if (key == "inner_samples")
        cfg.mc.inner_samples = parse_long(key, value);
    else if (key == "outer_samples")
        cfg.mc.outer_samples = parse_long(key, value);
    else if (key == "seed")
        cfg.mc.master_seed = static_cast<std::uint64_t>(parse_long(key, value));
    else if (key == "threads")
        cfg.threads = static_cast<int>(parse_long(key, value));
    else if (key == "out")
        cfg.out_path = value;
    else if (key == "format")
    {
        if (value == "csv")
            cfg.format = OutputFormat::Csv;
        else if (value == "json")
            cfg.format = OutputFormat::Json;
        else
            throw ConfigError("config key 'format': expected csv or json, got '" + value + "'");
    }
    else if (key == "emit_plot_script")
        cfg.emit_plot_script = parse_bool(key, value);
    else if (key == "sigma_scale")
        cfg.sigma_scale = parse_double(key, value);
    else
        throw ConfigError("config: unknown key '" + key + "'");
}

ExperimentConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");

    ExperimentConfig cfg;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos)
            line.erase(comment);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) + " of '" + path +
                              "' is not a key=value assignment");
        try
        {
            apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
        catch (const ConfigError& error)
        {
            throw ConfigError(std::string(error.what()) + " (line " + std::to_string(line_no) +
                              " of '" + path + "')");
        }
    }
    return cfg;
}

} // namespace jamrx
