// SPDX-License-Identifier: Apache-2.0
//
// irrarray - simulation and optimization toolkit for irregular phased arrays
// Copyright (C) 2026 The irrarray authors
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

#include "irrarray/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace irrarray
{

double ScenarioConfig::gain_for(ConfigKind kind) const
{
    const auto it = element_gain_dbi.find(kind);
    if (it == element_gain_dbi.end())
        throw std::invalid_argument("No element gain configured for kind '" + to_string(kind) +
                                    "'.");
    return it->second;
}

double ScenarioConfig::loss_for(ConfigKind kind) const
{
    const auto it = feed_loss_db.find(kind);
    if (it == feed_loss_db.end())
        throw std::invalid_argument("No feed loss configured for kind '" + to_string(kind) +
                                    "'.");
    return it->second;
}

PatternKind ScenarioConfig::pattern_kind_for(ConfigKind kind) const
{
    switch (kind)
    {
    case ConfigKind::fpra:
        return PatternKind::single;
    case ConfigKind::thinned:
        return PatternKind::thinned;
    case ConfigKind::domino:
        return PatternKind::domino_h;
    case ConfigKind::tetromino:
        return PatternKind::tetromino;
    }
    return PatternKind::single;
}

ScenarioConfig default_scenario()
{
    ScenarioConfig s;
    s.channel.angular_grid = make_angular_grid();
    return s;
}

namespace
{
    using nlohmann::ordered_json;

    ordered_json kind_map_json(const std::map<ConfigKind, double> &m)
    {
        ordered_json j;
        for (const auto &[k, v] : m)
            j[to_string(k)] = v;
        return j;
    }

    std::map<ConfigKind, double> kind_map_from_json(const nlohmann::json &j)
    {
        std::map<ConfigKind, double> m;
        for (const auto &[key, value] : j.items())
            m[config_kind_from_string(key)] = value.get<double>();
        return m;
    }
} // namespace

std::string scenario_to_json(const ScenarioConfig &s)
{
    ordered_json j;
    j["tx"] = {{"rows", s.tx_rows}, {"cols", s.tx_cols}, {"dx", s.tx_dx}, {"dy", s.tx_dy}};
    j["rx"] = {{"rows", s.rx_rows}, {"cols", s.rx_cols}, {"dx", s.rx_dx}, {"dy", s.rx_dy}};
    j["num_receivers"] = s.num_receivers;

    std::vector<std::string> archs, kinds;
    for (auto a : s.architectures)
        archs.push_back(to_string(a));
    for (auto k : s.kinds)
        kinds.push_back(to_string(k));
    j["architectures"] = archs;
    j["kinds"] = kinds;
    j["element_gain_dbi"] = kind_map_json(s.element_gain_dbi);
    j["feed_loss_db"] = kind_map_json(s.feed_loss_db);
    j["rx_gain_dbi"] = s.rx_gain_dbi;

    j["channel"] = {{"num_paths", s.channel.num_paths},
                    {"num_paths_max", s.channel.num_paths_max},
                    {"subpaths_per_path", s.channel.subpaths_per_path},
                    {"path_decay_db", s.channel.path_decay_db},
                    {"angle_spread", s.channel.angle_spread}};
    if (!s.channel.angular_grid.empty())
        j["channel"]["angular_grid"] = s.channel.angular_grid;

    j["snr_db"] = s.snr_db;
    j["snr_eval_db"] = s.snr_eval_db;
    j["n_realizations"] = s.n_realizations;
    j["n_realizations_sweep"] = s.n_realizations_sweep;
    j["beta_grid"] = s.beta_grid;

    j["ga"] = {{"population", s.ga.population},
               {"crossover_prob", s.ga.crossover_prob},
               {"mutation_prob", s.ga.mutation_prob},
               {"max_generations", s.ga.max_generations},
               {"early_stop", s.ga.use_early_stop ? ordered_json(s.ga.early_stop)
                                                  : ordered_json(nullptr)},
               {"space_cap", s.ga.space_cap},
               {"seed", s.ga.seed}};

    j["sll_mask"] = {{"half_u", s.mask_half_u}, {"half_v", s.mask_half_v}};
    j["pattern_grid_step"] = s.pattern_grid_step;
    j["codebook_step"] = s.codebook_step;
    j["seeds"] = {{"channel", s.channel_seed}, {"sampling", s.sampling_seed}};
    j["output_dir"] = s.output_dir;
    return j.dump(2);
}

ScenarioConfig scenario_from_json(const std::string &text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument(std::string("Malformed scenario JSON: ") + e.what());
    }

    ScenarioConfig s = default_scenario();
    try
    {
        if (j.contains("tx"))
        {
            const auto &t = j["tx"];
            s.tx_rows = t.value("rows", s.tx_rows);
            s.tx_cols = t.value("cols", s.tx_cols);
            s.tx_dx = t.value("dx", s.tx_dx);
            s.tx_dy = t.value("dy", s.tx_dy);
        }
        if (j.contains("rx"))
        {
            const auto &t = j["rx"];
            s.rx_rows = t.value("rows", s.rx_rows);
            s.rx_cols = t.value("cols", s.rx_cols);
            s.rx_dx = t.value("dx", s.rx_dx);
            s.rx_dy = t.value("dy", s.rx_dy);
        }
        s.num_receivers = j.value("num_receivers", s.num_receivers);

        if (j.contains("architectures"))
        {
            s.architectures.clear();
            for (const auto &a : j["architectures"])
                s.architectures.push_back(architecture_from_string(a.get<std::string>()));
        }
        if (j.contains("kinds"))
        {
            s.kinds.clear();
            for (const auto &k : j["kinds"])
                s.kinds.push_back(config_kind_from_string(k.get<std::string>()));
        }
        if (j.contains("element_gain_dbi"))
            s.element_gain_dbi = kind_map_from_json(j["element_gain_dbi"]);
        if (j.contains("feed_loss_db"))
            s.feed_loss_db = kind_map_from_json(j["feed_loss_db"]);
        s.rx_gain_dbi = j.value("rx_gain_dbi", s.rx_gain_dbi);

        if (j.contains("channel"))
        {
            const auto &c = j["channel"];
            s.channel.num_paths = c.value("num_paths", s.channel.num_paths);
            s.channel.num_paths_max = c.value("num_paths_max", s.channel.num_paths_max);
            s.channel.subpaths_per_path =
                c.value("subpaths_per_path", s.channel.subpaths_per_path);
            if (c.contains("path_decay_db"))
                s.channel.path_decay_db = c["path_decay_db"].get<std::vector<double>>();
            s.channel.angle_spread = c.value("angle_spread", s.channel.angle_spread);
            if (c.contains("angular_grid"))
                s.channel.angular_grid =
                    c["angular_grid"].get<std::vector<std::array<double, 2>>>();
        }

        if (j.contains("snr_db"))
            s.snr_db = j["snr_db"].get<std::vector<double>>();
        s.snr_eval_db = j.value("snr_eval_db", s.snr_eval_db);
        s.n_realizations = j.value("n_realizations", s.n_realizations);
        s.n_realizations_sweep = j.value("n_realizations_sweep", s.n_realizations_sweep);
        if (j.contains("beta_grid"))
            s.beta_grid = j["beta_grid"].get<std::vector<double>>();

        if (j.contains("ga"))
        {
            const auto &g = j["ga"];
            s.ga.population = g.value("population", s.ga.population);
            s.ga.crossover_prob = g.value("crossover_prob", s.ga.crossover_prob);
            s.ga.mutation_prob = g.value("mutation_prob", s.ga.mutation_prob);
            s.ga.max_generations = g.value("max_generations", s.ga.max_generations);
            if (g.contains("early_stop") && !g["early_stop"].is_null())
            {
                s.ga.early_stop = g["early_stop"].get<double>();
                s.ga.use_early_stop = true;
            }
            s.ga.space_cap = g.value("space_cap", s.ga.space_cap);
            s.ga.seed = g.value("seed", s.ga.seed);
        }

        if (j.contains("sll_mask"))
        {
            s.mask_half_u = j["sll_mask"].value("half_u", s.mask_half_u);
            s.mask_half_v = j["sll_mask"].value("half_v", s.mask_half_v);
        }
        s.pattern_grid_step = j.value("pattern_grid_step", s.pattern_grid_step);
        s.codebook_step = j.value("codebook_step", s.codebook_step);
        if (j.contains("seeds"))
        {
            s.channel_seed = j["seeds"].value("channel", s.channel_seed);
            s.sampling_seed = j["seeds"].value("sampling", s.sampling_seed);
        }
        s.output_dir = j.value("output_dir", s.output_dir);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw std::invalid_argument(std::string("Invalid scenario field: ") + e.what());
    }

    if (s.tx_rows < 1 || s.tx_cols < 1 || s.rx_rows < 1 || s.rx_cols < 1)
        throw std::invalid_argument("Array dimensions must be positive.");
    if (s.num_receivers < 1)
        throw std::invalid_argument("At least one receiver is required.");
    if (s.mask_half_u <= 0.0 || s.mask_half_v <= 0.0)
        throw std::invalid_argument("Mask half-widths must be positive.");
    if (static_cast<int>(s.channel.angular_grid.size()) < s.num_receivers)
        throw std::invalid_argument("Angular grid smaller than the receiver count.");
    for (const auto &k : s.kinds)
    {
        s.gain_for(k);
        s.loss_for(k);
    }
    return s;
}

ScenarioConfig load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("Cannot open scenario file '" + path + "'.");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

} // namespace irrarray
