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

#ifndef irrarray_scenario_H
#define irrarray_scenario_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "irrarray/beamforming.hpp"
#include "irrarray/channel.hpp"
#include "irrarray/geometry.hpp"
#include "irrarray/tiling.hpp"

namespace irrarray
{
    struct GaSettings
    {
        int population = 20;
        double crossover_prob = 0.9;
        double mutation_prob = 0.1;
        int max_generations = 300;
        double early_stop = 0.0;  // fitness threshold; enabled by the flag below
        bool use_early_stop = false;
        std::uint64_t space_cap = 100000; // enumeration/sampling budget for the search space
        std::uint64_t seed = 1;
    };

    // Full experiment description; defaults reproduce the reference setup
    // (8x10 transmitter, two receivers with 4x4 arrays).
    struct ScenarioConfig
    {
        int tx_rows = 8, tx_cols = 10;
        double tx_dx = 0.5, tx_dy = 0.5;
        int rx_rows = 4, rx_cols = 4;
        double rx_dx = 0.5, rx_dy = 0.5;
        int num_receivers = 2;

        std::vector<Architecture> architectures = {Architecture::fd, Architecture::hfc,
                                                   Architecture::hpc};
        std::vector<ConfigKind> kinds = {ConfigKind::fpra, ConfigKind::thinned,
                                         ConfigKind::domino, ConfigKind::tetromino};
        std::map<ConfigKind, double> element_gain_dbi = {{ConfigKind::fpra, 4.07},
                                                         {ConfigKind::thinned, 5.68},
                                                         {ConfigKind::domino, 6.5},
                                                         {ConfigKind::tetromino, 7.9}};
        std::map<ConfigKind, double> feed_loss_db = {{ConfigKind::fpra, 0.0},
                                                     {ConfigKind::thinned, 0.0},
                                                     {ConfigKind::domino, 0.3},
                                                     {ConfigKind::tetromino, 0.6}};
        double rx_gain_dbi = 0.0;

        ChannelParams channel; // angular_grid filled with the default lattice when empty

        std::vector<double> snr_db = {-10, -5, 0, 5, 10, 15, 20};
        double snr_eval_db = 5.0;
        int n_realizations = 25;      // optimization averaging
        int n_realizations_sweep = 500;
        std::vector<double> beta_grid = {0.0, 0.25, 0.5, 0.75, 1.0};

        GaSettings ga;

        double mask_half_u = 0.21;
        double mask_half_v = 0.28;
        double pattern_grid_step = 0.01;
        double codebook_step = 0.1;

        std::uint64_t channel_seed = 1234;
        std::uint64_t sampling_seed = 99;

        std::string output_dir = "out";

        double gain_for(ConfigKind kind) const;
        double loss_for(ConfigKind kind) const;
        PatternKind pattern_kind_for(ConfigKind kind) const;
    };

    ScenarioConfig default_scenario();

    // JSON round trip; parsing accepts partial documents and keeps defaults
    // for missing fields. Throws std::invalid_argument on malformed input or
    // inconsistent values.
    std::string scenario_to_json(const ScenarioConfig &s);
    ScenarioConfig scenario_from_json(const std::string &text);
    ScenarioConfig load_scenario(const std::string &path);
}

#endif
