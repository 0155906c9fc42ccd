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

#ifndef irrarray_channel_H
#define irrarray_channel_H

#include <armadillo>
#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "irrarray/geometry.hpp"

namespace irrarray
{
    // Sparse multipath channel statistics. Angles are direction cosines.
    struct ChannelParams
    {
        int num_receivers = 2;
        int num_paths = 3;              // L, paths per receiver
        int num_paths_max = 0;          // optional: paths drawn uniformly in [num_paths, num_paths_max]
        int subpaths_per_path = 4;      // kappa
        std::vector<double> path_decay_db = {0.0, -10.0, -15.0}; // per path order, before renormalization
        double angle_spread = 0.05;     // per-axis subpath std around the path center
        std::vector<std::array<double, 2>> angular_grid; // candidate receiver directions

        double path_power_db(int path_index) const
        {
            if (path_decay_db.empty())
                return 0.0;
            const size_t i = std::min<size_t>(path_index, path_decay_db.size() - 1);
            return path_decay_db[i];
        }
    };

    // Uniform (u, v) lattice over [lo, hi] with the given step, keeping
    // points with u^2 + v^2 <= max_radius_sq.
    std::vector<std::array<double, 2>> make_angular_grid(double lo = -0.8, double hi = 0.8,
                                                         double step = 0.1,
                                                         double max_radius_sq = 0.9);

    struct Subpath
    {
        std::complex<double> gain; // alpha, after global renormalization
        double tx_u = 0.0, tx_v = 0.0;
        double rx_u = 0.0, rx_v = 0.0;
    };

    // One receiver's channel draw. H has one row per receive antenna and one
    // column per transmit antenna (feed-to-element expansion included so that
    // H * P equals the per-feed channel).
    struct ReceiverChannel
    {
        arma::cx_mat H;
        double boresight_u = 0.0;
        double boresight_v = 0.0;
        std::vector<Subpath> subpaths;
    };

    struct ChannelRealization
    {
        std::vector<ReceiverChannel> receivers;
    };

    // Transmit-side description shared by channel assembly and beamforming.
    struct TxArray
    {
        Grid grid;
        ClusterLayout layout;
        std::vector<ElementPattern> patterns; // one per cluster
        arma::mat connection;                 // N_TX x S

        int num_feeds() const { return layout.num_clusters(); }
        int active_elements() const;
    };

    TxArray make_tx_array(const Grid &grid, const std::vector<std::vector<int>> &clusters,
                          const ElementPattern &pattern);

    // Draws receiver boresights without replacement from the angular grid,
    // places path 1 at the boresight and further path centers uniformly on
    // the grid, perturbs subpaths by the per-axis spread (clipped to the unit
    // disk) and renormalizes the gains to unit total power.
    // Deterministic for a given seed.
    // Throws std::invalid_argument when the grid has fewer points than
    // receivers.
    ChannelRealization draw_channel(const ChannelParams &params, const TxArray &tx,
                                    const Grid &rx_grid, const ElementPattern &rx_pattern,
                                    std::uint64_t seed);

    // Reassembles the channel matrix of one receiver from its subpath
    // metadata; matches the stored matrix to floating tolerance.
    arma::cx_mat reconstruct_channel(std::span<const Subpath> subpaths, const TxArray &tx,
                                     const Grid &rx_grid, const ElementPattern &rx_pattern);

    // Subpath metadata as JSON for reproducibility audits; numbers round-trip
    // exactly through the shortest-representation encoding.
    std::string channel_metadata_json(const ChannelRealization &realization);
}

#endif
