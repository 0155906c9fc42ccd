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

#include "irrarray/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "irrarray/tiling.hpp"

#include "json.hpp"

namespace irrarray
{

std::vector<std::array<double, 2>> make_angular_grid(double lo, double hi, double step,
                                                     double max_radius_sq)
{
    if (step <= 0.0)
        throw std::invalid_argument("Angular grid step must be positive.");
    std::vector<std::array<double, 2>> grid;
    const int n = static_cast<int>(std::llround((hi - lo) / step));
    for (int i = 0; i <= n; i++)
        for (int j = 0; j <= n; j++)
        {
            const double u = lo + i * step;
            const double v = lo + j * step;
            if (u * u + v * v <= max_radius_sq)
                grid.push_back({u, v});
        }
    return grid;
}

int TxArray::active_elements() const
{
    int n = 0;
    for (const auto &c : layout.clusters)
        n += static_cast<int>(c.size());
    return n;
}

TxArray make_tx_array(const Grid &grid, const std::vector<std::vector<int>> &clusters,
                      const ElementPattern &pattern)
{
    TxArray tx;
    tx.grid = grid;
    tx.layout = make_cluster_layout(grid, clusters);
    tx.patterns.assign(clusters.size(), pattern);

    ArrayConfig cfg;
    cfg.rows = grid.rows;
    cfg.cols = grid.cols;
    cfg.clusters = clusters;
    tx.connection = connection_matrix(cfg);
    return tx;
}

namespace
{
    void clip_to_disk(double &u, double &v)
    {
        const double r = std::hypot(u, v);
        if (r >= 1.0)
        {
            const double s = (1.0 - 1e-12) / r;
            u *= s;
            v *= s;
        }
    }

    // Per-feed channel expanded to the element level: each element carries an
    // equal share of its cluster column so that H * P reproduces the per-feed
    // channel exactly.
    arma::cx_mat expand_to_elements(const arma::cx_mat &per_feed, const TxArray &tx)
    {
        arma::cx_mat H(per_feed.n_rows, tx.grid.num_elements(), arma::fill::zeros);
        for (size_t j = 0; j < tx.layout.clusters.size(); j++)
        {
            const auto &cluster = tx.layout.clusters[j];
            const double share = 1.0 / static_cast<double>(cluster.size());
            for (int cell : cluster)
                H.col(cell) = share * per_feed.col(j);
        }
        return H;
    }
} // namespace

ChannelRealization draw_channel(const ChannelParams &params, const TxArray &tx,
                                const Grid &rx_grid, const ElementPattern &rx_pattern,
                                std::uint64_t seed)
{
    if (params.num_receivers < 1 || params.num_paths < 1 || params.subpaths_per_path < 1)
        throw std::invalid_argument("Receiver, path and subpath counts must be positive.");
    if (params.angle_spread < 0.0)
        throw std::invalid_argument("Angle spread must be non-negative.");
    const auto &grid = params.angular_grid;
    if (static_cast<int>(grid.size()) < params.num_receivers)
        throw std::invalid_argument("Angular grid smaller than the receiver count.");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<size_t> pick_grid(0, grid.size() - 1);

    // boresights without replacement
    std::vector<size_t> slots(grid.size());
    for (size_t i = 0; i < slots.size(); i++)
        slots[i] = i;
    for (int k = 0; k < params.num_receivers; k++)
    {
        std::uniform_int_distribution<size_t> pick(k, slots.size() - 1);
        std::swap(slots[k], slots[pick(rng)]);
    }

    ChannelRealization out;
    out.receivers.resize(params.num_receivers);

    for (int k = 0; k < params.num_receivers; k++)
    {
        auto &rx = out.receivers[k];
        const auto bs = grid[slots[k]];
        rx.boresight_u = bs[0];
        rx.boresight_v = bs[1];

        int n_paths = params.num_paths;
        if (params.num_paths_max > params.num_paths)
        {
            std::uniform_int_distribution<int> pick_l(params.num_paths, params.num_paths_max);
            n_paths = pick_l(rng);
        }

        for (int l = 0; l < n_paths; l++)
        {
            std::array<double, 2> tx_center = bs, rx_center = bs;
            if (l > 0)
            {
                tx_center = grid[pick_grid(rng)];
                rx_center = grid[pick_grid(rng)];
            }
            const double amp = std::pow(10.0, params.path_power_db(l) / 20.0);
            for (int i = 0; i < params.subpaths_per_path; i++)
            {
                Subpath sp;
                sp.tx_u = tx_center[0] + params.angle_spread * gauss(rng);
                sp.tx_v = tx_center[1] + params.angle_spread * gauss(rng);
                sp.rx_u = rx_center[0] + params.angle_spread * gauss(rng);
                sp.rx_v = rx_center[1] + params.angle_spread * gauss(rng);
                clip_to_disk(sp.tx_u, sp.tx_v);
                clip_to_disk(sp.rx_u, sp.rx_v);
                sp.gain = amp * std::complex<double>(gauss(rng), gauss(rng)) / std::sqrt(2.0);
                rx.subpaths.push_back(sp);
            }
        }

        double total = 0.0;
        for (const auto &sp : rx.subpaths)
            total += std::norm(sp.gain);
        const double scale = 1.0 / std::sqrt(total);
        for (auto &sp : rx.subpaths)
            sp.gain *= scale;

        rx.H = reconstruct_channel(rx.subpaths, tx, rx_grid, rx_pattern);
    }
    return out;
}

arma::cx_mat reconstruct_channel(std::span<const Subpath> subpaths, const TxArray &tx,
                                 const Grid &rx_grid, const ElementPattern &rx_pattern)
{
    arma::cx_mat per_feed(rx_grid.num_elements(), tx.num_feeds(), arma::fill::zeros);
    for (const auto &sp : subpaths)
    {
        const arma::cx_vec a_tx = tx_steering_vector(tx.layout, tx.patterns, sp.tx_u, sp.tx_v);
        const arma::cx_vec a_rx = rx_steering_vector(rx_grid, rx_pattern, sp.rx_u, sp.rx_v);
        per_feed += sp.gain * a_rx * a_tx.st();
    }
    return expand_to_elements(per_feed, tx);
}

std::string channel_metadata_json(const ChannelRealization &realization)
{
    nlohmann::ordered_json j;
    j["receivers"] = nlohmann::ordered_json::array();
    for (const auto &rx : realization.receivers)
    {
        nlohmann::ordered_json r;
        r["boresight"] = {rx.boresight_u, rx.boresight_v};
        r["subpaths"] = nlohmann::ordered_json::array();
        for (const auto &sp : rx.subpaths)
            r["subpaths"].push_back({{"gain_re", sp.gain.real()},
                                     {"gain_im", sp.gain.imag()},
                                     {"tx_uv", {sp.tx_u, sp.tx_v}},
                                     {"rx_uv", {sp.rx_u, sp.rx_v}}});
        j["receivers"].push_back(std::move(r));
    }
    return j.dump();
}

} // namespace irrarray
