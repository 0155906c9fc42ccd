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

#ifndef irrarray_beamforming_H
#define irrarray_beamforming_H

#include <armadillo>
#include <array>
#include <string>
#include <vector>

#include "irrarray/channel.hpp"
#include "irrarray/geometry.hpp"

namespace irrarray
{
    enum class Architecture
    {
        fd, // full digital: unconstrained weights per feed
        hfc, // hybrid fully connected: one phase shifter per feed and stream
        hpc  // hybrid partially connected: disjoint feed blocks per stream
    };

    std::string to_string(Architecture a);
    Architecture architecture_from_string(const std::string &name);

    // Grid-of-beams codebook: phase-only steering vectors on a (u, v)
    // lattice, normalized to unit norm.
    struct Codebook
    {
        arma::cx_mat entries;                    // one column per beam
        std::vector<std::array<double, 2>> angles;

        int size() const { return static_cast<int>(entries.n_cols); }
    };

    // Codebooks over the unit disk with the given lattice step; transmit
    // entries use the layout's phase centers, receive entries the receive
    // grid positions.
    std::pair<Codebook, Codebook> build_codebooks(const ClusterLayout &tx_layout,
                                                  const Grid &rx_grid, double grid_step);

    struct Precoder
    {
        Architecture architecture = Architecture::fd;
        arma::cx_mat F_rf; // S x K
        arma::cx_mat F_bb; // K x K
        arma::cx_mat F;    // S x K composite, power-normalized
        std::vector<arma::cx_vec> combiners; // unit-norm, one per receiver
        arma::vec power_scale; // per-stream column scale applied after zero forcing
    };

    struct RfSelection
    {
        int rx_index = 0;
        int tx_index = 0;
        arma::cx_vec combiner;
        arma::cx_vec rf_vector;
        double objective = 0.0;
    };

    // Exhaustive beam pair search maximizing |w^H H P f|^2; ties resolved by
    // the lowest (receive index, transmit index) pair.
    RfSelection select_rf(const arma::cx_mat &H, const arma::mat &P,
                          const Codebook &tx_cb, const Codebook &rx_cb);

    // Effective single-stream channel w^H H P f.
    std::complex<double> effective_channel(const arma::cx_mat &H, const arma::mat &P,
                                           const arma::cx_vec &w, const arma::cx_vec &f);

    // Zero-forcing right inverse Hbar^H (Hbar Hbar^H)^-1 of a K x n effective
    // channel. Throws degenerate_channel_error when Hbar Hbar^H has a
    // condition number above 1e12.
    arma::cx_mat zf_baseband(const arma::cx_mat &Hbar);

    // Two-step precoder (beam selection followed by zero forcing at
    // baseband) for the hybrid architectures, or SVD combiners with zero
    // forcing over the stacked effective rows for full digital. Stream
    // columns are scaled so that ||P f_k||^2 = N_active / K.
    Precoder build_precoder(Architecture arch, const ChannelRealization &channel,
                            const TxArray &tx, const Codebook &tx_cb, const Codebook &rx_cb);
}

#endif
