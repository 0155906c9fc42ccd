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

#ifndef irrarray_metrics_H
#define irrarray_metrics_H

#include <armadillo>
#include <array>
#include <span>
#include <vector>

#include "irrarray/beamforming.hpp"
#include "irrarray/channel.hpp"
#include "irrarray/geometry.hpp"

namespace irrarray
{
    // Direction-cosine lattice covering the unit disk, symmetric about the
    // origin.
    struct AngularGrid
    {
        double step = 0.01;
        std::vector<std::array<double, 2>> points;

        int size() const { return static_cast<int>(points.size()); }
    };

    AngularGrid make_pattern_grid(double step);

    struct BeamPatternGrid
    {
        const AngularGrid *grid = nullptr;
        arma::vec values; // |B(u,v)|^2 per grid point
    };

    // Main-beam exclusion rectangles per stream.
    struct SllMask
    {
        std::vector<std::array<double, 2>> centers; // (u_k, v_k)
        double half_u = 0.21;
        double half_v = 0.28;
    };

    // |B|^2 over the grid for a per-cluster excitation.
    // Throws std::invalid_argument on an excitation length mismatch.
    BeamPatternGrid beam_pattern(const ClusterLayout &layout,
                                 std::span<const ElementPattern> patterns,
                                 const arma::cx_vec &excitation, const AngularGrid &grid);

    // Precomputed steering matrix for repeated pattern evaluations over one
    // layout and grid.
    class PatternEvaluator
    {
    public:
        PatternEvaluator(const ClusterLayout &layout, std::span<const ElementPattern> patterns,
                         const AngularGrid &grid);

        BeamPatternGrid evaluate(const arma::cx_vec &excitation) const;
        const AngularGrid &grid() const { return *grid_; }

    private:
        const AngularGrid *grid_;
        arma::cx_mat steering_; // points x clusters
    };

    // EIRP in dBm per grid point: PA prefactor plus the pattern in dB.
    arma::vec eirp(int num_feeds, int num_streams, double pa_power_dbm, double feed_loss_db,
                   const BeamPatternGrid &bp);

    // Peak level outside the main-beam rectangles relative to the pattern
    // peak, in dB (non-positive). Throws degenerate_mask_error when the mask
    // covers the whole grid.
    double sidelobe_level(const BeamPatternGrid &bp, const SllMask &mask);

    // |w_k^H H_k P f_j|^2 for every receiver/stream pair.
    arma::mat link_powers(const ChannelRealization &channel, const arma::mat &P,
                          const Precoder &precoder);

    // Per-receiver SINR at the given SNR; the feed loss is applied as a dB
    // penalty on the SNR.
    arma::vec sinr(const ChannelRealization &channel, const arma::mat &P,
                   const Precoder &precoder, double snr_db, double feed_loss_db = 0.0);
    arma::vec sinr_from_link_powers(const arma::mat &powers, double snr_db,
                                    double feed_loss_db = 0.0);

    // log2(1 + gamma) per receiver plus the sum.
    std::pair<arma::vec, double> spectral_efficiency(const arma::vec &gamma);

    // Receiver boresight directions of a realization (the mask centers).
    std::vector<std::array<double, 2>> main_beam_centers(const ChannelRealization &channel);

    // Per-realization and averaged evaluation results.
    struct MetricReport
    {
        Architecture architecture = Architecture::fd;
        double snr_db = 0.0;
        double feed_loss_db = 0.0;

        std::vector<double> sum_se;              // per realization
        std::vector<double> sll_max_db;          // per realization, max over streams
        std::vector<double> sll_mean_db;         // per realization, mean over streams
        std::vector<std::vector<double>> per_user_se;
        std::vector<std::vector<double>> per_user_sinr;
        std::vector<std::vector<double>> per_stream_sll_db;
        // SNR-independent link powers: |w_k^H H_k P f_k|^2 and the summed
        // cross terms, kept so SNR sweeps can rescale the SINR exactly
        std::vector<std::vector<double>> per_user_signal;
        std::vector<std::vector<double>> per_user_interference;
        int skipped = 0; // degenerate realizations

        double mean_sum_se() const;
        double mean_sll_db() const; // dB average of the per-stream maxima
        int count() const { return static_cast<int>(sum_se.size()); }
    };

    // CSV export of a pattern grid as "u,v,value_db" rows.
    void write_pattern_csv(std::ostream &os, const BeamPatternGrid &bp);
}

#endif
