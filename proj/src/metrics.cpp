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

#include "irrarray/metrics.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "irrarray/errors.hpp"

namespace irrarray
{

AngularGrid make_pattern_grid(double step)
{
    if (step <= 0.0)
        throw std::invalid_argument("Pattern grid step must be positive.");
    AngularGrid g;
    g.step = step;
    const int half = static_cast<int>(std::floor(1.0 / step + 1e-9));
    for (int i = -half; i <= half; i++)
        for (int j = -half; j <= half; j++)
        {
            const double u = i * step;
            const double v = j * step;
            if (u * u + v * v <= 1.0)
                g.points.push_back({u, v});
        }
    return g;
}

PatternEvaluator::PatternEvaluator(const ClusterLayout &layout,
                                   std::span<const ElementPattern> patterns,
                                   const AngularGrid &grid)
    : grid_(&grid)
{
    if (patterns.size() != layout.clusters.size())
        throw std::invalid_argument("One element pattern per cluster is required.");

    const size_t n_pts = grid.points.size();
    const size_t n_cl = layout.clusters.size();
    steering_.set_size(n_pts, n_cl);
    for (size_t i = 0; i < n_pts; i++)
    {
        const double u = grid.points[i][0], v = grid.points[i][1];
        for (size_t j = 0; j < n_cl; j++)
        {
            const double amp = eval_element(patterns[j], u, v);
            const double phase = 2.0 * arma::datum::pi *
                                 (u * layout.phase_centers[j][0] + v * layout.phase_centers[j][1]);
            steering_(i, j) = std::polar(amp, phase);
        }
    }
}

BeamPatternGrid PatternEvaluator::evaluate(const arma::cx_vec &excitation) const
{
    if (excitation.n_elem != steering_.n_cols)
        throw std::invalid_argument("Excitation length does not match the cluster count.");
    BeamPatternGrid bp;
    bp.grid = grid_;
    bp.values = arma::square(arma::abs(steering_ * excitation));
    return bp;
}

BeamPatternGrid beam_pattern(const ClusterLayout &layout, std::span<const ElementPattern> patterns,
                             const arma::cx_vec &excitation, const AngularGrid &grid)
{
    return PatternEvaluator(layout, patterns, grid).evaluate(excitation);
}

arma::vec eirp(int num_feeds, int num_streams, double pa_power_dbm, double feed_loss_db,
               const BeamPatternGrid &bp)
{
    if (num_feeds < 1 || num_streams < 1)
        throw std::invalid_argument("Feed and stream counts must be positive.");
    const double prefactor =
        pa_power_dbm + 10.0 * std::log10(static_cast<double>(num_feeds) / num_streams) -
        feed_loss_db;
    arma::vec out(bp.values.n_elem);
    for (arma::uword i = 0; i < bp.values.n_elem; i++)
        out(i) = prefactor + 10.0 * std::log10(std::max(bp.values(i), 1e-300));
    return out;
}

double sidelobe_level(const BeamPatternGrid &bp, const SllMask &mask)
{
    if (bp.grid == nullptr)
        throw std::invalid_argument("Pattern grid is not set.");
    if (mask.half_u <= 0.0 || mask.half_v <= 0.0)
        throw std::invalid_argument("Mask half-widths must be positive.");

    const auto &pts = bp.grid->points;
    double peak = 0.0, side = -1.0;
    for (size_t i = 0; i < pts.size(); i++)
    {
        const double val = bp.values(i);
        peak = std::max(peak, val);
        bool outside = true;
        for (const auto &c : mask.centers)
            if (std::abs(pts[i][0] - c[0]) < mask.half_u &&
                std::abs(pts[i][1] - c[1]) < mask.half_v)
            {
                outside = false;
                break;
            }
        if (outside)
            side = std::max(side, val);
    }
    if (side < 0.0)
        throw degenerate_mask_error("Sidelobe mask excludes every grid point.");
    if (peak <= 0.0)
        throw degenerate_mask_error("Beam pattern is identically zero.");
    return 10.0 * std::log10(std::max(side, 1e-300) / peak);
}

arma::mat link_powers(const ChannelRealization &channel, const arma::mat &P,
                      const Precoder &precoder)
{
    const int K = static_cast<int>(channel.receivers.size());
    arma::mat powers(K, K);
    for (int k = 0; k < K; k++)
    {
        const arma::cx_rowvec row = precoder.combiners[k].t() * channel.receivers[k].H * P;
        for (int j = 0; j < K; j++)
            powers(k, j) = std::norm(arma::as_scalar(row * precoder.F.col(j)));
    }
    return powers;
}

arma::vec sinr_from_link_powers(const arma::mat &powers, double snr_db, double feed_loss_db)
{
    const double eta = std::pow(10.0, (snr_db - feed_loss_db) / 10.0);
    const int K = static_cast<int>(powers.n_rows);
    arma::vec g(K);
    for (int k = 0; k < K; k++)
    {
        double interference = 0.0;
        for (int j = 0; j < K; j++)
            if (j != k)
                interference += powers(k, j);
        g(k) = eta * powers(k, k) / (eta * interference + 1.0);
    }
    return g;
}

arma::vec sinr(const ChannelRealization &channel, const arma::mat &P, const Precoder &precoder,
               double snr_db, double feed_loss_db)
{
    return sinr_from_link_powers(link_powers(channel, P, precoder), snr_db, feed_loss_db);
}

std::pair<arma::vec, double> spectral_efficiency(const arma::vec &gamma)
{
    arma::vec r(gamma.n_elem);
    double sum = 0.0;
    for (arma::uword k = 0; k < gamma.n_elem; k++)
    {
        if (gamma(k) < 0.0)
            throw std::invalid_argument("SINR must be non-negative.");
        r(k) = std::log2(1.0 + gamma(k));
        sum += r(k);
    }
    return {r, sum};
}

std::vector<std::array<double, 2>> main_beam_centers(const ChannelRealization &channel)
{
    std::vector<std::array<double, 2>> centers;
    centers.reserve(channel.receivers.size());
    for (const auto &rx : channel.receivers)
        centers.push_back({rx.boresight_u, rx.boresight_v});
    return centers;
}

double MetricReport::mean_sum_se() const
{
    if (sum_se.empty())
        return 0.0;
    double acc = 0.0;
    for (double v : sum_se)
        acc += v;
    return acc / sum_se.size();
}

double MetricReport::mean_sll_db() const
{
    if (sll_max_db.empty())
        return 0.0;
    double acc = 0.0;
    for (double v : sll_max_db)
        acc += v;
    return acc / sll_max_db.size();
}

void write_pattern_csv(std::ostream &os, const BeamPatternGrid &bp)
{
    os << "u,v,value_db\n";
    const double peak = bp.values.max();
    for (size_t i = 0; i < bp.grid->points.size(); i++)
    {
        // floor deep nulls at -300 dB to keep the column finite and plottable
        const double db = 10.0 * std::log10(std::max(bp.values(i) / peak, 1e-30));
        os << bp.grid->points[i][0] << ',' << bp.grid->points[i][1] << ',' << db << '\n';
    }
}

} // namespace irrarray
