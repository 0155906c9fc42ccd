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

#ifndef irrarray_geometry_H
#define irrarray_geometry_H

#include <armadillo>
#include <array>
#include <span>
#include <vector>

namespace irrarray
{
    // Planar rectangular aperture. Element positions are in wavelengths,
    // row-major, centered at the aperture centroid.
    struct Grid
    {
        int rows = 0;    // vertical element count (N)
        int cols = 0;    // horizontal element count (M)
        double dx = 0.5; // horizontal spacing in wavelengths
        double dy = 0.5; // vertical spacing in wavelengths
        std::vector<std::array<double, 2>> positions;

        int num_elements() const { return rows * cols; }
    };

    enum class PatternKind
    {
        single,   // isolated radiator on the full grid
        thinned,  // radiator on a sparsified grid
        domino_h, // horizontal two-element tile
        domino_v, // vertical two-element tile
        tetromino // four-element tile
    };

    // Analytic embedded element pattern: amplitude sqrt(G0) * cos(theta)^(q/2)
    // inside the visible region, zero outside. Boresight power gain equals
    // boresight_gain_dbi exactly.
    struct ElementPattern
    {
        double boresight_gain_dbi = 0.0;
        double rolloff_exponent = 0.0; // q >= 0
        PatternKind kind = PatternKind::single;
    };

    // Edge-connected element groups sharing one feed, with the per-group
    // radiation phase center at the member centroid.
    struct ClusterLayout
    {
        std::vector<std::vector<int>> clusters;            // row-major cell indices
        std::vector<std::array<double, 2>> phase_centers;  // one per cluster, wavelengths

        int num_clusters() const { return static_cast<int>(clusters.size()); }
    };

    // Rectangular grid with positions centered at the centroid.
    // Throws std::invalid_argument for non-positive dimensions or spacings.
    Grid build_grid(int rows, int cols, double dx, double dy);

    // Pattern with the rolloff exponent derived from the cos^q directivity
    // identity D = 2(q+1), clamped at zero, so the radiated power stays
    // consistent with the boresight gain.
    ElementPattern derive_pattern(PatternKind kind, double boresight_gain_dbi);

    // Element amplitude at direction cosines (u, v). Returns 0 outside the
    // visible region u^2 + v^2 > 1.
    double eval_element(const ElementPattern &pattern, double u, double v);

    // Layout with per-cluster centroids for the given grid cells.
    // Throws std::invalid_argument for overlapping or disconnected clusters
    // and for cluster sizes other than 1, 2 or 4.
    ClusterLayout make_cluster_layout(const Grid &grid, const std::vector<std::vector<int>> &clusters);

    // Transmit steering vector over the layout's phase centers,
    // entry j = g_j(u,v) * exp(i 2 pi (u x_j + v y_j)).
    // Throws std::invalid_argument when (u, v) is outside the visible region
    // or when the per-cluster pattern list does not match the layout.
    arma::cx_vec tx_steering_vector(const ClusterLayout &layout,
                                    std::span<const ElementPattern> patterns,
                                    double u, double v);

    // Receive steering vector over a fully populated grid (singleton feeds).
    arma::cx_vec rx_steering_vector(const Grid &grid, const ElementPattern &pattern,
                                    double u, double v);
}

#endif
