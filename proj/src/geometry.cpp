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

#include "irrarray/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace irrarray
{

Grid build_grid(int rows, int cols, double dx, double dy)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("Grid dimensions must be at least 1x1.");
    if (dx <= 0.0 || dy <= 0.0)
        throw std::invalid_argument("Grid spacings must be positive.");

    Grid g;
    g.rows = rows;
    g.cols = cols;
    g.dx = dx;
    g.dy = dy;
    g.positions.reserve(static_cast<size_t>(rows) * cols);

    const double x0 = 0.5 * (cols - 1) * dx; // centroid offset
    const double y0 = 0.5 * (rows - 1) * dy;
    for (int r = 0; r < rows; r++)
        for (int c = 0; c < cols; c++)
            g.positions.push_back({c * dx - x0, r * dy - y0});
    return g;
}

ElementPattern derive_pattern(PatternKind kind, double boresight_gain_dbi)
{
    const double g0 = std::pow(10.0, boresight_gain_dbi / 10.0);
    ElementPattern p;
    p.kind = kind;
    p.boresight_gain_dbi = boresight_gain_dbi;
    p.rolloff_exponent = std::max(g0 / 2.0 - 1.0, 0.0); // D = 2(q+1)
    return p;
}

double eval_element(const ElementPattern &pattern, double u, double v)
{
    const double cos2 = 1.0 - u * u - v * v;
    if (cos2 < 0.0)
        return 0.0;
    const double amp0 = std::pow(10.0, pattern.boresight_gain_dbi / 20.0);
    if (pattern.rolloff_exponent == 0.0)
        return amp0;
    return amp0 * std::pow(cos2, pattern.rolloff_exponent / 4.0);
}

ClusterLayout make_cluster_layout(const Grid &grid, const std::vector<std::vector<int>> &clusters)
{
    const int n_cells = grid.num_elements();
    std::set<int> seen;

    ClusterLayout layout;
    layout.clusters = clusters;
    layout.phase_centers.reserve(clusters.size());

    for (const auto &cluster : clusters)
    {
        const size_t sz = cluster.size();
        if (sz != 1 && sz != 2 && sz != 4)
            throw std::invalid_argument("Cluster sizes must be 1, 2 or 4.");

        double cx = 0.0, cy = 0.0;
        for (int cell : cluster)
        {
            if (cell < 0 || cell >= n_cells)
                throw std::invalid_argument("Cluster cell index outside the grid.");
            if (!seen.insert(cell).second)
                throw std::invalid_argument("Clusters overlap.");
            cx += grid.positions[cell][0];
            cy += grid.positions[cell][1];
        }

        // edge connectivity: flood fill over 4-neighborhoods within the cluster
        if (sz > 1)
        {
            std::set<int> members(cluster.begin(), cluster.end());
            std::vector<int> stack{cluster.front()};
            std::set<int> reached{cluster.front()};
            while (!stack.empty())
            {
                const int cell = stack.back();
                stack.pop_back();
                const int r = cell / grid.cols;
                const int c = cell % grid.cols;
                const int nb[4] = {r > 0 ? cell - grid.cols : -1,
                                   r < grid.rows - 1 ? cell + grid.cols : -1,
                                   c > 0 ? cell - 1 : -1,
                                   c < grid.cols - 1 ? cell + 1 : -1};
                for (int x : nb)
                    if (x >= 0 && members.count(x) && reached.insert(x).second)
                        stack.push_back(x);
            }
            if (reached.size() != sz)
                throw std::invalid_argument("Cluster cells are not edge-connected.");
        }

        layout.phase_centers.push_back({cx / sz, cy / sz});
    }
    return layout;
}

arma::cx_vec tx_steering_vector(const ClusterLayout &layout,
                                std::span<const ElementPattern> patterns,
                                double u, double v)
{
    if (u * u + v * v > 1.0)
        throw std::invalid_argument("Direction outside the visible region.");
    if (patterns.size() != layout.clusters.size())
        throw std::invalid_argument("One element pattern per cluster is required.");

    const size_t n = layout.clusters.size();
    arma::cx_vec a(n);
    for (size_t j = 0; j < n; j++)
    {
        const double amp = eval_element(patterns[j], u, v);
        const double phase = 2.0 * arma::datum::pi *
                             (u * layout.phase_centers[j][0] + v * layout.phase_centers[j][1]);
        a(j) = std::polar(amp, phase);
    }
    return a;
}

arma::cx_vec rx_steering_vector(const Grid &grid, const ElementPattern &pattern,
                                double u, double v)
{
    if (u * u + v * v > 1.0)
        throw std::invalid_argument("Direction outside the visible region.");

    const size_t n = grid.positions.size();
    const double amp = eval_element(pattern, u, v);
    arma::cx_vec a(n);
    for (size_t j = 0; j < n; j++)
    {
        const double phase = 2.0 * arma::datum::pi *
                             (u * grid.positions[j][0] + v * grid.positions[j][1]);
        a(j) = std::polar(amp, phase);
    }
    return a;
}

} // namespace irrarray
