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

#include "irrarray/tiling.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace irrarray
{

std::string to_string(ConfigKind kind)
{
    switch (kind)
    {
    case ConfigKind::fpra:
        return "fpra";
    case ConfigKind::thinned:
        return "thinned";
    case ConfigKind::domino:
        return "domino";
    case ConfigKind::tetromino:
        return "tetromino";
    }
    return "fpra";
}

ConfigKind config_kind_from_string(const std::string &name)
{
    if (name == "fpra")
        return ConfigKind::fpra;
    if (name == "thinned")
        return ConfigKind::thinned;
    if (name == "domino")
        return ConfigKind::domino;
    if (name == "tetromino")
        return ConfigKind::tetromino;
    throw std::invalid_argument("Unknown configuration kind '" + name + "'.");
}

int ArrayConfig::active_elements() const
{
    int n = 0;
    for (const auto &c : clusters)
        n += static_cast<int>(c.size());
    return n;
}

ShapeSet domino_shapes()
{
    ShapeSet s;
    s.name = "domino";
    s.shapes = {{{0, 0}, {0, 1}},  // horizontal
                {{0, 0}, {1, 0}}}; // vertical
    return s;
}

ShapeSet tetromino_shapes()
{
    // all distinct rotations/reflections of the five free tetrominoes
    const std::vector<std::vector<std::pair<int, int>>> free_shapes = {
        {{0, 0}, {0, 1}, {0, 2}, {0, 3}}, // I
        {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, // O
        {{0, 0}, {0, 1}, {0, 2}, {1, 1}}, // T
        {{0, 1}, {0, 2}, {1, 0}, {1, 1}}, // S
        {{0, 0}, {1, 0}, {2, 0}, {2, 1}}, // L
    };

    auto normalized = [](std::vector<std::pair<int, int>> cells) {
        int mr = cells[0].first, mc = cells[0].second;
        for (const auto &[r, c] : cells)
        {
            mr = std::min(mr, r);
            mc = std::min(mc, c);
        }
        for (auto &[r, c] : cells)
        {
            r -= mr;
            c -= mc;
        }
        std::sort(cells.begin(), cells.end());
        return cells;
    };

    std::set<std::vector<std::pair<int, int>>> canon;
    for (const auto &base : free_shapes)
    {
        for (int refl = 0; refl < 2; refl++)
        {
            auto cur = base;
            if (refl)
                for (auto &[r, c] : cur)
                    c = -c;
            for (int rot = 0; rot < 4; rot++)
            {
                for (auto &[r, c] : cur)
                {
                    const int nr = c, nc = -r;
                    r = nr;
                    c = nc;
                }
                canon.insert(normalized(cur));
            }
        }
    }

    ShapeSet s;
    s.name = "tetromino";
    s.shapes.assign(canon.begin(), canon.end());
    return s;
}

DictionaryMatrix build_dictionary(int rows, int cols, const ShapeSet &shapes)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("Board dimensions must be at least 1x1.");
    const size_t shape_size = shapes.shapes.empty() ? 0 : shapes.shapes.front().size();
    if (shape_size == 0 || (static_cast<size_t>(rows) * cols) % shape_size != 0)
        throw std::invalid_argument("Board cell count is not divisible by the shape size.");

    DictionaryMatrix q;
    q.rows = rows;
    q.cols = cols;

    std::set<std::vector<int>> seen;
    for (int sid = 0; sid < static_cast<int>(shapes.shapes.size()); sid++)
    {
        const auto &shape = shapes.shapes[sid];
        for (int r = 0; r < rows; r++)
            for (int c = 0; c < cols; c++)
            {
                std::vector<int> cells;
                cells.reserve(shape.size());
                bool ok = true;
                for (const auto &[dr, dc] : shape)
                {
                    const int rr = r + dr, cc = c + dc;
                    if (rr < 0 || rr >= rows || cc < 0 || cc >= cols)
                    {
                        ok = false;
                        break;
                    }
                    cells.push_back(rr * cols + cc);
                }
                if (!ok)
                    continue;
                std::sort(cells.begin(), cells.end());
                if (seen.insert(cells).second)
                    q.placements.push_back({sid, std::move(cells)});
            }
    }
    return q;
}

namespace
{
    // Knuth's dancing-links exact cover over the placement dictionary.
    class DancingLinks
    {
    public:
        explicit DancingLinks(const DictionaryMatrix &q) : q_(q)
        {
            const int n_cols = q.rows * q.cols;
            size_t n_nodes = 1 + n_cols;
            for (const auto &p : q.placements)
                n_nodes += p.cells.size();
            left_.resize(n_nodes);
            right_.resize(n_nodes);
            up_.resize(n_nodes);
            down_.resize(n_nodes);
            col_of_.resize(n_nodes);
            row_of_.resize(n_nodes, -1);
            col_size_.assign(n_cols + 1, 0);

            // header ring: 0 is the root, 1..n_cols are cell columns
            for (int c = 0; c <= n_cols; c++)
            {
                left_[c] = c == 0 ? n_cols : c - 1;
                right_[c] = c == n_cols ? 0 : c + 1;
                up_[c] = c;
                down_[c] = c;
                col_of_[c] = c;
            }

            size_t node = n_cols + 1;
            for (size_t r = 0; r < q.placements.size(); r++)
            {
                size_t first = node;
                for (int cell : q.placements[r].cells)
                {
                    const int c = cell + 1;
                    up_[node] = up_[c];
                    down_[node] = c;
                    down_[up_[c]] = node;
                    up_[c] = node;
                    col_of_[node] = c;
                    row_of_[node] = static_cast<int>(r);
                    col_size_[c]++;
                    if (node == first)
                    {
                        left_[node] = node;
                        right_[node] = node;
                    }
                    else
                    {
                        left_[node] = node - 1;
                        right_[node] = first;
                        right_[node - 1] = node;
                        left_[first] = node;
                    }
                    node++;
                }
            }
        }

        // visits every exact cover in depth-first order until the sink
        // declines more covers
        void enumerate(const std::function<bool(const std::vector<int> &)> &sink)
        {
            stop_ = false;
            chosen_.clear();
            search(sink);
        }

    private:
        void cover(int c)
        {
            right_[left_[c]] = right_[c];
            left_[right_[c]] = left_[c];
            for (size_t i = down_[c]; i != static_cast<size_t>(c); i = down_[i])
                for (size_t j = right_[i]; j != i; j = right_[j])
                {
                    down_[up_[j]] = down_[j];
                    up_[down_[j]] = up_[j];
                    col_size_[col_of_[j]]--;
                }
        }

        void uncover(int c)
        {
            for (size_t i = up_[c]; i != static_cast<size_t>(c); i = up_[i])
                for (size_t j = left_[i]; j != i; j = left_[j])
                {
                    col_size_[col_of_[j]]++;
                    down_[up_[j]] = j;
                    up_[down_[j]] = j;
                }
            right_[left_[c]] = c;
            left_[right_[c]] = c;
        }

        void search(const std::function<bool(const std::vector<int> &)> &sink)
        {
            if (stop_)
                return;
            if (right_[0] == 0)
            {
                if (!sink(chosen_))
                    stop_ = true;
                return;
            }

            // fewest remaining placements, ties by lowest cell index
            int best = right_[0];
            for (int c = right_[0]; c != 0; c = right_[c])
                if (col_size_[c] < col_size_[best])
                    best = c;
            if (col_size_[best] == 0)
                return;

            cover(best);
            for (size_t r = down_[best]; r != static_cast<size_t>(best) && !stop_; r = down_[r])
            {
                chosen_.push_back(row_of_[r]);
                for (size_t j = right_[r]; j != r; j = right_[j])
                    cover(col_of_[j]);
                search(sink);
                for (size_t j = left_[r]; j != r; j = left_[j])
                    uncover(col_of_[j]);
                chosen_.pop_back();
            }
            uncover(best);
        }

        const DictionaryMatrix &q_;
        std::vector<size_t> left_, right_, up_, down_;
        std::vector<int> col_of_, row_of_, col_size_;
        std::vector<int> chosen_;
        bool stop_ = false;
    };

    void sort_clusters(std::vector<std::vector<int>> &clusters)
    {
        for (auto &c : clusters)
            std::sort(c.begin(), c.end());
        std::sort(clusters.begin(), clusters.end(),
                  [](const auto &a, const auto &b) { return a.front() < b.front(); });
    }

    ConfigKind kind_for_shape_size(size_t sz)
    {
        return sz == 2 ? ConfigKind::domino : ConfigKind::tetromino;
    }
} // namespace

void enumerate_exact_covers(const DictionaryMatrix &q, std::uint64_t cap,
                            const std::function<bool(const ArrayConfig &)> &sink)
{
    if (cap < 1)
        throw std::invalid_argument("Enumeration cap must be at least 1.");
    if (q.placements.empty())
        return;

    const size_t shape_size = q.placements.front().cells.size();
    DancingLinks dlx(q);
    std::uint64_t found = 0;
    dlx.enumerate([&](const std::vector<int> &rows) {
        ArrayConfig cfg;
        cfg.kind = kind_for_shape_size(shape_size);
        cfg.rows = q.rows;
        cfg.cols = q.cols;
        cfg.clusters.reserve(rows.size());
        for (int r : rows)
            cfg.clusters.push_back(q.placements[r].cells);
        sort_clusters(cfg.clusters);
        cfg.config_index = static_cast<std::int64_t>(found);
        found++;
        if (!sink(cfg))
            return false;
        return found < cap;
    });
}

std::vector<ArrayConfig> enumerate_exact_covers(const DictionaryMatrix &q,
                                                std::uint64_t cap, std::uint64_t)
{
    std::vector<ArrayConfig> out;
    enumerate_exact_covers(q, cap, [&](const ArrayConfig &cfg) {
        out.push_back(cfg);
        return true;
    });
    return out;
}

bigint count_domino(int rows, int cols)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("Board dimensions must be at least 1x1.");
    if ((static_cast<std::int64_t>(rows) * cols) % 2 != 0)
        return 0;

    using bigfloat = boost::multiprecision::cpp_bin_float_50;
    const bigfloat pi = boost::math::constants::pi<bigfloat>();

    bigfloat prod = pow(bigfloat(2), rows * cols / 2);
    for (int m = 1; m <= cols; m++)
        for (int n = 1; n <= rows; n++)
        {
            const bigfloat cm = cos(pi * m / (cols + 1));
            const bigfloat cn = cos(pi * n / (rows + 1));
            prod *= sqrt(sqrt(cm * cm + cn * cn));
        }
    return static_cast<bigint>(round(prod));
}

namespace
{
    bigint binomial(int n, int k)
    {
        if (k < 0 || n < 0 || k > n)
            return 0;
        bigint r = 1;
        for (int i = 1; i <= k; i++)
        {
            r *= n - k + i;
            r /= i;
        }
        return r;
    }
} // namespace

bigint count_thinned(int rows, int cols, int feeds)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("Board dimensions must be at least 1x1.");
    if (feeds < 1 || feeds > rows * cols)
        throw std::invalid_argument("Feed count must lie in [1, rows*cols].");

    // inclusion-exclusion over the distinct boundary lines; a valid layout
    // touches the first/last row and the first/last column
    const int n_rows_distinct = rows == 1 ? 1 : 2;
    const int n_cols_distinct = cols == 1 ? 1 : 2;
    const int n_lines = n_rows_distinct + n_cols_distinct;

    bigint total = 0;
    for (int mask = 0; mask < (1 << n_lines); mask++)
    {
        int nr = 0, nc = 0;
        for (int b = 0; b < n_lines; b++)
            if (mask & (1 << b))
                (b < n_rows_distinct ? nr : nc)++;
        const int removed = nr * cols + nc * rows - nr * nc; // rows meet cols in one cell
        const int sign = (nr + nc) % 2 == 0 ? 1 : -1;
        total += sign * binomial(rows * cols - removed, feeds);
    }
    return total < 0 ? bigint(0) : total;
}

ArrayConfig sample_thinned(int rows, int cols, int feeds, std::uint64_t seed)
{
    if (count_thinned(rows, cols, feeds) == 0)
        throw std::invalid_argument("No full-aperture thinned configuration exists.");

    std::mt19937_64 rng(seed);
    const int n_cells = rows * cols;
    std::vector<int> cells(n_cells);

    while (true)
    {
        for (int i = 0; i < n_cells; i++)
            cells[i] = i;
        // partial Fisher-Yates draw of `feeds` distinct cells
        for (int i = 0; i < feeds; i++)
        {
            std::uniform_int_distribution<int> pick(i, n_cells - 1);
            std::swap(cells[i], cells[pick(rng)]);
        }

        bool r0 = false, rN = false, c0 = false, cM = false;
        for (int i = 0; i < feeds; i++)
        {
            const int r = cells[i] / cols, c = cells[i] % cols;
            r0 |= r == 0;
            rN |= r == rows - 1;
            c0 |= c == 0;
            cM |= c == cols - 1;
        }
        if (r0 && rN && c0 && cM)
            break;
    }

    ArrayConfig cfg;
    cfg.kind = ConfigKind::thinned;
    cfg.rows = rows;
    cfg.cols = cols;
    std::vector<int> chosen(cells.begin(), cells.begin() + feeds);
    std::sort(chosen.begin(), chosen.end());
    for (int cell : chosen)
        cfg.clusters.push_back({cell});
    return cfg;
}

ArrayConfig make_fpra(int rows, int cols)
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("Board dimensions must be at least 1x1.");
    ArrayConfig cfg;
    cfg.kind = ConfigKind::fpra;
    cfg.rows = rows;
    cfg.cols = cols;
    for (int i = 0; i < rows * cols; i++)
        cfg.clusters.push_back({i});
    return cfg;
}

arma::mat connection_matrix(const ArrayConfig &config)
{
    const int n_cells = config.rows * config.cols;
    arma::mat p(n_cells, config.clusters.size(), arma::fill::zeros);
    for (size_t j = 0; j < config.clusters.size(); j++)
        for (int cell : config.clusters[j])
        {
            if (cell < 0 || cell >= n_cells)
                throw std::invalid_argument("Cluster cell index outside the board.");
            if (arma::accu(p.row(cell)) > 0)
                throw std::invalid_argument("Clusters overlap.");
            p(cell, j) = 1.0;
        }
    return p;
}

double fill_factor(const ArrayConfig &config)
{
    return static_cast<double>(config.feed_count()) /
           static_cast<double>(config.rows * config.cols);
}

std::string config_to_json(const ArrayConfig &config)
{
    nlohmann::ordered_json j;
    j["kind"] = to_string(config.kind);
    j["N"] = config.rows;
    j["M"] = config.cols;
    j["clusters"] = config.clusters;
    if (config.config_index)
        j["config_index"] = *config.config_index;
    return j.dump();
}

ArrayConfig config_from_json(const std::string &text)
{
    const auto j = nlohmann::json::parse(text);
    ArrayConfig cfg;
    cfg.kind = config_kind_from_string(j.at("kind").get<std::string>());
    cfg.rows = j.at("N").get<int>();
    cfg.cols = j.at("M").get<int>();
    cfg.clusters = j.at("clusters").get<std::vector<std::vector<int>>>();
    if (j.contains("config_index") && !j["config_index"].is_null())
        cfg.config_index = j["config_index"].get<std::int64_t>();
    return cfg;
}

} // namespace irrarray
