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

#ifndef irrarray_tiling_H
#define irrarray_tiling_H

#include <armadillo>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace irrarray
{
    using bigint = boost::multiprecision::cpp_int;

    enum class ConfigKind
    {
        fpra,     // fully populated, one feed per element
        thinned,  // sparsified singletons
        domino,   // two-element tiles
        tetromino // four-element tiles
    };

    std::string to_string(ConfigKind kind);
    ConfigKind config_kind_from_string(const std::string &name);

    // Polyomino catalog of fixed (rotation/reflection-distinct) shapes;
    // cell offsets are (row, col) pairs normalized to the top-left corner.
    struct ShapeSet
    {
        std::string name;
        std::vector<std::vector<std::pair<int, int>>> shapes;
    };

    ShapeSet domino_shapes();    // 2 fixed orientations
    ShapeSet tetromino_shapes(); // 19 fixed shapes

    // All valid placements of a shape set on an N x M board. One row per
    // placement; each row lists the covered row-major cell indices.
    struct DictionaryMatrix
    {
        int rows = 0; // board rows
        int cols = 0; // board cols
        struct Placement
        {
            int shape_id = 0;
            std::vector<int> cells;
        };
        std::vector<Placement> placements;
    };

    // A concrete irregular array configuration.
    struct ArrayConfig
    {
        ConfigKind kind = ConfigKind::fpra;
        int rows = 0;
        int cols = 0;
        std::vector<std::vector<int>> clusters; // row-major cell indices, sorted by min cell
        std::optional<std::int64_t> config_index;

        int feed_count() const { return static_cast<int>(clusters.size()); }
        int active_elements() const;
    };

    // Placement dictionary for the exact-cover search.
    // Throws std::invalid_argument when the cell count is not divisible by
    // the shape size.
    DictionaryMatrix build_dictionary(int rows, int cols, const ShapeSet &shapes);

    // Depth-first exact-cover enumeration (dancing links) with deterministic
    // column selection: fewest remaining placements first, ties by lowest
    // cell index. Configs are numbered in discovery order; stops at cap.
    // The seed is reserved for randomized generation orders; the default
    // depth-first enumerator is deterministic and ignores it.
    std::vector<ArrayConfig> enumerate_exact_covers(const DictionaryMatrix &q,
                                                    std::uint64_t cap,
                                                    std::uint64_t rng_seed = 0);

    // Streaming variant; the callback returns false to stop early.
    void enumerate_exact_covers(const DictionaryMatrix &q, std::uint64_t cap,
                                const std::function<bool(const ArrayConfig &)> &sink);

    // Number of domino tilings of an N x M board, evaluated from the
    // closed-form product in 50-digit precision and rounded to the nearest
    // integer. Returns 0 for boards with an odd cell count.
    bigint count_domino(int rows, int cols);

    // Number of S-element subsets of the N x M grid that keep the full
    // aperture (at least one element in the first/last row and column).
    // Exact inclusion-exclusion over the four boundary lines.
    bigint count_thinned(int rows, int cols, int feeds);

    // Uniform random full-aperture thinned configuration via rejection
    // sampling; deterministic for a given seed.
    // Throws std::invalid_argument when no valid configuration exists.
    ArrayConfig sample_thinned(int rows, int cols, int feeds, std::uint64_t seed);

    // Fully populated reference configuration (identity connection).
    ArrayConfig make_fpra(int rows, int cols);

    // Antenna-to-feed 0/1 connection matrix of size (rows*cols) x feeds.
    // Column j has ones at the cells of cluster j; thinned boards keep
    // all-zero rows at the removed elements.
    arma::mat connection_matrix(const ArrayConfig &config);

    // Fraction of driven elements, S / N_TX.
    double fill_factor(const ArrayConfig &config);

    // JSON round-trip of the configuration (newline-free single object).
    std::string config_to_json(const ArrayConfig &config);
    ArrayConfig config_from_json(const std::string &text);
}

#endif
