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

#include "doctest.h"

#include <cmath>

#include "irrarray/channel.hpp"
#include "json.hpp"
#include "irrarray/tiling.hpp"

using namespace irrarray;

namespace
{
    TxArray small_tx(int rows = 4, int cols = 4, double gain_dbi = 0.0)
    {
        const Grid g = build_grid(rows, cols, 0.5, 0.5);
        return make_tx_array(g, make_fpra(rows, cols).clusters,
                             derive_pattern(PatternKind::single, gain_dbi));
    }

    const Grid rx_grid = build_grid(2, 2, 0.5, 0.5);
    const ElementPattern rx_iso = derive_pattern(PatternKind::single, 0.0);
} // namespace

TEST_CASE("angular grid stays inside the configured radius")
{
    const auto grid = make_angular_grid();
    CHECK(grid.size() > 200);
    for (const auto &p : grid)
        CHECK(p[0] * p[0] + p[1] * p[1] <= 0.9 + 1e-12);
}

TEST_CASE("single-path draw is a unit-gain rank-one channel")
{
    ChannelParams params;
    params.num_receivers = 1;
    params.num_paths = 1;
    params.subpaths_per_path = 1;
    params.angle_spread = 0.0;
    params.angular_grid = {{0.2, 0.1}};

    const TxArray tx = small_tx();
    const ChannelRealization ch = draw_channel(params, tx, rx_grid, rx_iso, 9);
    REQUIRE(ch.receivers.size() == 1);
    const auto &rx = ch.receivers[0];

    REQUIRE(rx.subpaths.size() == 1);
    CHECK(std::abs(rx.subpaths[0].gain) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rx.boresight_u == doctest::Approx(0.2));
    CHECK(rx.boresight_v == doctest::Approx(0.1));
    CHECK(rx.H.n_rows == 4);
    CHECK(rx.H.n_cols == 16);

    const arma::vec s = arma::svd(rx.H);
    CHECK(s(0) > 0.0);
    for (arma::uword i = 1; i < s.n_elem; i++)
        CHECK(s(i) < 1e-12 * s(0));
}

TEST_CASE("receivers occupy distinct grid points")
{
    ChannelParams params;
    params.num_receivers = 2;
    params.angular_grid = {{0.25, 0.25}, {-0.25, -0.75}};

    const TxArray tx = small_tx();
    const ChannelRealization ch = draw_channel(params, tx, rx_grid, rx_iso, 4);
    REQUIRE(ch.receivers.size() == 2);
    const auto &a = ch.receivers[0];
    const auto &b = ch.receivers[1];
    CHECK((a.boresight_u != b.boresight_u || a.boresight_v != b.boresight_v));
    for (const auto &r : ch.receivers)
    {
        const bool first = r.boresight_u == 0.25 && r.boresight_v == 0.25;
        const bool second = r.boresight_u == -0.25 && r.boresight_v == -0.75;
        CHECK((first || second));
    }
    CHECK(arma::norm(a.H - b.H, "fro") > 0.0);

    ChannelParams too_small = params;
    too_small.angular_grid = {{0.0, 0.0}};
    CHECK_THROWS_AS(draw_channel(too_small, tx, rx_grid, rx_iso, 4), std::invalid_argument);
}

TEST_CASE("subpath gains are renormalized to unit total power")
{
    ChannelParams params;
    params.num_receivers = 1;
    params.angular_grid = make_angular_grid();

    const TxArray tx = small_tx();
    for (std::uint64_t seed = 0; seed < 20; seed++)
    {
        const ChannelRealization ch = draw_channel(params, tx, rx_grid, rx_iso, seed);
        double total = 0.0;
        for (const auto &sp : ch.receivers[0].subpaths)
            total += std::norm(sp.gain);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("average channel energy matches the array sizes for unit-gain elements")
{
    ChannelParams params;
    params.num_receivers = 1;
    params.angular_grid = make_angular_grid();

    const TxArray tx = small_tx(); // 16 isotropic elements
    double acc = 0.0;
    const int n_draws = 10000;
    for (int i = 0; i < n_draws; i++)
    {
        const ChannelRealization ch = draw_channel(params, tx, rx_grid, rx_iso, 50000 + i);
        acc += std::pow(arma::norm(ch.receivers[0].H, "fro"), 2);
    }
    const double mean = acc / n_draws;
    CHECK(mean == doctest::Approx(4.0 * 16.0).epsilon(0.02));
}

TEST_CASE("stored matrices are reconstructible from the metadata")
{
    ChannelParams params;
    params.num_receivers = 2;
    params.angular_grid = make_angular_grid();

    const TxArray tx = small_tx(4, 4, 4.07);
    const ChannelRealization ch = draw_channel(params, tx, rx_grid, rx_iso, 31);
    for (const auto &rx : ch.receivers)
    {
        const arma::cx_mat again = reconstruct_channel(rx.subpaths, tx, rx_grid, rx_iso);
        CHECK(arma::norm(again - rx.H, "fro") / arma::norm(rx.H, "fro") < 1e-10);
    }

    SUBCASE("zeroed gains produce the zero matrix")
    {
        auto subs = ch.receivers[0].subpaths;
        for (auto &sp : subs)
            sp.gain = 0.0;
        const arma::cx_mat zero = reconstruct_channel(subs, tx, rx_grid, rx_iso);
        CHECK(arma::norm(zero, "fro") == 0.0);
    }

    SUBCASE("the matrix is linear in each subpath gain")
    {
        auto subs = ch.receivers[0].subpaths;
        const arma::cx_mat base = reconstruct_channel(subs, tx, rx_grid, rx_iso);
        const std::complex<double> delta(0.125, -0.0625);
        subs[0].gain += delta;
        const arma::cx_mat bumped = reconstruct_channel(subs, tx, rx_grid, rx_iso);

        auto unit = subs;
        unit[0].gain = 1.0;
        unit.erase(unit.begin() + 1, unit.end());
        const arma::cx_mat direction = reconstruct_channel(unit, tx, rx_grid, rx_iso);
        CHECK(arma::norm(bumped - base - delta * direction, "fro") < 1e-12);
    }
}

TEST_CASE("channel rank is bounded by the subpath count")
{
    ChannelParams params;
    params.num_receivers = 1;
    params.num_paths = 2;
    params.subpaths_per_path = 2;
    params.angular_grid = make_angular_grid();

    const TxArray tx = small_tx(4, 6);
    for (std::uint64_t seed = 100; seed < 110; seed++)
    {
        const ChannelRealization ch = draw_channel(params, tx, rx_grid, rx_iso, seed);
        const arma::vec s = arma::svd(ch.receivers[0].H);
        int rank = 0;
        for (const auto v : s)
            if (v > 1e-10 * s(0))
                rank++;
        CHECK(rank <= 4);
    }
}

TEST_CASE("identical seeds give bit-identical metadata")
{
    ChannelParams params;
    params.num_receivers = 2;
    params.angular_grid = make_angular_grid();

    const TxArray tx = small_tx();
    const ChannelRealization a = draw_channel(params, tx, rx_grid, rx_iso, 555);
    const ChannelRealization b = draw_channel(params, tx, rx_grid, rx_iso, 555);
    for (size_t k = 0; k < a.receivers.size(); k++)
    {
        CHECK(a.receivers[k].boresight_u == b.receivers[k].boresight_u);
        CHECK(a.receivers[k].boresight_v == b.receivers[k].boresight_v);
        REQUIRE(a.receivers[k].subpaths.size() == b.receivers[k].subpaths.size());
        for (size_t i = 0; i < a.receivers[k].subpaths.size(); i++)
        {
            CHECK(a.receivers[k].subpaths[i].gain == b.receivers[k].subpaths[i].gain);
            CHECK(a.receivers[k].subpaths[i].tx_u == b.receivers[k].subpaths[i].tx_u);
            CHECK(a.receivers[k].subpaths[i].rx_v == b.receivers[k].subpaths[i].rx_v);
        }
    }

    const ChannelRealization c = draw_channel(params, tx, rx_grid, rx_iso, 556);
    CHECK(arma::norm(a.receivers[0].H - c.receivers[0].H, "fro") > 0.0);
}

TEST_CASE("mirrored single-path assembly conjugates the channel")
{
    const TxArray tx = small_tx();
    std::vector<Subpath> fwd(1), rev(1);
    fwd[0] = {std::complex<double>(0.8, 0.0), 0.3, -0.2, 0.25, 0.15};
    rev[0] = {std::complex<double>(0.8, 0.0), -0.3, 0.2, -0.25, -0.15};

    const arma::cx_mat hf = reconstruct_channel(fwd, tx, rx_grid, rx_iso);
    const arma::cx_mat hr = reconstruct_channel(rev, tx, rx_grid, rx_iso);
    CHECK(arma::norm(hr - arma::conj(hf), "fro") < 1e-12);
}

TEST_CASE("metadata JSON round-trips every subpath value")
{
    ChannelParams params;
    params.num_receivers = 2;
    params.angular_grid = make_angular_grid();
    const TxArray tx = small_tx();
    const ChannelRealization ch = draw_channel(params, tx, rx_grid, rx_iso, 99);

    const std::string text = channel_metadata_json(ch);
    const auto j = nlohmann::json::parse(text);
    REQUIRE(j.at("receivers").size() == 2);
    for (size_t k = 0; k < 2; k++)
    {
        const auto &r = j["receivers"][k];
        CHECK(r["boresight"][0].get<double>() == ch.receivers[k].boresight_u);
        CHECK(r["boresight"][1].get<double>() == ch.receivers[k].boresight_v);
        REQUIRE(r["subpaths"].size() == ch.receivers[k].subpaths.size());
        for (size_t i = 0; i < ch.receivers[k].subpaths.size(); i++)
        {
            const auto &sp = ch.receivers[k].subpaths[i];
            CHECK(r["subpaths"][i]["gain_re"].get<double>() == sp.gain.real());
            CHECK(r["subpaths"][i]["gain_im"].get<double>() == sp.gain.imag());
            CHECK(r["subpaths"][i]["tx_uv"][0].get<double>() == sp.tx_u);
            CHECK(r["subpaths"][i]["rx_uv"][1].get<double>() == sp.rx_v);
        }
    }
}

TEST_CASE("variable path counts stay within the configured range")
{
    ChannelParams params;
    params.num_receivers = 1;
    params.num_paths = 2;
    params.num_paths_max = 4;
    params.subpaths_per_path = 3;
    params.angular_grid = make_angular_grid();

    const TxArray tx = small_tx();
    for (std::uint64_t seed = 0; seed < 30; seed++)
    {
        const ChannelRealization ch = draw_channel(params, tx, rx_grid, rx_iso, seed);
        const size_t n = ch.receivers[0].subpaths.size();
        CHECK(n % 3 == 0);
        CHECK(n >= 6);
        CHECK(n <= 12);
    }
}
