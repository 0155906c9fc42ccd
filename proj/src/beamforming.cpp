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

#include "irrarray/beamforming.hpp"

#include <cmath>
#include <stdexcept>

#include "irrarray/errors.hpp"

namespace irrarray
{

std::string to_string(Architecture a)
{
    switch (a)
    {
    case Architecture::fd:
        return "fd";
    case Architecture::hfc:
        return "hfc";
    case Architecture::hpc:
        return "hpc";
    }
    return "fd";
}

Architecture architecture_from_string(const std::string &name)
{
    if (name == "fd")
        return Architecture::fd;
    if (name == "hfc")
        return Architecture::hfc;
    if (name == "hpc")
        return Architecture::hpc;
    throw std::invalid_argument("Unknown architecture '" + name + "'.");
}

namespace
{
    // Transmit entries carry conjugated steering phases: used as an
    // excitation, the beam labeled (u, v) radiates toward (u, v). Receive
    // entries keep the steering phases; the conjugation happens in w^H.
    Codebook phase_only_codebook(const std::vector<std::array<double, 2>> &positions,
                                 double grid_step, bool conjugate)
    {
        const size_t n = positions.size();
        const double norm = 1.0 / std::sqrt(static_cast<double>(n));
        const double sign = conjugate ? -1.0 : 1.0;

        std::vector<std::array<double, 2>> angles;
        const int half = static_cast<int>(std::llround(1.0 / grid_step));
        for (int i = -half; i <= half; i++)
            for (int j = -half; j <= half; j++)
            {
                const double u = i * grid_step;
                const double v = j * grid_step;
                if (u * u + v * v <= 1.0)
                    angles.push_back({u, v});
            }

        Codebook cb;
        cb.angles = angles;
        cb.entries.set_size(n, angles.size());
        for (size_t e = 0; e < angles.size(); e++)
        {
            const double u = angles[e][0], v = angles[e][1];
            for (size_t j = 0; j < n; j++)
            {
                const double phase = sign * 2.0 * arma::datum::pi *
                                     (u * positions[j][0] + v * positions[j][1]);
                cb.entries(j, e) = std::polar(norm, phase);
            }
        }
        return cb;
    }
} // namespace

std::pair<Codebook, Codebook> build_codebooks(const ClusterLayout &tx_layout,
                                              const Grid &rx_grid, double grid_step)
{
    if (grid_step <= 0.0)
        throw std::invalid_argument("Codebook grid step must be positive.");
    return {phase_only_codebook(tx_layout.phase_centers, grid_step, true),
            phase_only_codebook(rx_grid.positions, grid_step, false)};
}

RfSelection select_rf(const arma::cx_mat &H, const arma::mat &P, const Codebook &tx_cb,
                      const Codebook &rx_cb)
{
    const arma::cx_mat Hp = H * P;
    if (Hp.n_rows != rx_cb.entries.n_rows || Hp.n_cols != tx_cb.entries.n_rows)
        throw std::invalid_argument("Codebook dimensions do not match the channel.");

    // objective for all beam pairs at once: |W^H (H P) F|^2
    const arma::mat obj = arma::square(arma::abs(rx_cb.entries.t() * Hp * tx_cb.entries));

    RfSelection sel;
    double best = -1.0;
    for (arma::uword iw = 0; iw < obj.n_rows; iw++)
        for (arma::uword jf = 0; jf < obj.n_cols; jf++)
            if (obj(iw, jf) > best)
            {
                best = obj(iw, jf);
                sel.rx_index = static_cast<int>(iw);
                sel.tx_index = static_cast<int>(jf);
            }
    sel.objective = best;
    sel.combiner = rx_cb.entries.col(sel.rx_index);
    sel.rf_vector = tx_cb.entries.col(sel.tx_index);
    return sel;
}

std::complex<double> effective_channel(const arma::cx_mat &H, const arma::mat &P,
                                       const arma::cx_vec &w, const arma::cx_vec &f)
{
    return arma::cdot(w, H * P * f);
}

arma::cx_mat zf_baseband(const arma::cx_mat &Hbar)
{
    const arma::cx_mat gram = Hbar * Hbar.t();
    const double rc = arma::rcond(gram);
    if (!(rc > 1e-12))
        throw degenerate_channel_error("Effective channel is numerically singular.");
    return Hbar.t() * arma::inv(gram);
}

namespace
{
    // scale stream columns so that ||P f_k||^2 = N_active / K
    void normalize_power(Precoder &p, const arma::mat &P, int n_active)
    {
        const int K = static_cast<int>(p.F.n_cols);
        const double target = static_cast<double>(n_active) / K;
        p.power_scale.set_size(K);
        for (int k = 0; k < K; k++)
        {
            const double cur = std::pow(arma::norm(P * p.F.col(k)), 2);
            if (!(cur > 0.0))
                throw degenerate_channel_error("Zero-power precoder column.");
            const double s = std::sqrt(target / cur);
            p.F.col(k) *= s;
            p.F_bb.col(k) *= s;
            p.power_scale(k) = s;
        }
    }

    std::pair<int, int> hpc_block(int feeds, int streams, int k)
    {
        const int size = feeds / streams;
        const int lo = k * size;
        const int hi = (k == streams - 1) ? feeds : lo + size; // last block absorbs remainder
        return {lo, hi};
    }
} // namespace

Precoder build_precoder(Architecture arch, const ChannelRealization &channel, const TxArray &tx,
                        const Codebook &tx_cb, const Codebook &rx_cb)
{
    const int K = static_cast<int>(channel.receivers.size());
    if (K < 1)
        throw std::invalid_argument("At least one receiver is required.");
    const int S = tx.num_feeds();
    const arma::mat &P = tx.connection;

    Precoder p;
    p.architecture = arch;

    if (arch == Architecture::fd)
    {
        arma::cx_mat eff(K, S);
        for (int k = 0; k < K; k++)
        {
            const arma::cx_mat Hp = channel.receivers[k].H * P;
            arma::cx_mat U;
            arma::vec s;
            arma::cx_mat V;
            if (!arma::svd(U, s, V, Hp))
                throw degenerate_channel_error("SVD of the per-feed channel failed.");
            p.combiners.push_back(U.col(0));
            eff.row(k) = U.col(0).t() * Hp;
        }
        p.F = zf_baseband(eff);
        p.F_rf = p.F;
        p.F_bb.eye(K, K);
        normalize_power(p, P, tx.active_elements());
        return p;
    }

    p.F_rf.set_size(S, K);
    for (int k = 0; k < K; k++)
    {
        const arma::cx_mat &H = channel.receivers[k].H;
        if (arch == Architecture::hfc)
        {
            const RfSelection sel = select_rf(H, P, tx_cb, rx_cb);
            p.combiners.push_back(sel.combiner);
            p.F_rf.col(k) = sel.rf_vector; // entries of modulus 1/sqrt(S)
        }
        else
        {
            // per-stream codebook restricted to the stream's feed block,
            // nonzero entries of modulus sqrt(K/S)
            const auto [lo, hi] = hpc_block(S, K, k);
            Codebook blocked;
            blocked.angles = tx_cb.angles;
            blocked.entries.zeros(S, tx_cb.entries.n_cols);
            const double mod = std::sqrt(static_cast<double>(K) / S);
            for (arma::uword e = 0; e < tx_cb.entries.n_cols; e++)
                for (int s = lo; s < hi; s++)
                    blocked.entries(s, e) =
                        std::polar(mod, std::arg(tx_cb.entries(s, e)));
            const RfSelection sel = select_rf(H, P, blocked, rx_cb);
            p.combiners.push_back(sel.combiner);
            p.F_rf.col(k) = sel.rf_vector;
        }
    }

    // Hbar(k, j) = w_k^H H_k P f_j
    arma::cx_mat Hbar(K, K);
    for (int k = 0; k < K; k++)
        for (int j = 0; j < K; j++)
            Hbar(k, j) = effective_channel(channel.receivers[k].H, P, p.combiners[k],
                                           arma::cx_vec(p.F_rf.col(j)));

    p.F_bb = zf_baseband(Hbar);
    p.F = p.F_rf * p.F_bb;
    normalize_power(p, P, tx.active_elements());
    return p;
}

} // namespace irrarray
