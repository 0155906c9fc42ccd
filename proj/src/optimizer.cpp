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

#include "irrarray/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "irrarray/errors.hpp"
#include "irrarray/runner.hpp"
#include "parallel.hpp"

namespace irrarray
{

double objective(double mean_se, double mean_sll_db, const ObjectiveSpec &spec)
{
    if (!(spec.se_ref > 0.0))
        throw std::invalid_argument("Reference spectral efficiency must be positive.");
    if (!(spec.sll_ref_db < 0.0))
        throw std::invalid_argument("Reference sidelobe level must be below 0 dB.");
    if (spec.beta < 0.0 || spec.beta > 1.0)
        throw std::invalid_argument("beta must lie in [0, 1].");
    return spec.beta * mean_se / spec.se_ref +
           (1.0 - spec.beta) * mean_sll_db / spec.sll_ref_db;
}

// Shared by evaluate_config and evaluate_report so both see identical
// channels and precoders for a given seed.
MetricReport evaluate_report(const ArrayConfig &config, Architecture arch,
                             const ScenarioConfig &scenario, int n_realizations,
                             std::uint64_t seed, double snr_db, bool with_sll)
{
    if (n_realizations < 1)
        throw std::invalid_argument("At least one realization is required.");

    const Grid tx_grid = build_grid(config.rows, config.cols, scenario.tx_dx, scenario.tx_dy);
    const Grid rx_grid =
        build_grid(scenario.rx_rows, scenario.rx_cols, scenario.rx_dx, scenario.rx_dy);
    const ElementPattern tx_pattern =
        derive_pattern(scenario.pattern_kind_for(config.kind), scenario.gain_for(config.kind));
    const ElementPattern rx_pattern = derive_pattern(PatternKind::single, scenario.rx_gain_dbi);
    const double feed_loss = scenario.loss_for(config.kind);

    const TxArray tx = make_tx_array(tx_grid, config.clusters, tx_pattern);
    const auto [tx_cb, rx_cb] = build_codebooks(tx.layout, rx_grid, scenario.codebook_step);

    ChannelParams params = scenario.channel;
    params.num_receivers = scenario.num_receivers;
    if (params.angular_grid.empty())
        params.angular_grid = make_angular_grid();

    std::optional<PatternEvaluator> evaluator;
    AngularGrid grid;
    if (with_sll)
    {
        grid = make_pattern_grid(scenario.pattern_grid_step);
        evaluator.emplace(tx.layout, tx.patterns, grid);
    }

    MetricReport report;
    report.architecture = arch;
    report.snr_db = snr_db;
    report.feed_loss_db = feed_loss;

    struct Slot
    {
        bool degenerate = false;
        double sum_se = 0.0;
        std::vector<double> per_user_se, per_user_sinr, stream_sll, signal, interference;
        double sll_max = 0.0, sll_mean = 0.0;
    };
    std::vector<Slot> slots(n_realizations);

    detail::parallel_for(n_realizations, worker_threads(), [&](std::size_t r) {
        Slot &slot = slots[r];
        const ChannelRealization channel =
            draw_channel(params, tx, rx_grid, rx_pattern, seed + static_cast<std::uint64_t>(r));
        Precoder precoder;
        try
        {
            precoder = build_precoder(arch, channel, tx, tx_cb, rx_cb);
        }
        catch (const degenerate_channel_error &)
        {
            slot.degenerate = true;
            return;
        }

        const arma::mat powers = link_powers(channel, tx.connection, precoder);
        const arma::vec gamma = sinr_from_link_powers(powers, snr_db, feed_loss);
        const auto [per_user, sum] = spectral_efficiency(gamma);
        for (arma::uword k = 0; k < powers.n_rows; k++)
        {
            slot.signal.push_back(powers(k, k));
            double cross = 0.0;
            for (arma::uword j = 0; j < powers.n_cols; j++)
                if (j != k)
                    cross += powers(k, j);
            slot.interference.push_back(cross);
        }

        if (evaluator)
        {
            SllMask mask;
            mask.centers = main_beam_centers(channel);
            mask.half_u = scenario.mask_half_u;
            mask.half_v = scenario.mask_half_v;

            double sll_max = -1e30, sll_acc = 0.0;
            for (arma::uword k = 0; k < precoder.F.n_cols; k++)
            {
                const BeamPatternGrid bp = evaluator->evaluate(arma::cx_vec(precoder.F.col(k)));
                const double sll = sidelobe_level(bp, mask);
                slot.stream_sll.push_back(sll);
                sll_max = std::max(sll_max, sll);
                sll_acc += sll;
            }
            slot.sll_max = sll_max;
            slot.sll_mean = sll_acc / slot.stream_sll.size();
        }

        slot.sum_se = sum;
        slot.per_user_se = arma::conv_to<std::vector<double>>::from(per_user);
        slot.per_user_sinr = arma::conv_to<std::vector<double>>::from(gamma);
    });

    for (auto &slot : slots)
    {
        if (slot.degenerate)
        {
            report.skipped++;
            continue;
        }
        report.sum_se.push_back(slot.sum_se);
        report.per_user_se.push_back(std::move(slot.per_user_se));
        report.per_user_sinr.push_back(std::move(slot.per_user_sinr));
        report.per_user_signal.push_back(std::move(slot.signal));
        report.per_user_interference.push_back(std::move(slot.interference));
        if (with_sll)
        {
            report.per_stream_sll_db.push_back(std::move(slot.stream_sll));
            report.sll_max_db.push_back(slot.sll_max);
            report.sll_mean_db.push_back(slot.sll_mean);
        }
    }

    if (report.sum_se.empty())
        throw degenerate_channel_error("Every realization was degenerate.");
    return report;
}

EvalSummary evaluate_config(const ArrayConfig &config, Architecture arch,
                            const ScenarioConfig &scenario, int n_realizations,
                            std::uint64_t seed)
{
    const MetricReport report =
        evaluate_report(config, arch, scenario, n_realizations, seed, scenario.snr_eval_db);
    EvalSummary s;
    s.mean_se = report.mean_sum_se();
    s.mean_sll_db = report.mean_sll_db();
    s.evaluated = report.count();
    s.skipped = report.skipped;
    return s;
}

namespace
{
    int chromosome_bits(std::size_t space_size)
    {
        int bits = 0;
        while ((std::size_t(1) << bits) < space_size)
            bits++;
        return bits;
    }
} // namespace

GaResult ga_search(std::size_t space_size, const GaConfig &cfg,
                   const std::function<double(std::size_t)> &fitness)
{
    if (space_size == 0)
        throw std::invalid_argument("Search space is empty.");
    if (cfg.population < 2)
        throw std::invalid_argument("Population size must be at least 2.");
    if (cfg.crossover_prob < 0.0 || cfg.crossover_prob > 1.0 || cfg.mutation_prob < 0.0 ||
        cfg.mutation_prob > 1.0)
        throw std::invalid_argument("Probabilities must lie in [0, 1].");

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int bits = chromosome_bits(space_size);

    std::unordered_map<std::size_t, double> cache;
    int evaluations = 0;
    auto fit = [&](std::size_t idx) {
        auto it = cache.find(idx);
        if (it != cache.end())
            return it->second;
        const double f = fitness(idx);
        evaluations++;
        cache.emplace(idx, f);
        return f;
    };

    // distinct initial population (the whole space when it is small)
    const std::size_t pop_size = std::min<std::size_t>(cfg.population, space_size);
    std::vector<std::size_t> population;
    if (space_size <= pop_size)
    {
        for (std::size_t i = 0; i < space_size; i++)
            population.push_back(i);
    }
    else
    {
        std::unordered_map<std::size_t, bool> used;
        std::uniform_int_distribution<std::size_t> pick(0, space_size - 1);
        while (population.size() < pop_size)
        {
            const std::size_t idx = pick(rng);
            if (!used[idx])
            {
                used[idx] = true;
                population.push_back(idx);
            }
        }
    }

    GaResult result;
    result.best_fitness = -std::numeric_limits<double>::infinity();
    auto track_best = [&](std::size_t idx, double f) {
        if (f > result.best_fitness)
        {
            result.best_fitness = f;
            result.best_index = idx;
        }
    };

    std::vector<double> pop_fitness(population.size());
    for (std::size_t i = 0; i < population.size(); i++)
    {
        pop_fitness[i] = fit(population[i]);
        track_best(population[i], pop_fitness[i]);
    }
    result.best_trace.push_back(result.best_fitness);

    const bool early = cfg.early_stop && result.best_fitness >= *cfg.early_stop;
    if (space_size == 1 || bits == 0 || early)
    {
        result.evaluations = evaluations;
        return result;
    }

    auto roulette = [&]() -> std::size_t {
        // raw fitness shifted above zero before proportional selection
        double mn = pop_fitness[0];
        for (double f : pop_fitness)
            mn = std::min(mn, f);
        const double shift = mn - 1e-9;
        double total = 0.0;
        for (double f : pop_fitness)
            total += f - shift;
        double target = unit(rng) * total;
        for (std::size_t i = 0; i < population.size(); i++)
        {
            target -= pop_fitness[i] - shift;
            if (target <= 0.0)
                return i;
        }
        return population.size() - 1;
    };

    for (int gen = 0; gen < cfg.max_generations; gen++)
    {
        std::vector<std::size_t> offspring;
        offspring.reserve(population.size());
        while (offspring.size() < population.size())
        {
            std::size_t a = population[roulette()];
            std::size_t b = population[roulette()];
            if (unit(rng) < cfg.crossover_prob && bits > 1)
            {
                std::uniform_int_distribution<int> cut(1, bits - 1);
                const int point = cut(rng);
                const std::size_t low_mask = (std::size_t(1) << point) - 1;
                const std::size_t c1 = (a & ~low_mask) | (b & low_mask);
                const std::size_t c2 = (b & ~low_mask) | (a & low_mask);
                a = c1;
                b = c2;
            }
            for (std::size_t *c : {&a, &b})
            {
                if (unit(rng) < cfg.mutation_prob)
                {
                    std::uniform_int_distribution<int> pick_bit(0, bits - 1);
                    *c ^= std::size_t(1) << pick_bit(rng);
                }
                *c %= space_size; // repair out-of-range chromosomes
                if (offspring.size() < population.size())
                    offspring.push_back(*c);
            }
        }

        std::vector<double> off_fitness(offspring.size());
        for (std::size_t i = 0; i < offspring.size(); i++)
        {
            off_fitness[i] = fit(offspring[i]);
            track_best(offspring[i], off_fitness[i]);
        }

        // elitism: keep the best solution found so far in the population
        std::size_t worst = 0;
        bool present = false;
        for (std::size_t i = 0; i < offspring.size(); i++)
        {
            if (offspring[i] == result.best_index)
                present = true;
            if (off_fitness[i] < off_fitness[worst])
                worst = i;
        }
        if (!present)
        {
            offspring[worst] = result.best_index;
            off_fitness[worst] = result.best_fitness;
        }

        population = std::move(offspring);
        pop_fitness = std::move(off_fitness);
        result.best_trace.push_back(result.best_fitness);

        if (cfg.early_stop && result.best_fitness >= *cfg.early_stop)
            break;
    }

    result.evaluations = evaluations;
    return result;
}

GaResult ga_search(const std::vector<ArrayConfig> &space, Architecture arch,
                   const ScenarioConfig &scenario, const ObjectiveSpec &spec, const GaConfig &cfg)
{
    return ga_search(space.size(), cfg, [&](std::size_t idx) {
        const EvalSummary s = evaluate_config(space[idx], arch, scenario,
                                              scenario.n_realizations, scenario.channel_seed);
        return objective(s.mean_se, s.mean_sll_db, spec);
    });
}

ParetoSweep pareto_sweep(const std::vector<std::pair<double, double>> &samples,
                         const std::vector<double> &beta_grid, const ObjectiveSpec &ref)
{
    if (samples.empty())
        throw std::invalid_argument("At least one sample is required.");

    ParetoSweep sweep;
    sweep.points.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); i++)
        sweep.points.push_back({i, samples[i].first, samples[i].second, false});

    // dominance under (maximize SE, minimize SLL)
    for (auto &p : sweep.points)
        for (const auto &q : sweep.points)
            if (q.sample_index != p.sample_index &&
                q.mean_se >= p.mean_se && q.mean_sll_db <= p.mean_sll_db &&
                (q.mean_se > p.mean_se || q.mean_sll_db < p.mean_sll_db))
            {
                p.dominated = true;
                break;
            }
    for (const auto &p : sweep.points)
        if (!p.dominated)
            sweep.front.push_back(p.sample_index);

    for (double beta : beta_grid)
    {
        ObjectiveSpec spec = ref;
        spec.beta = beta;
        std::size_t best = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < samples.size(); i++)
        {
            const double val = objective(samples[i].first, samples[i].second, spec);
            if (val > best_val)
            {
                best_val = val;
                best = i;
            }
        }
        sweep.best_per_beta.push_back(best);
    }
    return sweep;
}

} // namespace irrarray
