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

#ifndef irrarray_optimizer_H
#define irrarray_optimizer_H

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "irrarray/metrics.hpp"
#include "irrarray/scenario.hpp"
#include "irrarray/tiling.hpp"

namespace irrarray
{
    // Scalarized objective: beta weights spectral efficiency against
    // sidelobe level, both relative to the reference architecture.
    struct ObjectiveSpec
    {
        double beta = 1.0;
        double se_ref = 1.0;      // reference mean sum SE, > 0
        double sll_ref_db = -1.0; // reference mean SLL in dB, < 0
    };

    double objective(double mean_se, double mean_sll_db, const ObjectiveSpec &spec);

    struct EvalSummary
    {
        double mean_se = 0.0;
        double mean_sll_db = 0.0;
        int evaluated = 0;
        int skipped = 0;
    };

    // Monte-Carlo evaluation of one configuration under one architecture.
    // Realization r uses channel seed `seed + r`, so competing
    // configurations evaluated with the same seed see identical channels.
    // Throws degenerate_channel_error when every realization is degenerate.
    EvalSummary evaluate_config(const ArrayConfig &config, Architecture arch,
                                const ScenarioConfig &scenario, int n_realizations,
                                std::uint64_t seed);

    // Full per-realization report (spectral efficiency, SINR, sidelobes).
    // Sidelobe evaluation dominates the cost and can be skipped when only
    // rate metrics are needed.
    MetricReport evaluate_report(const ArrayConfig &config, Architecture arch,
                                 const ScenarioConfig &scenario, int n_realizations,
                                 std::uint64_t seed, double snr_db, bool with_sll = true);

    struct GaConfig
    {
        int population = 20;    // A
        double crossover_prob = 0.9;
        double mutation_prob = 0.1;
        int max_generations = 50; // I_max
        std::optional<double> early_stop; // chi, disabled by default
        std::uint64_t seed = 1;
    };

    struct GaResult
    {
        std::size_t best_index = 0;
        double best_fitness = 0.0;
        std::vector<double> best_trace; // best-so-far per generation, non-decreasing
        int evaluations = 0;
    };

    // Genetic search over a configuration list indexed by binary chromosomes
    // of ceil(log2(space size)) bits: roulette-wheel parent selection,
    // single-point crossover, single-point mutation and elitism. Out-of-range
    // chromosomes are repaired by modulo reduction.
    GaResult ga_search(std::size_t space_size, const GaConfig &cfg,
                       const std::function<double(std::size_t)> &fitness);

    // Convenience wrapper evaluating fitness via the scalarized objective
    // with a per-search evaluation cache and common random numbers.
    GaResult ga_search(const std::vector<ArrayConfig> &space, Architecture arch,
                       const ScenarioConfig &scenario, const ObjectiveSpec &spec,
                       const GaConfig &cfg);

    struct ParetoPoint
    {
        std::size_t sample_index = 0;
        double mean_se = 0.0;
        double mean_sll_db = 0.0;
        bool dominated = false;
    };

    struct ParetoSweep
    {
        std::vector<ParetoPoint> points;            // one per input sample
        std::vector<std::size_t> best_per_beta;     // argmax of the objective per beta
        std::vector<std::size_t> front;             // non-dominated sample indices
    };

    // Per-beta winners and the non-dominated set under (maximize SE,
    // minimize SLL); ties resolved by the lowest sample index.
    ParetoSweep pareto_sweep(const std::vector<std::pair<double, double>> &samples,
                             const std::vector<double> &beta_grid,
                             const ObjectiveSpec &ref);
}

#endif
