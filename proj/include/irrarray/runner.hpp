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

#ifndef irrarray_runner_H
#define irrarray_runner_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "irrarray/scenario.hpp"
#include "irrarray/tiling.hpp"

namespace irrarray
{
    // Stable process exit codes.
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_usage = 2;
    inline constexpr int exit_degenerate = 3;

    // Number of worker threads: the IRRARRAY_THREADS environment variable
    // when set, otherwise the hardware concurrency.
    unsigned worker_threads();

    // `count` subcommand: exact solution-space size, printed as the exact
    // integer followed by a two-digit scientific approximation.
    int run_count(ConfigKind kind, int rows, int cols, std::optional<int> feeds,
                  std::ostream &out, std::ostream &err);

    // `enumerate` subcommand: newline-delimited JSON configurations.
    int run_enumerate(ConfigKind kind, int rows, int cols, std::uint64_t cap,
                      std::ostream &out, std::ostream &err);

    // `sample` subcommand: seeded random configurations, one JSON per line.
    int run_sample(ConfigKind kind, int rows, int cols, int feeds, int count,
                   std::uint64_t seed, std::ostream &out, std::ostream &err);

    // Search space for optimization: enumerated covers for clustered kinds
    // (depth-first prefix of the given cap), deduplicated seeded samples for
    // thinned kinds, the single reference configuration for fpra.
    std::vector<ArrayConfig> build_search_space(const ScenarioConfig &scenario, ConfigKind kind,
                                                std::optional<int> feeds = std::nullopt);

    struct EvaluateOutcome
    {
        int exit_code = exit_ok;
        std::string report_json;
        std::string report_csv;
    };

    // `evaluate` subcommand: Monte-Carlo metric report for one configuration
    // across the scenario's architectures at the evaluation SNR. Returns
    // exit_degenerate when more than 10% of realizations were skipped.
    EvaluateOutcome run_evaluate(const ScenarioConfig &scenario, const ArrayConfig &config,
                                 std::ostream &err);

    struct OptimizeOutcome
    {
        int exit_code = exit_ok;
        ArrayConfig best;
        double best_fitness = 0.0;
        double mean_se = 0.0;
        double mean_sll_db = 0.0;
        std::string trace_csv;
        std::string exhaustive_note; // filled when the cross-check runs
    };

    // `optimize` subcommand: genetic search at the given beta; optional
    // exhaustive cross-check over small spaces.
    OptimizeOutcome run_optimize(const ScenarioConfig &scenario, ConfigKind kind, double beta,
                                 Architecture arch, bool exhaustive_check, std::ostream &err,
                                 std::optional<int> feeds = std::nullopt);

    // `sweep` subcommand: SNR-versus-SE CSV, one row per
    // (config, architecture, snr).
    int run_sweep(const ScenarioConfig &scenario, const std::vector<ArrayConfig> &configs,
                  std::ostream &out, std::ostream &err);

    // `pareto` subcommand: evaluates sampled configurations of one kind and
    // emits a CSV with per-sample metrics, dominance flags and the per-beta
    // winners of the scalarized objective.
    int run_pareto(const ScenarioConfig &scenario, ConfigKind kind, int n_samples,
                   std::ostream &out, std::ostream &err,
                   std::optional<int> feeds = std::nullopt);

    // `pattern` subcommand: per-stream beam pattern CSV (u, v, value_db) of
    // one seeded realization under the given architecture.
    int run_pattern(const ScenarioConfig &scenario, const ArrayConfig &config,
                    Architecture arch, std::vector<std::string> &csv_out, std::ostream &err);
}

#endif
