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

#include "irrarray/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "irrarray/errors.hpp"
#include "irrarray/optimizer.hpp"
#include "json.hpp"

namespace irrarray
{

unsigned worker_threads()
{
    if (const char *env = std::getenv("IRRARRAY_THREADS"))
    {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1)
            return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace
{
    // truncated three-digit mantissa approximation
    std::string sci_approx(const bigint &value)
    {
        const std::string digits = value.str();
        if (digits.size() <= 4)
            return digits;
        std::ostringstream os;
        os << digits[0] << '.' << digits.substr(1, 2) << 'e' << digits.size() - 1;
        return os.str();
    }

    std::string format_double(double v)
    {
        std::ostringstream os;
        os.precision(12);
        os << v;
        return os.str();
    }
} // namespace

int run_count(ConfigKind kind, int rows, int cols, std::optional<int> feeds, std::ostream &out,
              std::ostream &err)
{
    try
    {
        bigint count;
        if (kind == ConfigKind::domino)
            count = count_domino(rows, cols);
        else if (kind == ConfigKind::thinned)
        {
            if (!feeds)
            {
                err << "error: thinned counting requires the feed count S\n";
                return exit_usage;
            }
            count = count_thinned(rows, cols, *feeds);
        }
        else
        {
            err << "error: counting supports the domino and thinned kinds\n";
            return exit_usage;
        }
        out << count;
        if (count.str().size() > 4)
            out << " (" << sci_approx(count) << ")";
        out << '\n';
        return exit_ok;
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

int run_enumerate(ConfigKind kind, int rows, int cols, std::uint64_t cap, std::ostream &out,
                  std::ostream &err)
{
    try
    {
        const ShapeSet shapes = kind == ConfigKind::domino ? domino_shapes() : tetromino_shapes();
        if (kind != ConfigKind::domino && kind != ConfigKind::tetromino)
        {
            err << "error: enumeration supports the domino and tetromino kinds\n";
            return exit_usage;
        }
        const DictionaryMatrix q = build_dictionary(rows, cols, shapes);
        enumerate_exact_covers(q, cap, [&](const ArrayConfig &cfg) {
            out << config_to_json(cfg) << '\n';
            return true;
        });
        return exit_ok;
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

int run_sample(ConfigKind kind, int rows, int cols, int feeds, int count, std::uint64_t seed,
               std::ostream &out, std::ostream &err)
{
    if (kind != ConfigKind::thinned)
    {
        err << "error: sampling supports the thinned kind; clustered kinds are enumerated\n";
        return exit_usage;
    }
    try
    {
        for (int i = 0; i < count; i++)
        {
            ArrayConfig cfg = sample_thinned(rows, cols, feeds, seed + static_cast<std::uint64_t>(i));
            cfg.config_index = i;
            out << config_to_json(cfg) << '\n';
        }
        return exit_ok;
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

std::vector<ArrayConfig> build_search_space(const ScenarioConfig &scenario, ConfigKind kind,
                                            std::optional<int> feeds)
{
    std::vector<ArrayConfig> space;
    if (kind == ConfigKind::fpra)
    {
        ArrayConfig cfg = make_fpra(scenario.tx_rows, scenario.tx_cols);
        cfg.config_index = 0;
        space.push_back(cfg);
        return space;
    }
    if (kind == ConfigKind::domino || kind == ConfigKind::tetromino)
    {
        const ShapeSet shapes = kind == ConfigKind::domino ? domino_shapes() : tetromino_shapes();
        const DictionaryMatrix q = build_dictionary(scenario.tx_rows, scenario.tx_cols, shapes);
        enumerate_exact_covers(q, scenario.ga.space_cap, [&](const ArrayConfig &cfg) {
            space.push_back(cfg);
            return true;
        });
        return space;
    }

    // thinned: deduplicated seeded samples
    const int n_cells = scenario.tx_rows * scenario.tx_cols;
    const int s_feeds = feeds.value_or(n_cells / 2);
    std::set<std::vector<std::vector<int>>> seen;
    std::uint64_t draw = 0;
    while (space.size() < scenario.ga.space_cap && draw < 4 * scenario.ga.space_cap + 64)
    {
        ArrayConfig cfg =
            sample_thinned(scenario.tx_rows, scenario.tx_cols, s_feeds,
                           scenario.sampling_seed + draw);
        draw++;
        if (!seen.insert(cfg.clusters).second)
            continue;
        cfg.config_index = static_cast<std::int64_t>(space.size());
        space.push_back(std::move(cfg));
    }
    return space;
}

namespace
{
    nlohmann::ordered_json report_to_json(const MetricReport &report)
    {
        nlohmann::ordered_json j;
        j["architecture"] = to_string(report.architecture);
        j["snr_db"] = report.snr_db;
        j["feed_loss_db"] = report.feed_loss_db;
        j["n_evaluated"] = report.count();
        j["n_skipped"] = report.skipped;
        j["mean_sum_se"] = report.mean_sum_se();
        j["mean_sll_max_db"] = report.mean_sll_db();
        double acc = 0.0;
        for (double v : report.sll_mean_db)
            acc += v;
        j["mean_sll_stream_mean_db"] =
            report.sll_mean_db.empty() ? 0.0 : acc / report.sll_mean_db.size();
        j["sum_se"] = report.sum_se;
        j["sll_max_db"] = report.sll_max_db;
        j["per_user_se"] = report.per_user_se;
        j["per_user_sinr"] = report.per_user_sinr;
        j["per_stream_sll_db"] = report.per_stream_sll_db;
        return j;
    }

    bool all_finite(const MetricReport &report)
    {
        auto ok = [](double v) { return std::isfinite(v); };
        for (double v : report.sum_se)
            if (!ok(v))
                return false;
        for (double v : report.sll_max_db)
            if (!ok(v))
                return false;
        for (const auto &row : report.per_user_se)
            for (double v : row)
                if (!ok(v))
                    return false;
        for (const auto &row : report.per_user_sinr)
            for (double v : row)
                if (!ok(v))
                    return false;
        for (const auto &row : report.per_stream_sll_db)
            for (double v : row)
                if (!ok(v))
                    return false;
        return true;
    }
} // namespace

EvaluateOutcome run_evaluate(const ScenarioConfig &scenario, const ArrayConfig &config,
                             std::ostream &err)
{
    EvaluateOutcome outcome;
    nlohmann::ordered_json root;
    root["kind"] = to_string(config.kind);
    root["config"] = nlohmann::json::parse(config_to_json(config));
    root["n_realizations"] = scenario.n_realizations;
    root["channel_seed"] = scenario.channel_seed;

    std::ostringstream csv;
    csv << "architecture,snr_db,mean_sum_se,mean_sll_max_db,n_evaluated,n_skipped\n";

    int total = 0, skipped = 0;
    nlohmann::ordered_json reports = nlohmann::ordered_json::array();
    for (const Architecture arch : scenario.architectures)
    {
        MetricReport report;
        try
        {
            report = evaluate_report(config, arch, scenario, scenario.n_realizations,
                                     scenario.channel_seed, scenario.snr_eval_db);
        }
        catch (const degenerate_channel_error &e)
        {
            err << "error: " << e.what() << '\n';
            outcome.exit_code = exit_degenerate;
            return outcome;
        }
        if (!all_finite(report))
        {
            err << "error: non-finite metric value\n";
            outcome.exit_code = exit_degenerate;
            return outcome;
        }
        total += report.count() + report.skipped;
        skipped += report.skipped;
        reports.push_back(report_to_json(report));
        csv << to_string(arch) << ',' << format_double(report.snr_db) << ','
            << format_double(report.mean_sum_se()) << ',' << format_double(report.mean_sll_db())
            << ',' << report.count() << ',' << report.skipped << '\n';
    }
    root["reports"] = reports;

    outcome.report_json = root.dump(2);
    outcome.report_csv = csv.str();
    if (total > 0 && 10 * skipped > total)
    {
        err << "error: more than 10% of realizations were degenerate\n";
        outcome.exit_code = exit_degenerate;
    }
    return outcome;
}

OptimizeOutcome run_optimize(const ScenarioConfig &scenario, ConfigKind kind, double beta,
                             Architecture arch, bool exhaustive_check, std::ostream &err,
                             std::optional<int> feeds)
{
    OptimizeOutcome outcome;

    const std::vector<ArrayConfig> space = build_search_space(scenario, kind, feeds);
    if (space.empty())
    {
        err << "error: empty search space\n";
        outcome.exit_code = exit_usage;
        return outcome;
    }

    // reference pair from the fully populated array under the same seeds
    const ArrayConfig reference = make_fpra(scenario.tx_rows, scenario.tx_cols);
    const EvalSummary ref = evaluate_config(reference, arch, scenario, scenario.n_realizations,
                                            scenario.channel_seed);
    ObjectiveSpec spec;
    spec.beta = beta;
    spec.se_ref = ref.mean_se;
    spec.sll_ref_db = ref.mean_sll_db;

    GaConfig ga;
    ga.population = scenario.ga.population;
    ga.crossover_prob = scenario.ga.crossover_prob;
    ga.mutation_prob = scenario.ga.mutation_prob;
    ga.max_generations = scenario.ga.max_generations;
    if (scenario.ga.use_early_stop)
        ga.early_stop = scenario.ga.early_stop;
    ga.seed = scenario.ga.seed;

    // one fitness cache shared by the GA and the optional exhaustive pass
    std::unordered_map<std::size_t, double> cache;
    auto fitness = [&](std::size_t idx) {
        const auto it = cache.find(idx);
        if (it != cache.end())
            return it->second;
        const EvalSummary s = evaluate_config(space[idx], arch, scenario,
                                              scenario.n_realizations, scenario.channel_seed);
        const double f = objective(s.mean_se, s.mean_sll_db, spec);
        cache.emplace(idx, f);
        return f;
    };

    const GaResult result = ga_search(space.size(), ga, fitness);

    outcome.best = space[result.best_index];
    outcome.best_fitness = result.best_fitness;
    const EvalSummary best_eval = evaluate_config(outcome.best, arch, scenario,
                                                  scenario.n_realizations, scenario.channel_seed);
    outcome.mean_se = best_eval.mean_se;
    outcome.mean_sll_db = best_eval.mean_sll_db;

    std::ostringstream trace;
    trace << "generation,best_fitness\n";
    for (std::size_t g = 0; g < result.best_trace.size(); g++)
        trace << g << ',' << format_double(result.best_trace[g]) << '\n';
    outcome.trace_csv = trace.str();

    if (exhaustive_check)
    {
        if (space.size() > 65536)
        {
            outcome.exhaustive_note = "space too large for the exhaustive cross-check";
        }
        else
        {
            std::size_t best = 0;
            double best_val = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < space.size(); i++)
            {
                const double f = fitness(i);
                if (f > best_val)
                {
                    best_val = f;
                    best = i;
                }
            }
            std::ostringstream note;
            note << "exhaustive best " << best_val << " at index " << best << "; GA "
                 << (std::abs(best_val - result.best_fitness) < 1e-12 ? "matched"
                                                                      : "did not match");
            outcome.exhaustive_note = note.str();
        }
    }
    return outcome;
}

int run_pareto(const ScenarioConfig &scenario, ConfigKind kind, int n_samples,
               std::ostream &out, std::ostream &err, std::optional<int> feeds)
{
    if (n_samples < 1)
    {
        err << "error: at least one sample is required\n";
        return exit_usage;
    }

    std::vector<ArrayConfig> space = build_search_space(scenario, kind, feeds);
    if (space.empty())
    {
        err << "error: empty configuration space\n";
        return exit_usage;
    }
    if (static_cast<int>(space.size()) > n_samples)
    {
        // seeded uniform subsample of the generated space
        std::mt19937_64 rng(scenario.sampling_seed);
        std::vector<ArrayConfig> picked;
        std::set<std::size_t> chosen;
        std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
        while (static_cast<int>(chosen.size()) < n_samples)
            chosen.insert(pick(rng));
        for (std::size_t idx : chosen)
            picked.push_back(space[idx]);
        space = std::move(picked);
    }

    const ArrayConfig reference = make_fpra(scenario.tx_rows, scenario.tx_cols);
    const EvalSummary ref = evaluate_config(reference, Architecture::fd, scenario,
                                            scenario.n_realizations, scenario.channel_seed);
    ObjectiveSpec spec;
    spec.se_ref = ref.mean_se;
    spec.sll_ref_db = ref.mean_sll_db;

    std::vector<std::pair<double, double>> samples;
    samples.reserve(space.size());
    for (const auto &cfg : space)
    {
        try
        {
            const EvalSummary s = evaluate_config(cfg, Architecture::fd, scenario,
                                                  scenario.n_realizations, scenario.channel_seed);
            samples.push_back({s.mean_se, s.mean_sll_db});
        }
        catch (const degenerate_channel_error &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_degenerate;
        }
    }

    const ParetoSweep sweep = pareto_sweep(samples, scenario.beta_grid, spec);

    out << "sample,config_index,mean_sum_se,mean_sll_max_db,non_dominated,best_for_betas\n";
    for (std::size_t i = 0; i < sweep.points.size(); i++)
    {
        const auto &p = sweep.points[i];
        std::string betas;
        for (std::size_t b = 0; b < sweep.best_per_beta.size(); b++)
            if (sweep.best_per_beta[b] == i)
                betas += (betas.empty() ? "" : ";") + format_double(scenario.beta_grid[b]);
        out << i << ',' << space[i].config_index.value_or(-1) << ','
            << format_double(p.mean_se) << ',' << format_double(p.mean_sll_db) << ','
            << (p.dominated ? 0 : 1) << ',' << betas << '\n';
    }
    return exit_ok;
}

int run_pattern(const ScenarioConfig &scenario, const ArrayConfig &config, Architecture arch,
                std::vector<std::string> &csv_out, std::ostream &err)
{
    try
    {
        const Grid tx_grid =
            build_grid(config.rows, config.cols, scenario.tx_dx, scenario.tx_dy);
        const Grid rx_grid =
            build_grid(scenario.rx_rows, scenario.rx_cols, scenario.rx_dx, scenario.rx_dy);
        const TxArray tx = make_tx_array(
            tx_grid, config.clusters,
            derive_pattern(scenario.pattern_kind_for(config.kind),
                           scenario.gain_for(config.kind)));
        const ElementPattern rx_pat =
            derive_pattern(PatternKind::single, scenario.rx_gain_dbi);
        const auto [tx_cb, rx_cb] = build_codebooks(tx.layout, rx_grid, scenario.codebook_step);

        ChannelParams params = scenario.channel;
        params.num_receivers = scenario.num_receivers;
        if (params.angular_grid.empty())
            params.angular_grid = make_angular_grid();

        const ChannelRealization ch =
            draw_channel(params, tx, rx_grid, rx_pat, scenario.channel_seed);
        const Precoder p = build_precoder(arch, ch, tx, tx_cb, rx_cb);

        const AngularGrid grid = make_pattern_grid(scenario.pattern_grid_step);
        const PatternEvaluator evaluator(tx.layout, tx.patterns, grid);
        for (arma::uword k = 0; k < p.F.n_cols; k++)
        {
            std::ostringstream os;
            write_pattern_csv(os, evaluator.evaluate(arma::cx_vec(p.F.col(k))));
            csv_out.push_back(os.str());
        }
        return exit_ok;
    }
    catch (const degenerate_channel_error &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_degenerate;
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

int run_sweep(const ScenarioConfig &scenario, const std::vector<ArrayConfig> &configs,
              std::ostream &out, std::ostream &err)
{
    out << "config_index,kind,architecture,snr_db,mean_sum_se,mean_sll_max_db\n";
    for (std::size_t c = 0; c < configs.size(); c++)
    {
        for (const Architecture arch : scenario.architectures)
        {
            // one realization set per (config, architecture); SNR only scales
            // the SINR, so the sweep reuses the cached link powers
            MetricReport base;
            try
            {
                base = evaluate_report(configs[c], arch, scenario, scenario.n_realizations_sweep,
                                       scenario.channel_seed, scenario.snr_eval_db);
            }
            catch (const degenerate_channel_error &e)
            {
                err << "error: " << e.what() << '\n';
                return exit_degenerate;
            }
            for (const double snr : scenario.snr_db)
            {
                // gamma = eta A / (eta B + 1) from the stored link powers
                const double eta = std::pow(10.0, (snr - base.feed_loss_db) / 10.0);
                double acc = 0.0;
                std::size_t n_sums = 0;
                for (std::size_t r = 0; r < base.per_user_signal.size(); r++)
                {
                    double sum = 0.0;
                    for (std::size_t k = 0; k < base.per_user_signal[r].size(); k++)
                    {
                        const double a = base.per_user_signal[r][k];
                        const double b = base.per_user_interference[r][k];
                        sum += std::log2(1.0 + eta * a / (eta * b + 1.0));
                    }
                    if (!std::isfinite(sum))
                    {
                        err << "error: non-finite sweep value\n";
                        return exit_degenerate;
                    }
                    acc += sum;
                    n_sums++;
                }
                const double mean_se = n_sums == 0 ? 0.0 : acc / n_sums;
                out << configs[c].config_index.value_or(static_cast<std::int64_t>(c)) << ','
                    << to_string(configs[c].kind) << ',' << to_string(arch) << ','
                    << format_double(snr) << ',' << format_double(mean_se) << ','
                    << format_double(base.mean_sll_db()) << '\n';
            }
        }
    }
    return exit_ok;
}

} // namespace irrarray
