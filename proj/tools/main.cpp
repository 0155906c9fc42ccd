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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "irrarray/optimizer.hpp"
#include "irrarray/runner.hpp"

namespace fs = std::filesystem;
using namespace irrarray;

namespace
{
    ArrayConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("Cannot open config file '" + path + "'.");
        std::string line;
        std::getline(in, line); // first JSON object of an NDJSON stream works too
        return config_from_json(line);
    }

    std::ofstream open_out(const fs::path &path)
    {
        fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::invalid_argument("Cannot write '" + path.string() + "'.");
        return out;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"irregular phased array simulation and optimization toolkit"};
    app.require_subcommand(1);

    std::string kind_str, scenario_path, config_path, out_path, arch_str = "fd";
    int rows = 8, cols = 10, feeds = 0, n_samples = 1;
    std::uint64_t cap = 1000, seed = 1;
    double beta = 1.0;
    bool exhaustive = false;
    std::vector<std::string> config_paths;

    auto *c_count = app.add_subcommand("count", "solution space size of a kind");
    c_count->add_option("kind", kind_str, "domino|thinned")->required();
    c_count->add_option("rows", rows)->required();
    c_count->add_option("cols", cols)->required();
    c_count->add_option("feeds", feeds, "feed count S (thinned only)");

    auto *c_enum = app.add_subcommand("enumerate", "exact-cover configurations as JSON lines");
    c_enum->add_option("kind", kind_str, "domino|tetromino")->required();
    c_enum->add_option("rows", rows)->required();
    c_enum->add_option("cols", cols)->required();
    c_enum->add_option("--cap", cap, "stop after this many configurations");
    c_enum->add_option("-o,--out", out_path, "output file (stdout when omitted)");

    auto *c_sample = app.add_subcommand("sample", "seeded random thinned configurations");
    c_sample->add_option("kind", kind_str, "thinned")->required();
    c_sample->add_option("rows", rows)->required();
    c_sample->add_option("cols", cols)->required();
    c_sample->add_option("feeds", feeds, "feed count S")->required();
    c_sample->add_option("-n,--count", n_samples, "number of samples");
    c_sample->add_option("--seed", seed);
    c_sample->add_option("-o,--out", out_path, "output file (stdout when omitted)");

    auto *c_eval = app.add_subcommand("evaluate", "Monte-Carlo metric report for a configuration");
    c_eval->add_option("scenario", scenario_path, "scenario JSON file")->required();
    c_eval->add_option("config", config_path, "configuration JSON file")->required();
    c_eval->add_option("-o,--out", out_path, "output stem (writes <stem>.json and <stem>.csv)");

    auto *c_opt = app.add_subcommand("optimize", "genetic search over a configuration space");
    c_opt->add_option("scenario", scenario_path, "scenario JSON file")->required();
    c_opt->add_option("--kind", kind_str, "fpra|thinned|domino|tetromino")->required();
    c_opt->add_option("--beta", beta, "objective weight in [0, 1]");
    c_opt->add_option("--arch", arch_str, "fd|hfc|hpc");
    c_opt->add_option("--feeds", feeds, "thinned feed count (defaults to half the cells)");
    c_opt->add_flag("--exhaustive-check", exhaustive, "cross-check against full enumeration");
    c_opt->add_option("-o,--out", out_path, "output stem (best config, trace, summary)");

    auto *c_sweep = app.add_subcommand("sweep", "SNR versus spectral efficiency CSV");
    c_sweep->add_option("scenario", scenario_path, "scenario JSON file")->required();
    c_sweep->add_option("configs", config_paths, "configuration JSON files")->required();
    c_sweep->add_option("-o,--out", out_path, "output file (stdout when omitted)");

    auto *c_pareto = app.add_subcommand("pareto", "efficiency/sidelobe trade-off CSV");
    c_pareto->add_option("scenario", scenario_path, "scenario JSON file")->required();
    c_pareto->add_option("--kind", kind_str, "fpra|thinned|domino|tetromino")->required();
    c_pareto->add_option("-n,--samples", n_samples, "number of sampled configurations")
        ->required();
    c_pareto->add_option("--feeds", feeds, "thinned feed count (defaults to half the cells)");
    c_pareto->add_option("-o,--out", out_path, "output file (stdout when omitted)");

    auto *c_pattern = app.add_subcommand("pattern", "per-stream beam pattern CSV export");
    c_pattern->add_option("scenario", scenario_path, "scenario JSON file")->required();
    c_pattern->add_option("config", config_path, "configuration JSON file")->required();
    c_pattern->add_option("--arch", arch_str, "fd|hfc|hpc");
    c_pattern->add_option("-o,--out", out_path, "output stem (writes <stem>_stream<k>.csv)")
        ->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (c_count->parsed())
        {
            const ConfigKind kind = config_kind_from_string(kind_str);
            return run_count(kind, rows, cols,
                             c_count->count("feeds") ? std::optional<int>(feeds) : std::nullopt,
                             std::cout, std::cerr);
        }

        if (c_enum->parsed())
        {
            const ConfigKind kind = config_kind_from_string(kind_str);
            if (!out_path.empty())
            {
                auto out = open_out(out_path);
                return run_enumerate(kind, rows, cols, cap, out, std::cerr);
            }
            return run_enumerate(kind, rows, cols, cap, std::cout, std::cerr);
        }

        if (c_sample->parsed())
        {
            const ConfigKind kind = config_kind_from_string(kind_str);
            if (!out_path.empty())
            {
                auto out = open_out(out_path);
                return run_sample(kind, rows, cols, feeds, n_samples, seed, out, std::cerr);
            }
            return run_sample(kind, rows, cols, feeds, n_samples, seed, std::cout, std::cerr);
        }

        if (c_eval->parsed())
        {
            const ScenarioConfig scenario = load_scenario(scenario_path);
            const ArrayConfig config = load_config(config_path);
            const EvaluateOutcome outcome = run_evaluate(scenario, config, std::cerr);
            if (outcome.exit_code == exit_usage)
                return outcome.exit_code;
            const fs::path stem =
                out_path.empty() ? fs::path(scenario.output_dir) / "report" : fs::path(out_path);
            open_out(stem.string() + ".json") << outcome.report_json << '\n';
            open_out(stem.string() + ".csv") << outcome.report_csv;
            std::cout << "report written to " << stem.string() << ".json\n";
            return outcome.exit_code;
        }

        if (c_opt->parsed())
        {
            const ScenarioConfig scenario = load_scenario(scenario_path);
            const ConfigKind kind = config_kind_from_string(kind_str);
            const Architecture arch = architecture_from_string(arch_str);
            const OptimizeOutcome outcome = run_optimize(
                scenario, kind, beta, arch, exhaustive,
                std::cerr, c_opt->count("--feeds") ? std::optional<int>(feeds) : std::nullopt);
            if (outcome.exit_code != exit_ok)
                return outcome.exit_code;
            const fs::path stem =
                out_path.empty() ? fs::path(scenario.output_dir) / "optimize" : fs::path(out_path);
            open_out(stem.string() + "_best.json") << config_to_json(outcome.best) << '\n';
            open_out(stem.string() + "_trace.csv") << outcome.trace_csv;
            std::cout << "best fitness " << outcome.best_fitness << " (mean sum SE "
                      << outcome.mean_se << " b/s/Hz, mean SLL " << outcome.mean_sll_db
                      << " dB)\n";
            if (!outcome.exhaustive_note.empty())
                std::cout << outcome.exhaustive_note << '\n';
            return exit_ok;
        }

        if (c_sweep->parsed())
        {
            const ScenarioConfig scenario = load_scenario(scenario_path);
            std::vector<ArrayConfig> configs;
            for (const auto &p : config_paths)
                configs.push_back(load_config(p));
            if (!out_path.empty())
            {
                auto out = open_out(out_path);
                return run_sweep(scenario, configs, out, std::cerr);
            }
            return run_sweep(scenario, configs, std::cout, std::cerr);
        }

        if (c_pareto->parsed())
        {
            const ScenarioConfig scenario = load_scenario(scenario_path);
            const ConfigKind kind = config_kind_from_string(kind_str);
            const auto feeds_opt =
                c_pareto->count("--feeds") ? std::optional<int>(feeds) : std::nullopt;
            if (!out_path.empty())
            {
                auto out = open_out(out_path);
                return run_pareto(scenario, kind, n_samples, out, std::cerr, feeds_opt);
            }
            return run_pareto(scenario, kind, n_samples, std::cout, std::cerr, feeds_opt);
        }

        if (c_pattern->parsed())
        {
            const ScenarioConfig scenario = load_scenario(scenario_path);
            const ArrayConfig config = load_config(config_path);
            const Architecture arch = architecture_from_string(arch_str);
            std::vector<std::string> csvs;
            const int code = run_pattern(scenario, config, arch, csvs, std::cerr);
            if (code != exit_ok)
                return code;
            for (std::size_t k = 0; k < csvs.size(); k++)
                open_out(out_path + "_stream" + std::to_string(k) + ".csv") << csvs[k];
            std::cout << csvs.size() << " pattern files written to " << out_path
                      << "_stream*.csv\n";
            return exit_ok;
        }
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_degenerate;
    }
    return exit_usage;
}
