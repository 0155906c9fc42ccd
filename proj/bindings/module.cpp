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

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "irrarray/errors.hpp"
#include "irrarray/optimizer.hpp"
#include "irrarray/runner.hpp"

namespace py = pybind11;
using namespace irrarray;

namespace
{
    py::array_t<double> mat_to_numpy(const arma::mat &m)
    {
        py::array_t<double> out({m.n_rows, m.n_cols});
        auto buf = out.mutable_unchecked<2>();
        for (arma::uword r = 0; r < m.n_rows; r++)
            for (arma::uword c = 0; c < m.n_cols; c++)
                buf(r, c) = m(r, c);
        return out;
    }

    py::array_t<std::complex<double>> cx_to_numpy(const arma::cx_vec &v)
    {
        py::array_t<std::complex<double>> out(v.n_elem);
        auto buf = out.mutable_unchecked<1>();
        for (arma::uword i = 0; i < v.n_elem; i++)
            buf(i) = v(i);
        return out;
    }

    py::object count_to_int(const bigint &v) // arbitrary precision via the string route
    {
        return py::int_(py::str(v.str()));
    }
} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "irregular phased array simulation and optimization toolkit";

    py::register_exception<degenerate_channel_error>(m, "DegenerateChannelError");
    py::register_exception<degenerate_mask_error>(m, "DegenerateMaskError");

    py::enum_<ConfigKind>(m, "ConfigKind")
        .value("fpra", ConfigKind::fpra)
        .value("thinned", ConfigKind::thinned)
        .value("domino", ConfigKind::domino)
        .value("tetromino", ConfigKind::tetromino);

    py::enum_<Architecture>(m, "Architecture")
        .value("fd", Architecture::fd)
        .value("hfc", Architecture::hfc)
        .value("hpc", Architecture::hpc);

    py::class_<ArrayConfig>(m, "ArrayConfig")
        .def(py::init<>())
        .def_readwrite("kind", &ArrayConfig::kind)
        .def_readwrite("rows", &ArrayConfig::rows)
        .def_readwrite("cols", &ArrayConfig::cols)
        .def_readwrite("clusters", &ArrayConfig::clusters)
        .def_readwrite("config_index", &ArrayConfig::config_index)
        .def("feed_count", &ArrayConfig::feed_count)
        .def("active_elements", &ArrayConfig::active_elements)
        .def("to_json", &config_to_json)
        .def_static("from_json", &config_from_json)
        .def("__repr__", [](const ArrayConfig &c) {
            return "<ArrayConfig " + to_string(c.kind) + " " + std::to_string(c.rows) + "x" +
                   std::to_string(c.cols) + " S=" + std::to_string(c.feed_count()) + ">";
        });

    m.def("count_domino",
          [](int rows, int cols) { return count_to_int(count_domino(rows, cols)); },
          py::arg("rows"), py::arg("cols"));
    m.def("count_thinned",
          [](int rows, int cols, int feeds) {
              return count_to_int(count_thinned(rows, cols, feeds));
          },
          py::arg("rows"), py::arg("cols"), py::arg("feeds"));

    m.def("enumerate_configs",
          [](const std::string &kind, int rows, int cols, std::uint64_t cap) {
              const ConfigKind k = config_kind_from_string(kind);
              if (k != ConfigKind::domino && k != ConfigKind::tetromino)
                  throw std::invalid_argument("enumeration needs a clustered kind");
              const ShapeSet shapes =
                  k == ConfigKind::domino ? domino_shapes() : tetromino_shapes();
              return enumerate_exact_covers(build_dictionary(rows, cols, shapes), cap);
          },
          py::arg("kind"), py::arg("rows"), py::arg("cols"), py::arg("cap") = 1000);

    m.def("sample_thinned", &sample_thinned, py::arg("rows"), py::arg("cols"),
          py::arg("feeds"), py::arg("seed"));
    m.def("make_fpra", &make_fpra, py::arg("rows"), py::arg("cols"));
    m.def("fill_factor", &fill_factor, py::arg("config"));
    m.def("connection_matrix",
          [](const ArrayConfig &cfg) { return mat_to_numpy(connection_matrix(cfg)); },
          py::arg("config"));

    m.def("steering_vector",
          [](const ArrayConfig &cfg, double gain_dbi, double u, double v) {
              const Grid g = build_grid(cfg.rows, cfg.cols, 0.5, 0.5);
              const ClusterLayout layout = make_cluster_layout(g, cfg.clusters);
              const std::vector<ElementPattern> pats(
                  cfg.clusters.size(), derive_pattern(PatternKind::single, gain_dbi));
              return cx_to_numpy(tx_steering_vector(layout, pats, u, v));
          },
          py::arg("config"), py::arg("gain_dbi"), py::arg("u"), py::arg("v"),
          "transmit steering vector of a half-wavelength layout");

    py::class_<ScenarioConfig>(m, "Scenario")
        .def(py::init(&default_scenario))
        .def_static("from_json", &scenario_from_json)
        .def_static("load", &load_scenario)
        .def("to_json", &scenario_to_json)
        .def_readwrite("tx_rows", &ScenarioConfig::tx_rows)
        .def_readwrite("tx_cols", &ScenarioConfig::tx_cols)
        .def_readwrite("num_receivers", &ScenarioConfig::num_receivers)
        .def_readwrite("n_realizations", &ScenarioConfig::n_realizations)
        .def_readwrite("snr_eval_db", &ScenarioConfig::snr_eval_db)
        .def_readwrite("channel_seed", &ScenarioConfig::channel_seed)
        .def_readwrite("pattern_grid_step", &ScenarioConfig::pattern_grid_step)
        .def_readwrite("codebook_step", &ScenarioConfig::codebook_step);

    py::class_<EvalSummary>(m, "EvalSummary")
        .def_readonly("mean_se", &EvalSummary::mean_se)
        .def_readonly("mean_sll_db", &EvalSummary::mean_sll_db)
        .def_readonly("evaluated", &EvalSummary::evaluated)
        .def_readonly("skipped", &EvalSummary::skipped)
        .def("__repr__", [](const EvalSummary &s) {
            return "<EvalSummary se=" + std::to_string(s.mean_se) +
                   " sll_db=" + std::to_string(s.mean_sll_db) + ">";
        });

    m.def("evaluate_config",
          [](const ArrayConfig &cfg, const std::string &arch, const ScenarioConfig &scenario,
             int n_realizations, std::uint64_t seed) {
              return evaluate_config(cfg, architecture_from_string(arch), scenario,
                                     n_realizations, seed);
          },
          py::arg("config"), py::arg("architecture"), py::arg("scenario"),
          py::arg("n_realizations"), py::arg("seed"));

    m.def("objective",
          [](double mean_se, double mean_sll_db, double beta, double se_ref, double sll_ref_db) {
              ObjectiveSpec spec;
              spec.beta = beta;
              spec.se_ref = se_ref;
              spec.sll_ref_db = sll_ref_db;
              return objective(mean_se, mean_sll_db, spec);
          },
          py::arg("mean_se"), py::arg("mean_sll_db"), py::arg("beta"), py::arg("se_ref"),
          py::arg("sll_ref_db"));

    py::class_<GaResult>(m, "GaResult")
        .def_readonly("best_index", &GaResult::best_index)
        .def_readonly("best_fitness", &GaResult::best_fitness)
        .def_readonly("best_trace", &GaResult::best_trace)
        .def_readonly("evaluations", &GaResult::evaluations);

    m.def("ga_search",
          [](std::size_t space_size, const std::function<double(std::size_t)> &fitness,
             int population, double crossover_prob, double mutation_prob, int max_generations,
             std::uint64_t seed) {
              GaConfig cfg;
              cfg.population = population;
              cfg.crossover_prob = crossover_prob;
              cfg.mutation_prob = mutation_prob;
              cfg.max_generations = max_generations;
              cfg.seed = seed;
              return ga_search(space_size, cfg, fitness);
          },
          py::arg("space_size"), py::arg("fitness"), py::arg("population") = 20,
          py::arg("crossover_prob") = 0.9, py::arg("mutation_prob") = 0.1,
          py::arg("max_generations") = 50, py::arg("seed") = 1);

    m.def("pareto_front",
          [](const std::vector<std::pair<double, double>> &samples,
             const std::vector<double> &betas, double se_ref, double sll_ref_db) {
              ObjectiveSpec ref;
              ref.se_ref = se_ref;
              ref.sll_ref_db = sll_ref_db;
              const ParetoSweep sweep = pareto_sweep(samples, betas, ref);
              return py::make_tuple(sweep.front, sweep.best_per_beta);
          },
          py::arg("samples"), py::arg("betas"), py::arg("se_ref"), py::arg("sll_ref_db"),
          "returns (non-dominated indices, per-beta winner indices)");

    m.attr("__version__") = "0.1.0";
}
