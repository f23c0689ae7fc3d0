// Copyright 2026 The rcgnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Python bindings for dataset generation, training, retrieval explanations
// and evaluation.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rcgnn/benchmark.h"
#include "rcgnn/checkpoint.h"
#include "rcgnn/dataset_io.h"
#include "rcgnn/error.h"
#include "rcgnn/explainers.h"
#include "rcgnn/generators.h"
#include "rcgnn/losses.h"
#include "rcgnn/matching.h"
#include "rcgnn/metrics.h"
#include "rcgnn/trainer.h"

namespace py = pybind11;
using namespace rcgnn;

namespace {

std::vector<std::pair<int, int>> edge_pairs(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  out.reserve(g.edges.size());
  for (const Edge& e : g.edges) out.emplace_back(e.u, e.v);
  return out;
}

Graph make_graph(int node_count, const std::vector<std::pair<int, int>>& edges,
                 const Matrix& features, int label,
                 const std::optional<std::vector<bool>>& gt_edge_mask, int graph_id) {
  Graph g;
  g.graph_id = graph_id;
  g.node_count = node_count;
  for (auto [u, v] : edges) g.edges.push_back({u, v});
  g.node_features = features;
  g.label = label;
  g.gt_edge_mask = gt_edge_mask;
  validate(g);
  return g;
}

Explainer explainer_by_name(const std::string& name, const TrainedModel& model, uint64_t seed) {
  if (name == "retrieval") return make_retrieval_explainer(model);
  if (name == "random") return make_random_explainer(seed, model.hp.ratio);
  if (name == "saliency") return make_saliency_explainer(model.params, model.hp.ratio);
  throw ParameterError("unknown explainer: " + name);
}

py::dict row_dict(const ReportRow& r) {
  py::dict d;
  d["dataset"] = r.dataset;
  d["explainer"] = r.explainer;
  d["acc_auc"] = r.acc_auc;
  d["acc_at_rho"] = std::vector<double>(r.acc_at_rho.begin(), r.acc_at_rho.end());
  d["recall_at_n"] = r.recall_at_n;
  d["precision_at_n"] = r.precision_at_n;
  d["graph_acc"] = r.graph_acc;
  d["n"] = r.n_used;
  d["seed"] = r.seed;
  return d;
}

struct PyModel {
  TrainedModel model;
  TrainingLog log;
};

}  // namespace

PYBIND11_MODULE(_rcgnn, m) {
  m.doc() = "Retrieval-based causal graph explanations";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<EmptyCandidateSetError>(m, "EmptyCandidateSetError", PyExc_RuntimeError);
  py::register_exception<NonFiniteError>(m, "NonFiniteError", PyExc_ArithmeticError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("node_count"), py::arg("edges"), py::arg("features"),
           py::arg("label") = 0, py::arg("gt_edge_mask") = std::nullopt, py::arg("graph_id") = 0)
      .def_readonly("graph_id", &Graph::graph_id)
      .def_readonly("node_count", &Graph::node_count)
      .def_readonly("label", &Graph::label)
      .def_readonly("node_features", &Graph::node_features)
      .def_readonly("gt_edge_mask", &Graph::gt_edge_mask)
      .def_property_readonly("edges", &edge_pairs)
      .def("__repr__", [](const Graph& g) {
        return "<Graph id=" + std::to_string(g.graph_id) + " nodes=" + std::to_string(g.node_count) +
               " edges=" + std::to_string(g.edge_count()) + ">";
      });

  py::class_<Splits>(m, "Splits")
      .def_readonly("train", &Splits::train)
      .def_readonly("val", &Splits::val)
      .def_readonly("test", &Splits::test)
      .def_readonly("explain", &Splits::explain);

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("graphs", &Dataset::graphs)
      .def_readonly("num_classes", &Dataset::num_classes)
      .def_readonly("splits", &Dataset::splits)
      .def("__len__", [](const Dataset& ds) { return ds.graphs.size(); })
      .def("__getitem__", &Dataset::graph, py::return_value_policy::reference_internal)
      .def("save", [](const Dataset& ds, const std::filesystem::path& p) { save_dataset(ds, p); });

  py::class_<GeneratorOptions>(m, "GeneratorOptions")
      .def(py::init<>())
      .def_readwrite("min_base_nodes", &GeneratorOptions::min_base_nodes)
      .def_readwrite("max_base_nodes", &GeneratorOptions::max_base_nodes)
      .def_readwrite("attachment", &GeneratorOptions::attachment)
      .def_readwrite("feature_dim", &GeneratorOptions::feature_dim);

  m.def("generate_ba3motif", &generate_ba3motif, py::arg("num_graphs"), py::arg("seed") = 0,
        py::arg("options") = GeneratorOptions{});
  m.def("generate_multimotif", &generate_multimotif, py::arg("num_graphs"),
        py::arg("motifs_per_class") = 2, py::arg("seed") = 0, py::arg("options") = GeneratorOptions{});
  m.def("multimotif_kind",
        [](int id, int per_class) { return std::string(motif_name(multimotif_kind(id, per_class))); });
  m.def("load_dataset", &load_dataset, py::arg("path"));

  py::class_<HyperParams>(m, "HyperParams")
      .def(py::init([](const std::map<std::string, std::string>& overrides) {
             HyperParams hp = apply_config(HyperParams{}, overrides);
             validate(hp);
             return hp;
           }),
           py::arg("overrides") = std::map<std::string, std::string>{})
      .def("to_dict", [](const HyperParams& hp) { return to_config_map(hp); })
      .def_readwrite("q", &HyperParams::q)
      .def_readwrite("lambda1", &HyperParams::lambda1)
      .def_readwrite("lambda2", &HyperParams::lambda2)
      .def_readwrite("threshold", &HyperParams::threshold)
      .def_readwrite("tau", &HyperParams::tau)
      .def_readwrite("ratio", &HyperParams::ratio)
      .def_readwrite("lr", &HyperParams::lr)
      .def_readwrite("grad_clip", &HyperParams::grad_clip)
      .def_readwrite("epochs", &HyperParams::epochs)
      .def_readwrite("batch_size", &HyperParams::batch_size)
      .def_readwrite("warmup_epochs", &HyperParams::warmup_epochs)
      .def_readwrite("seed", &HyperParams::seed)
      .def_readwrite("hidden_dim", &HyperParams::hidden_dim)
      .def_readwrite("candidate_max", &HyperParams::candidate_max)
      .def_property(
          "variant", [](const HyperParams& hp) { return std::string(to_string(hp.variant)); },
          [](HyperParams& hp, const std::string& v) { hp.variant = parse_variant(v); });

  py::class_<Explanation>(m, "Explanation")
      .def_readonly("graph_id", &Explanation::graph_id)
      .def_readonly("node_scores", &Explanation::node_scores)
      .def_readonly("edge_scores", &Explanation::edge_scores)
      .def_readonly("selected_nodes", &Explanation::selected_nodes)
      .def_readonly("ratio", &Explanation::ratio);

  py::class_<PyModel>(m, "Model")
      .def_property_readonly("hyperparams", [](const PyModel& pm) { return pm.model.hp; })
      .def_property_readonly("best_epoch", [](const PyModel& pm) { return pm.log.best_epoch; })
      .def_property_readonly("training_log",
                             [](const PyModel& pm) {
                               py::list out;
                               for (const EpochLog& e : pm.log.epochs) {
                                 py::dict d;
                                 d["epoch"] = e.epoch;
                                 d["L_sup"] = e.l_sup;
                                 d["L_dis"] = e.l_dis;
                                 d["L_con"] = e.l_con;
                                 d["train_acc"] = e.train_acc;
                                 d["val_acc"] = e.val_acc;
                                 out.append(d);
                               }
                               return out;
                             })
      .def("predict", [](const PyModel& pm, const Graph& g) { return predict(pm.model, g); })
      .def("explain", [](const PyModel& pm, const Graph& g) { return explain_graph(pm.model, g); })
      .def(
          "accuracy",
          [](const PyModel& pm, const Dataset& ds, const std::vector<int>& ids, int threads) {
            return accuracy(pm.model, ds, ids, threads);
          },
          py::arg("dataset"), py::arg("ids"), py::arg("threads") = 1)
      .def(
          "save",
          [](const PyModel& pm, const std::filesystem::path& p) {
            save_checkpoint({pm.model.params, pm.model.hp, pm.model.hp.epochs, ""}, p);
          },
          py::arg("path"));

  m.def(
      "fit",
      [](const Dataset& ds, const HyperParams& hp, int threads) {
        FitOptions fo;
        fo.threads = threads;
        FitResult fr;
        {
          py::gil_scoped_release release;
          fr = fit(ds, hp, fo);
        }
        return PyModel{make_trained_model(ds, std::move(fr.params), hp), std::move(fr.log)};
      },
      py::arg("dataset"), py::arg("hyperparams") = HyperParams{}, py::arg("threads") = 1);

  m.def(
      "load_model",
      [](const std::filesystem::path& path, const Dataset& ds) {
        Checkpoint ckpt = load_checkpoint(path);
        return PyModel{make_trained_model(ds, std::move(ckpt.params), ckpt.hyperparams), {}};
      },
      py::arg("path"), py::arg("dataset"));

  m.def(
      "benchmark",
      [](const Dataset& ds, const PyModel& pm, const std::vector<std::string>& names, int top_n,
         uint64_t seed, int threads) {
        std::vector<Explainer> explainers;
        for (const std::string& n : names) explainers.push_back(explainer_by_name(n, pm.model, seed));
        BenchmarkOptions bo;
        bo.top_n = top_n;
        bo.seed = seed;
        bo.threads = threads;
        py::list rows;
        for (const ReportRow& r : run_benchmark(ds, pm.model, explainers, bo).rows) {
          rows.append(row_dict(r));
        }
        return rows;
      },
      py::arg("dataset"), py::arg("model"),
      py::arg("explainers") = std::vector<std::string>{"retrieval", "random", "saliency"},
      py::arg("top_n") = 5, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def(
      "explain_random",
      [](const Graph& g, uint64_t seed, double ratio) { return random_explanation(g, seed, ratio); },
      py::arg("graph"), py::arg("seed") = 0, py::arg("ratio") = 0.3);

  m.def("recall_at_n", &recall_at_n, py::arg("explanation"), py::arg("graph"), py::arg("n") = 5);
  m.def("precision_at_n", &precision_at_n, py::arg("explanation"), py::arg("graph"),
        py::arg("n") = 5);

  m.def(
      "match",
      [](const Matrix& a, const Matrix& b, int k, const std::string& mode) {
        MatchMode mm = MatchMode::kAuto;
        if (mode == "exact") mm = MatchMode::kExact;
        else if (mode == "greedy") mm = MatchMode::kGreedy;
        else if (mode != "auto" && mode != "brute") throw ParameterError("unknown match mode: " + mode);
        const MatchResult r = mode == "brute" ? brute_force_match(a, b, k) : match_subgraphs(a, b, k, mm);
        std::vector<std::tuple<int, int, double>> pairs;
        for (const NodePair& p : r.pairs) pairs.emplace_back(p.query, p.candidate, p.similarity);
        return py::make_tuple(r.score, pairs);
      },
      py::arg("query"), py::arg("candidate"), py::arg("k"), py::arg("mode") = "auto");
  m.def("brute_force_score",
        [](const Matrix& a, const Matrix& b, int k) { return brute_force_match(a, b, k).score; });

  m.def("cross_entropy", &cross_entropy, py::arg("probs"), py::arg("label"));
  m.def("gce_loss", &gce_loss, py::arg("probs"), py::arg("label"), py::arg("q") = 0.7);
  m.def("disentangle_weight", &disentangle_weight, py::arg("ce_c"), py::arg("ce_t"));
  m.def("derangement", &derangement, py::arg("n"), py::arg("seed"));
}
