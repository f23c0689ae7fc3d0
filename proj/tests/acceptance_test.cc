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


// Acceptance gate: runs every acceptance criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rcgnn/ablation.h"
#include "rcgnn/benchmark.h"
#include "rcgnn/explainers.h"
#include "rcgnn/generators.h"
#include "rcgnn/grad_check.h"
#include "rcgnn/losses.h"
#include "rcgnn/matching.h"
#include "rcgnn/metrics.h"
#include "rcgnn/parallel.h"
#include "rcgnn/rng.h"
#include "rcgnn/trainer.h"

namespace fs = std::filesystem;
using namespace rcgnn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double secs) {
  std::printf("[%s] criterion %d: %s (%.1fs) %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              secs, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

Vector two_class(double p) {
  Vector v(2);
  v << p, 1.0 - p;
  return v;
}

// Every closed form is recomputed here from its definition.
Outcome criterion_formulas() {
  Outcome o;
  o.require(near(gce_loss(two_class(1.0), 0, 0.7), 0.0), "gce p=1");
  o.require(near(gce_loss(two_class(0.5), 0, 0.7), (1.0 - std::pow(0.5, 0.7)) / 0.7), "gce p=0.5");
  o.require(near(gce_loss(two_class(0.0), 0, 0.7), 1.0 / 0.7), "gce p=0");
  o.require(near(gce_loss(two_class(0.3), 0, 1.0), 0.7), "gce q=1");
  o.require(near(disentangle_weight(0.0, 1.0), 0.0), "W ce_c=0");
  o.require(near(disentangle_weight(1.5, 1.5), 0.5), "W equal");
  o.require(near(disentangle_weight(2.0, 1.0), 2.0 / 3.0), "W 2/3");
  o.require(near(cross_entropy(two_class(1.0), 0), 0.0), "CE p=1");
  o.require(near(cross_entropy(two_class(0.5), 0), std::log(2.0)), "CE p=0.5");
  o.require(std::isfinite(cross_entropy(two_class(0.0), 0)), "CE floor");
  o.require(near(dis_loss(two_class(0.5), two_class(0.5), 0, 0.7),
                 0.5 * std::log(2.0) + (1.0 - std::pow(0.5, 0.7)) / 0.7),
            "dis_loss");

  Graph g;
  g.node_count = 10;
  g.node_features = Matrix::Ones(10, 1);
  std::vector<bool> mask;
  for (int i = 0; i < 10; ++i) {
    g.edges.push_back({i, (i + 1) % 10});
    mask.push_back(i < 6);
  }
  g.gt_edge_mask = mask;
  Explanation inside;
  inside.edge_scores.resize(10);
  inside.edge_scores << 9, 8, 7, 6, 5, 0, 0, 0, 0, 0;
  o.require(near(*recall_at_n(inside, g, 5), 5.0 / 6.0), "recall 5/6");
  o.require(near(*precision_at_n(inside, g, 5), 1.0), "precision 1");
  Explanation three;
  three.edge_scores.resize(10);
  three.edge_scores << 9, 8, 7, 0, 0, 0, 6, 5, 0, 0;
  o.require(near(*precision_at_n(three, g, 5), 0.6), "precision 0.6");
  std::vector<double> ones(10, 1.0), ramp(kRhoGrid.begin(), kRhoGrid.end()), zeros(10, 0.0);
  o.require(near(acc_auc(ones), 1.0), "acc_auc ones");
  o.require(near(acc_auc(ramp), 0.55), "acc_auc ramp");
  o.require(near(acc_auc(zeros), 0.0), "acc_auc zeros");
  return o;
}

Outcome criterion_gradients() {
  Outcome o;
  Dataset ds = generate_ba3motif(3, 4, {.min_base_nodes = 4, .max_base_nodes = 6});
  std::vector<Graph> graphs = {ds.graphs[0], ds.graphs[1]};
  Rng rng(1);
  for (Graph& g : graphs) {
    for (int i = 0; i < g.node_features.size(); ++i) g.node_features.data()[i] = uniform01(rng);
  }
  std::vector<BatchItem> items = {{&graphs[0], {0, 1, 5, 6}}, {&graphs[1], {2, 3, 4}}};
  const std::vector<int> perm = {1, 0};
  ModelConfig c;
  c.hidden_dim = 4;
  HyperParams hp;
  double worst = 0.0;
  for (uint64_t seed : {3u, 4u, 5u}) {
    ModelParams p = ModelParams::initialize(c, seed);
    ModelParams grads = objective_gradient(p, items, hp, perm, false);
    auto loss = [&](std::span<const double> x) {
      ModelParams q = p;
      q.unflatten(x);
      return objective_value(q, items, hp, perm, false, &p);
    };
    worst = std::max(worst, grad_check(loss, p.flatten(), grads.flatten(), 1e-5, seed).max_relative_error);
  }
  o.note("max rel err " + fmt("%.2e", worst));
  o.require(worst < 1e-4, "relative error < 1e-4");
  return o;
}

Outcome criterion_matching() {
  Outcome o;
  Rng rng(2024);
  int instances = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 6));
    const int m = 1 + static_cast<int>(uniform_index(rng, 6));
    const int k = 1 + static_cast<int>(uniform_index(rng, std::min(n, m)));
    Matrix a(n, 3), b(m, 3);
    for (int i = 0; i < a.size(); ++i) a.data()[i] = 2.0 * uniform01(rng) - 1.0;
    for (int i = 0; i < b.size(); ++i) b.data()[i] = 2.0 * uniform01(rng) - 1.0;
    const double diff = std::abs(match_subgraphs(a, b, k, MatchMode::kExact).score -
                                 brute_force_match(a, b, k).score);
    worst = std::max(worst, diff);
    ++instances;
  }
  o.note(std::to_string(instances) + " instances, max diff " + fmt("%.1e", worst));
  o.require(instances >= 100 && worst <= 1e-9, "exact score equals brute force");
  return o;
}

struct RunResult {
  TrainedModel model;
  double test_acc = 0.0;
  double seconds = 0.0;
};

RunResult train_run(const Dataset& ds, const HyperParams& hp) {
  const auto start = Clock::now();
  FitOptions fo;
  fo.threads = default_thread_count();
  FitResult fr = fit(ds, hp, fo);
  RunResult r{make_trained_model(ds, std::move(fr.params), hp), 0.0, 0.0};
  r.test_acc = accuracy(r.model, ds, ds.splits.test, fo.threads);
  r.seconds = seconds_since(start);
  return r;
}

std::string run_command(const std::string& cmd) {
  const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
  return rc == 0 ? "" : "exit " + std::to_string(rc) + ": " + cmd;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const int threads = default_thread_count();
  auto t = Clock::now();

  report(1, "formula exactness", criterion_formulas(), seconds_since(t));

  t = Clock::now();
  report(2, "total-loss gradient check", criterion_gradients(), seconds_since(t));

  t = Clock::now();
  report(3, "exact matcher equals brute-force oracle", criterion_matching(), seconds_since(t));

  // Criteria 4, 5 and 8 share one default run on 300 graphs.
  t = Clock::now();
  const Dataset ds = generate_ba3motif(300, 0);
  const HyperParams hp;
  RunResult main_run = train_run(ds, hp);
  {
    Outcome o;
    o.note("test acc " + fmt("%.3f", main_run.test_acc) + ", train time " +
           fmt("%.0fs", main_run.seconds));
    o.require(main_run.test_acc >= 0.95, "test accuracy >= 0.95");
    o.require(main_run.seconds <= 600.0, "runtime <= 10 min");
    report(4, "BA3-Motif classification", o, seconds_since(t));
  }

  t = Clock::now();
  const std::vector<Explainer> explainers = {make_retrieval_explainer(main_run.model),
                                             make_random_explainer(hp.seed),
                                             make_saliency_explainer(main_run.model.params)};
  BenchmarkOptions bo;
  bo.threads = threads;
  const MetricsReport bench = run_benchmark(ds, main_run.model, explainers, bo);
  {
    const ReportRow& rc = bench.rows[0];
    const ReportRow& rnd = bench.rows[1];
    const ReportRow& sal = bench.rows[2];
    Outcome o;
    o.note("Prec@5 retrieval " + fmt("%.3f", rc.precision_at_n) + " random " +
           fmt("%.3f", rnd.precision_at_n) + " saliency " + fmt("%.3f", sal.precision_at_n) +
           "; ACC-AUC retrieval " + fmt("%.3f", rc.acc_auc) + " random " + fmt("%.3f", rnd.acc_auc));
    o.require(rc.precision_at_n >= 2.0 * rnd.precision_at_n, "Prec@5 >= 2x random");
    o.require(rc.precision_at_n >= sal.precision_at_n, "Prec@5 >= saliency");
    o.require(rc.acc_auc > rnd.acc_auc, "ACC-AUC above random");
    report(5, "explanation quality vs. null", o, seconds_since(t));
  }

  t = Clock::now();
  {
    Outcome o;
    std::map<Variant, double> mean;
    for (uint64_t seed : {0u, 1u, 2u}) {
      HyperParams shp = hp;
      shp.seed = seed;
      for (Variant v : {Variant::kFull, Variant::kNoRetriever, Variant::kNoCausal}) {
        double acc = 0.0;
        if (v == Variant::kFull && seed == hp.seed) {
          acc = main_run.test_acc;
        } else {
          AblationOptions ao;
          ao.threads = threads;
          acc = ablate(ds, shp, v, ao).test_acc;
        }
        mean[v] += acc / 3.0;
      }
    }
    o.note("mean acc full " + fmt("%.3f", mean[Variant::kFull]) + " no_retriever " +
           fmt("%.3f", mean[Variant::kNoRetriever]) + " no_causal " +
           fmt("%.3f", mean[Variant::kNoCausal]));
    o.require(mean[Variant::kFull] >= mean[Variant::kNoRetriever], "full >= no_retriever");
    o.require(mean[Variant::kFull] >= mean[Variant::kNoCausal], "full >= no_causal");
    report(6, "ablation ordering", o, seconds_since(t));
  }

  t = Clock::now();
  {
    Outcome o;
    const Dataset mm = generate_multimotif(120, 2, 0);
    RunResult run = train_run(mm, hp);
    const std::vector<int>& ids = mm.splits.explain;
    const std::vector<Explanation> expls =
        explain_all(mm, ids, make_retrieval_explainer(run.model), threads);
    std::map<MotifKind, std::pair<double, int>> per_motif;
    for (size_t i = 0; i < ids.size(); ++i) {
      auto p = precision_at_n(expls[i], mm.graph(ids[i]), 5);
      auto& slot = per_motif[multimotif_kind(ids[i], 2)];
      slot.first += p.value_or(0.0);
      ++slot.second;
    }
    int best_class_count = 0;
    for (int c = 0; c < mm.num_classes; ++c) {
      int recovered = 0;
      for (MotifKind kind : multimotif_pool(c, 2)) {
        const auto& slot = per_motif[kind];
        const double mean = slot.second ? slot.first / slot.second : 0.0;
        o.note(std::string(motif_name(kind)) + " " + fmt("%.3f", mean));
        recovered += slot.second > 0 && mean >= 0.6;
      }
      best_class_count = std::max(best_class_count, recovered);
    }
    o.note("test acc " + fmt("%.3f", run.test_acc));
    o.require(best_class_count >= 2, "two motif types of one class with Prec@5 >= 0.6");
    report(7, "diverse explanations", o, seconds_since(t));
  }

  t = Clock::now();
  {
    Outcome o;
    for (const ReportRow& row : bench.rows) {
      o.require(row.acc_at_rho.back() == 1.0, "ACC@1.0 = 1 for " + row.explainer);
    }
    Rng rng(8);
    int monotone_violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const int m = 3 + static_cast<int>(uniform_index(rng, 28));
      Graph g;
      g.node_count = m;
      g.node_features = Matrix::Ones(m, 1);
      std::vector<bool> mask(m);
      for (int i = 0; i < m; ++i) {
        g.edges.push_back({i, (i + 1) % m});
        mask[i] = uniform01(rng) < 0.4;
      }
      mask[0] = true;
      g.gt_edge_mask = mask;
      Explanation e;
      e.edge_scores.resize(m);
      for (int i = 0; i < m; ++i) e.edge_scores(i) = uniform01(rng);
      double prev = 0.0;
      for (int n = 1; n <= m; ++n) {
        const double r = *recall_at_n(e, g, n);
        monotone_violations += r < prev;
        prev = r;
      }
    }
    o.require(monotone_violations == 0, "Recall@N monotone");
    int perm_violations = 0;
    for (int n = 2; n <= 40; ++n) {
      std::vector<BranchOutputs> batch(n);
      for (int i = 0; i < n; ++i) {
        batch[i].h_c = Vector::Constant(2, i);
        batch[i].h_t = Vector::Constant(2, 10.0 * i + uniform01(rng));
        batch[i].label = i % 3;
      }
      const IntervenedBatch ib = permute_trivial(batch, derive_seed(7, Stream::kPermute, n));
      std::vector<double> before, after;
      for (int i = 0; i < n; ++i) {
        perm_violations += ib.permutation[i] == i;
        before.push_back(batch[i].h_t(0));
        after.push_back(ib.h_t_hat[i](0));
      }
      std::sort(before.begin(), before.end());
      std::sort(after.begin(), after.end());
      perm_violations += before != after;
    }
    o.require(perm_violations == 0, "permutation multiset and derangement");
    report(8, "metric invariant suite", o, seconds_since(t));
  }

  t = Clock::now();
  {
    Outcome o;
#ifdef RCGNN_CLI_PATH
    const std::string cli = RCGNN_CLI_PATH;
    const fs::path root = fs::temp_directory_path() / "rcgnn_acceptance_cli";
    fs::remove_all(root);
    const std::vector<std::string> files = {"data.jsonl", "train_log.csv", "explanations.csv",
                                            "report.csv", "embeddings.csv"};
    std::vector<std::map<std::string, std::string>> outputs;
    for (const char* run : {"a", "b"}) {
      const fs::path dir = root / run;
      fs::create_directories(dir);
      const std::string d = dir.string() + "/";
      for (const std::string& cmd :
           {cli + " gen-data --kind ba3motif --n 90 --seed 3 --out " + d + "data.jsonl",
            cli + " train --data " + d + "data.jsonl --out " + d + "model.ckpt --log " + d +
                "train_log.csv --epochs 12 --warmup 6 --seed 3",
            cli + " explain --data " + d + "data.jsonl --checkpoint " + d + "model.ckpt --out " +
                d + "explanations.csv",
            cli + " eval --data " + d + "data.jsonl --checkpoint " + d + "model.ckpt --out " + d +
                "report.csv --embeddings " + d + "embeddings.csv"}) {
        const std::string err = run_command(cmd);
        if (!err.empty()) o.require(false, err);
      }
      std::map<std::string, std::string> contents;
      for (const std::string& f : files) contents[f] = slurp(dir / f);
      contents["model.ckpt"] = slurp(dir / "model.ckpt");
      outputs.push_back(std::move(contents));
    }
    for (const auto& [name, bytes] : outputs[0]) {
      o.require(!bytes.empty(), name + " written");
      o.require(bytes == outputs[1][name], name + " identical");
    }
    o.note(std::to_string(outputs[0].size()) + " artifacts compared");
    fs::remove_all(root);
#else
    o.require(false, "CLI not built");
#endif
    report(9, "pipeline reproducibility", o, seconds_since(t));
  }

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAILED" : "PASSED", failures);
  return failures ? 1 : 0;
}
