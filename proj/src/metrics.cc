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

#include "rcgnn/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rcgnn/error.h"
#include "rcgnn/parallel.h"

namespace rcgnn {
namespace {

struct Overlap {
  int hits = 0;
  int top = 0;
  int positives = 0;
};

std::optional<Overlap> overlap(const Explanation& expl, const Graph& g, int n) {
  if (n < 1) throw ParameterError("top-N metrics need N >= 1");
  if (!g.gt_edge_mask) return std::nullopt;
  if (expl.edge_scores.size() != g.edge_count()) throw ShapeError("edge score count differs");
  const std::vector<int> ranked = rank_edges(expl.edge_scores);
  Overlap o;
  o.top = std::min(n, g.edge_count());
  o.positives = g.gt_positive_count();
  for (int r = 0; r < o.top; ++r) o.hits += (*g.gt_edge_mask)[ranked[r]];
  return o;
}

}  // namespace

std::vector<int> rank_edges(const Vector& edge_scores) {
  std::vector<int> order(edge_scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return edge_scores(a) > edge_scores(b); });
  return order;
}

std::optional<double> recall_at_n(const Explanation& expl, const Graph& g, int n) {
  auto o = overlap(expl, g, n);
  if (!o || o->positives == 0) return std::nullopt;
  return static_cast<double>(o->hits) / o->positives;
}

std::optional<double> precision_at_n(const Explanation& expl, const Graph& g, int n) {
  auto o = overlap(expl, g, n);
  if (!o || o->top == 0) return std::nullopt;
  return static_cast<double>(o->hits) / o->top;
}

RankingMetrics ranking_metrics(std::span<const Graph* const> graphs,
                               std::span<const Explanation> expls, int n) {
  if (graphs.size() != expls.size()) throw ShapeError("ranking_metrics: size mismatch");
  RankingMetrics m;
  double recall = 0.0, precision = 0.0;
  for (size_t i = 0; i < graphs.size(); ++i) {
    auto r = recall_at_n(expls[i], *graphs[i], n);
    auto p = precision_at_n(expls[i], *graphs[i], n);
    if (!r || !p) {
      ++m.skipped;
      continue;
    }
    recall += *r;
    precision += *p;
    ++m.used;
  }
  if (m.used > 0) {
    m.recall = recall / m.used;
    m.precision = precision / m.used;
  }
  return m;
}

int fidelity_size(int node_count, double rho) {
  // The epsilon keeps 0.1 * 30 from rounding up to 4.
  const int k = static_cast<int>(std::ceil(rho * node_count - 1e-9));
  return std::clamp(k, 1, std::max(1, node_count));
}

bool recovers_prediction(const ModelParams& params, const Graph& g, const Explanation& expl,
                         double rho) {
  const int target = predict_full(params, g);
  const std::vector<int> nodes = top_k(expl.node_scores, fidelity_size(g.node_count, rho));
  const InducedSubgraph sub = induced_subgraph(g, nodes);
  return predict_full(params, sub.graph) == target;
}

double acc_at_rho(const ModelParams& params, std::span<const Graph* const> graphs,
                  std::span<const Explanation> expls, double rho, int threads) {
  if (graphs.size() != expls.size()) throw ShapeError("acc_at_rho: size mismatch");
  if (graphs.empty()) return 0.0;
  std::vector<int> hit(graphs.size(), 0);
  parallel_for(graphs.size(), threads,
               [&](size_t i) { hit[i] = recovers_prediction(params, *graphs[i], expls[i], rho); });
  return static_cast<double>(std::accumulate(hit.begin(), hit.end(), 0)) /
         static_cast<double>(graphs.size());
}

double acc_auc(std::span<const double> acc_curve) {
  if (acc_curve.empty()) return 0.0;
  return std::accumulate(acc_curve.begin(), acc_curve.end(), 0.0) /
         static_cast<double>(acc_curve.size());
}

std::array<double, 10> acc_curve(const ModelParams& params, std::span<const Graph* const> graphs,
                                 std::span<const Explanation> expls, int threads) {
  std::array<double, 10> curve{};
  for (size_t r = 0; r < kRhoGrid.size(); ++r) {
    curve[r] = acc_at_rho(params, graphs, expls, kRhoGrid[r], threads);
  }
  return curve;
}

}  // namespace rcgnn
