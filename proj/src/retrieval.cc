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

#include "rcgnn/retrieval.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rcgnn/error.h"

namespace rcgnn {

CandidateSet build_candidate_set(const Dataset& ds, const ModelParams& params, int class_id,
                                 int max_size, int64_t model_version) {
  CandidateSet set;
  set.class_id = class_id;
  set.model_version = model_version;
  std::vector<int> ids = ds.splits.train;
  std::sort(ids.begin(), ids.end());
  for (int id : ids) {
    if (static_cast<int>(set.entries.size()) >= max_size) break;
    const Graph& g = ds.graph(id);
    if (g.label != class_id) continue;
    ad::Tape t(false);
    ModelVars vars = bind(t, params, false);
    ad::Var states = route_node_states(t, vars, params.config, g, encode_nodes(t, vars, g));
    ad::Var hc = ad::concat_cols(t, ad::sum_rows(t, states),
                                 t.constant(Matrix::Zero(1, params.config.hidden_dim)));
    Vector probs =
        softmax(t.value(dense_forward(t, vars.causal_head, hc)).row(0).transpose());
    if (argmax(probs) != class_id) continue;
    set.entries.push_back({id, normalize_rows(t.value(states)), std::move(probs)});
  }
  if (set.entries.empty()) {
    throw EmptyCandidateSetError(class_id, "no correctly predicted training graph in class " +
                                               std::to_string(class_id));
  }
  return set;
}

const CandidateSet* CandidatePool::get(int class_id) const {
  if (class_id < 0 || class_id >= static_cast<int>(by_class.size())) return nullptr;
  return by_class[class_id] ? &*by_class[class_id] : nullptr;
}

CandidatePool build_candidate_pool(const Dataset& ds, const ModelParams& params, int max_size,
                                   int64_t model_version) {
  CandidatePool pool;
  pool.model_version = model_version;
  for (int c = 0; c < ds.num_classes; ++c) {
    try {
      pool.by_class.push_back(build_candidate_set(ds, params, c, max_size, model_version));
    } catch (const EmptyCandidateSetError&) {
      pool.by_class.push_back(std::nullopt);
    }
  }
  return pool;
}

int selection_size(int node_count, double ratio) {
  const int k = static_cast<int>(std::lround(ratio * node_count));
  return std::clamp(k, 1, std::max(1, node_count));
}

std::vector<int> top_k(const Vector& scores, int k) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores(a) > scores(b); });
  order.resize(std::min<size_t>(order.size(), std::max(k, 0)));
  return order;
}

Vector edge_scores_from_nodes(const Graph& g, const Vector& node_scores) {
  Vector out(g.edge_count());
  for (int k = 0; k < g.edge_count(); ++k) {
    out(k) = 0.5 * (node_scores(g.edges[k].u) + node_scores(g.edges[k].v));
  }
  return out;
}

Explanation explanation_from_node_scores(const Graph& g, Vector node_scores, double ratio) {
  Explanation e;
  e.graph_id = g.graph_id;
  e.ratio = ratio;
  e.edge_scores = edge_scores_from_nodes(g, node_scores);
  e.selected_nodes = top_k(node_scores, selection_size(g.node_count, ratio));
  std::sort(e.selected_nodes.begin(), e.selected_nodes.end());
  e.node_scores = std::move(node_scores);
  return e;
}

Explanation retrieve_explanation(const Graph& g, const Matrix& node_embeddings,
                                 const CandidateSet& cand, const RetrievalOptions& opts) {
  if (opts.ratio <= 0.0 || opts.ratio > 1.0) throw ParameterError("retrieve: ratio must be in (0,1]");
  if (node_embeddings.rows() != g.node_count) throw ShapeError("retrieve: embedding rows");
  const int k = selection_size(g.node_count, opts.ratio);

  Vector accumulated = Vector::Zero(g.node_count);
  int qualified = 0;
  double best_score = -1.0;
  MatchResult best;
  for (const CandidateEntry& entry : cand.entries) {
    if (entry.graph_id == opts.exclude_graph_id) continue;
    const int kc = std::min<int>(k, static_cast<int>(entry.embeddings.rows()));
    MatchResult match = match_subgraphs(node_embeddings, entry.embeddings, kc, opts.mode);
    if (match.score >= opts.threshold) {
      ++qualified;
      for (const NodePair& p : match.pairs) accumulated(p.query) += p.similarity;
    }
    if (match.score > best_score) {
      best_score = match.score;
      best = std::move(match);
    }
  }
  if (best_score < 0.0) {
    throw EmptyCandidateSetError(cand.class_id, "retrieve: candidate set has no usable entry");
  }
  if (qualified == 0) {
    for (const NodePair& p : best.pairs) accumulated(p.query) += p.similarity;
    qualified = 1;
  }
  return explanation_from_node_scores(g, accumulated / qualified, opts.ratio);
}

Explanation retrieve_explanation(const Graph& g, const ModelParams& params,
                                 const CandidateSet& cand, const RetrievalOptions& opts) {
  return retrieve_explanation(g, retrieval_embeddings(params, g).values, cand, opts);
}

}  // namespace rcgnn
