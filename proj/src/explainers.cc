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

#include "rcgnn/explainers.h"

#include <algorithm>
#include <cmath>

#include "rcgnn/autodiff.h"
#include "rcgnn/rng.h"

namespace rcgnn {

Explanation random_explanation(const Graph& g, uint64_t seed, double ratio) {
  Rng rng(seed);
  Vector nodes(g.node_count);
  for (int i = 0; i < g.node_count; ++i) nodes(i) = uniform01(rng);
  Explanation e = explanation_from_node_scores(g, std::move(nodes), ratio);
  for (int k = 0; k < g.edge_count(); ++k) e.edge_scores(k) = uniform01(rng);
  return e;
}

Vector saliency_edge_gradients(const ModelParams& params, const Graph& g) {
  if (g.edge_count() == 0) return Vector();
  ad::Tape t;
  ModelVars vars = bind(t, params, false);
  ad::Var w = t.parameter(Matrix::Ones(1, g.edge_count()));
  ad::Var emb = encode_nodes(t, vars, g, w);
  ad::Var logits = full_graph_logits(t, vars, params.config, g, emb, w);
  const Matrix& l = t.value(logits);
  Eigen::Index cls = 0;
  l.row(0).maxCoeff(&cls);
  t.backward(ad::pick(t, logits, 0, static_cast<int>(cls)));
  return t.grad_or_zero(w).row(0).transpose();
}

Explanation saliency_explanation(const ModelParams& params, const Graph& g, double ratio) {
  const Vector grad = saliency_edge_gradients(params, g);
  Vector edge = grad.cwiseAbs();
  Vector nodes = Vector::Zero(g.node_count);
  for (int k = 0; k < g.edge_count(); ++k) {
    nodes(g.edges[k].u) = std::max(nodes(g.edges[k].u), edge(k));
    nodes(g.edges[k].v) = std::max(nodes(g.edges[k].v), edge(k));
  }
  Explanation e = explanation_from_node_scores(g, std::move(nodes), ratio);
  e.edge_scores = std::move(edge);
  return e;
}

Explainer make_random_explainer(uint64_t seed, double ratio) {
  return {"random", [seed, ratio](const Graph& g) {
            return random_explanation(
                g, derive_seed(seed, Stream::kRandomExplainer, static_cast<uint64_t>(g.graph_id)),
                ratio);
          }};
}

Explainer make_saliency_explainer(const ModelParams& params, double ratio) {
  return {"saliency",
          [&params, ratio](const Graph& g) { return saliency_explanation(params, g, ratio); }};
}

Explainer make_retrieval_explainer(const TrainedModel& model) {
  return {"retrieval", [&model](const Graph& g) { return explain_graph(model, g); }};
}

}  // namespace rcgnn
