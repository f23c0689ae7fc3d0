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

#ifndef RCGNN_EXPLAINERS_H_
#define RCGNN_EXPLAINERS_H_

#include <cstdint>
#include <functional>
#include <string>

#include "rcgnn/graph.h"
#include "rcgnn/model.h"
#include "rcgnn/retrieval.h"
#include "rcgnn/trainer.h"

namespace rcgnn {

struct Explainer {
  std::string name;
  std::function<Explanation(const Graph&)> explain;
};

// Independent U(0,1) node and edge scores drawn from `seed`.
Explanation random_explanation(const Graph& g, uint64_t seed, double ratio = 0.3);

// d(predicted retrieval-free logit) / d(edge weight), with every edge weight at 1.
Vector saliency_edge_gradients(const ModelParams& params, const Graph& g);

// Edge score |gradient|; node score is the max over incident edges.
Explanation saliency_explanation(const ModelParams& params, const Graph& g, double ratio = 0.3);

// The random explainer seeds each graph from (seed, graph_id) so results do
// not depend on evaluation order.
Explainer make_random_explainer(uint64_t seed, double ratio = 0.3);
Explainer make_saliency_explainer(const ModelParams& params, double ratio = 0.3);
// Holds a reference; `model` must outlive the explainer.
Explainer make_retrieval_explainer(const TrainedModel& model);

}  // namespace rcgnn

#endif  // RCGNN_EXPLAINERS_H_
