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

#ifndef RCGNN_METRICS_H_
#define RCGNN_METRICS_H_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "rcgnn/graph.h"
#include "rcgnn/model.h"
#include "rcgnn/retrieval.h"

namespace rcgnn {

inline constexpr std::array<double, 10> kRhoGrid = {0.1, 0.2, 0.3, 0.4, 0.5,
                                                    0.6, 0.7, 0.8, 0.9, 1.0};

// Edge indices ranked by score, descending, ties to the lower index.
std::vector<int> rank_edges(const Vector& edge_scores);

// |top-N ∩ gt| / |gt| and |top-N ∩ gt| / |top-N|; nullopt when the graph has
// no gt mask (recall also when the mask is empty). Throws for N < 1.
std::optional<double> recall_at_n(const Explanation& expl, const Graph& g, int n);
std::optional<double> precision_at_n(const Explanation& expl, const Graph& g, int n);

struct RankingMetrics {
  double recall = 0.0;
  double precision = 0.0;
  int used = 0;
  int skipped = 0;  // graphs without a usable gt mask
};

RankingMetrics ranking_metrics(std::span<const Graph* const> graphs,
                               std::span<const Explanation> expls, int n);

// max(1, ceil(rho * node_count)).
int fidelity_size(int node_count, double rho);

// True when the model's retrieval-free prediction on the subgraph induced by
// the top-ceil(rho*n) nodes equals its prediction on the whole graph.
bool recovers_prediction(const ModelParams& params, const Graph& g, const Explanation& expl,
                         double rho);

double acc_at_rho(const ModelParams& params, std::span<const Graph* const> graphs,
                  std::span<const Explanation> expls, double rho, int threads = 1);

// Mean of ACC@rho over kRhoGrid; equals the rectangle-rule area on the unit
// interval.
double acc_auc(std::span<const double> acc_curve);
std::array<double, 10> acc_curve(const ModelParams& params, std::span<const Graph* const> graphs,
                                 std::span<const Explanation> expls, int threads = 1);

}  // namespace rcgnn

#endif  // RCGNN_METRICS_H_
