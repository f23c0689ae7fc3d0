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

#ifndef RCGNN_RETRIEVAL_H_
#define RCGNN_RETRIEVAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rcgnn/graph.h"
#include "rcgnn/matching.h"
#include "rcgnn/model.h"

namespace rcgnn {

struct CandidateEntry {
  int graph_id = 0;
  Matrix embeddings;  // retrieval_embeddings() rows
  Vector probs;       // retrieval-free prediction when cached
};

// Training graphs of one class that the current model classifies correctly.
struct CandidateSet {
  int class_id = 0;
  std::vector<CandidateEntry> entries;
  int64_t model_version = 0;
};

// Up to `max_size` correctly-predicted training graphs of `class_id`, lowest
// graph ids first. Throws EmptyCandidateSetError when there are none.
CandidateSet build_candidate_set(const Dataset& ds, const ModelParams& params, int class_id,
                                 int max_size, int64_t model_version);

// One candidate set per class; classes without any correct prediction hold
// nullopt.
struct CandidatePool {
  std::vector<std::optional<CandidateSet>> by_class;
  int64_t model_version = 0;

  const CandidateSet* get(int class_id) const;
};

CandidatePool build_candidate_pool(const Dataset& ds, const ModelParams& params, int max_size,
                                   int64_t model_version);

// Ranked node and edge importance over one graph plus the selected node set
// that defines the causal subgraph.
struct Explanation {
  int graph_id = 0;
  Vector node_scores;
  Vector edge_scores;
  std::vector<int> selected_nodes;  // ascending
  double ratio = 0.0;
};

struct RetrievalOptions {
  double ratio = 0.3;
  double threshold = 0.4;
  MatchMode mode = MatchMode::kAuto;
  int exclude_graph_id = -1;  // skip this candidate (the query itself during training)
};

// max(1, round(ratio * node_count)).
int selection_size(int node_count, double ratio);

// Indices of the k largest scores, ties to the lower index.
std::vector<int> top_k(const Vector& scores, int k);

// Edge score = mean of its endpoint scores.
Vector edge_scores_from_nodes(const Graph& g, const Vector& node_scores);

// Explanation whose selected set is the top-K nodes of `node_scores`.
Explanation explanation_from_node_scores(const Graph& g, Vector node_scores, double ratio);

// Matches the query against every candidate; candidates whose normalized
// score reaches the threshold vote their pair similarities into the query's
// node scores, averaged over the qualified candidates. With no qualified
// candidate the best-scoring one is used alone.
Explanation retrieve_explanation(const Graph& g, const Matrix& node_embeddings,
                                 const CandidateSet& cand, const RetrievalOptions& opts);
Explanation retrieve_explanation(const Graph& g, const ModelParams& params,
                                 const CandidateSet& cand, const RetrievalOptions& opts);

}  // namespace rcgnn

#endif  // RCGNN_RETRIEVAL_H_
