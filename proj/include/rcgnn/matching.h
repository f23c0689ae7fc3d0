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

#ifndef RCGNN_MATCHING_H_
#define RCGNN_MATCHING_H_

#include <vector>

#include "rcgnn/graph.h"

namespace rcgnn {

// 1 / (1 + ||a - b||_2), in (0, 1].
double node_pair_similarity(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                            const Eigen::Ref<const Eigen::RowVectorXd>& b);

// Pairwise node similarities between the rows of two embedding matrices.
Matrix similarity_matrix(const Matrix& query, const Matrix& candidate);

struct NodePair {
  int query = 0;      // node of G
  int candidate = 0;  // node of G'
  double similarity = 0.0;
};

struct MatchResult {
  std::vector<NodePair> pairs;  // sorted by query node
  double score = 0.0;           // total similarity / K, in (0, 1]
};

enum class MatchMode {
  kAuto,    // exact when both graphs have <= kExactMatchLimit nodes
  kExact,   // optimal K-cardinality assignment
  kGreedy,  // similarity-sorted greedy
};

inline constexpr int kExactMatchLimit = 50;
inline constexpr int kBruteForceLimit = 8;

// One-to-one assignment of K query nodes to K candidate nodes maximizing the
// total pair similarity. Throws ParameterError when K is 0 or exceeds either
// node count.
MatchResult match_subgraphs(const Matrix& query_emb, const Matrix& candidate_emb, int k,
                            MatchMode mode = MatchMode::kAuto);
MatchResult match_similarity(const Matrix& similarity, int k, MatchMode mode = MatchMode::kAuto);

// Exhaustive search over K-subsets and bijections; both graphs must have at
// most kBruteForceLimit nodes.
MatchResult brute_force_match(const Matrix& query_emb, const Matrix& candidate_emb, int k);

}  // namespace rcgnn

#endif  // RCGNN_MATCHING_H_
