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

#include <gtest/gtest.h>

#include "rcgnn/error.h"
#include "rcgnn/generators.h"
#include "rcgnn/metrics.h"
#include "rcgnn/rng.h"
#include "test_util.h"

namespace rcgnn {
namespace {

// Zero weights with a head bias that always predicts `cls`.
ModelParams constant_predictor(int cls) {
  ModelConfig c;
  c.hidden_dim = 4;
  ModelParams p = ModelParams::zeros(c);
  p.weights.causal_head.bias(0, cls) = 5.0;
  return p;
}

// A base path of `base` nodes with a 5-ring attached to its last node. Base
// rows are scattered far apart; ring rows all sit on one shared point.
struct RingInstance {
  Graph graph;
  Matrix embeddings;
};

RingInstance ring_instance(int base, uint64_t seed) {
  Graph g = testing::path(base);
  const int n = base + 5;
  g.node_count = n;
  g.node_features = Matrix::Ones(n, 8);
  std::vector<bool> mask(g.edges.size(), false);
  for (int i = 0; i < 5; ++i) {
    g.edges.push_back({base + i, base + (i + 1) % 5});
    mask.push_back(true);
  }
  g.edges.push_back({base - 1, base});
  mask.push_back(false);
  g.gt_edge_mask = mask;
  Rng rng(seed);
  Matrix emb(n, 6);
  for (int i = 0; i < base; ++i) {
    for (int j = 0; j < 6; ++j) emb(i, j) = 20.0 * uniform01(rng) - 10.0;
  }
  for (int i = base; i < n; ++i) emb.row(i).setConstant(0.5);
  return {g, emb};
}

TEST(SelectionTest, SizeAndTopK) {
  EXPECT_EQ(selection_size(17, 0.3), 5);
  EXPECT_EQ(selection_size(3, 0.1), 1);
  EXPECT_EQ(selection_size(10, 1.0), 10);
  Vector s(5);
  s << 0.2, 0.9, 0.2, 0.9, 0.1;
  EXPECT_EQ(top_k(s, 3), (std::vector<int>{1, 3, 0}));
}

TEST(SelectionTest, EdgeScoresAreEndpointMeans) {
  Graph g = testing::path(3);
  Vector s(3);
  s << 1.0, 0.0, 0.5;
  Vector e = edge_scores_from_nodes(g, s);
  EXPECT_DOUBLE_EQ(e(0), 0.5);
  EXPECT_DOUBLE_EQ(e(1), 0.25);
}

TEST(CandidateSetTest, LowestIdsAndTruncation) {
  Dataset ds = generate_ba3motif(300, 1);
  ModelParams p = constant_predictor(1);
  CandidateSet set = build_candidate_set(ds, p, 1, 50, 3);
  ASSERT_EQ(set.entries.size(), 50u);
  std::vector<int> expected;
  for (int id : ds.splits.train) {
    if (ds.graph(id).label == 1) expected.push_back(id);
  }
  std::sort(expected.begin(), expected.end());
  expected.resize(50);
  for (size_t i = 0; i < 50; ++i) {
    EXPECT_EQ(set.entries[i].graph_id, expected[i]);
    EXPECT_EQ(argmax(set.entries[i].probs), 1);
    EXPECT_EQ(set.entries[i].embeddings.rows(), ds.graph(expected[i]).node_count);
  }
  EXPECT_EQ(set.model_version, 3);
}

TEST(CandidateSetTest, ClassesNeverPredictedAreEmpty) {
  Dataset ds = generate_ba3motif(60, 2);
  ModelParams p = constant_predictor(0);
  EXPECT_THROW(build_candidate_set(ds, p, 2, 64, 0), EmptyCandidateSetError);
  CandidatePool pool = build_candidate_pool(ds, p, 64, 4);
  EXPECT_NE(pool.get(0), nullptr);
  EXPECT_EQ(pool.get(1), nullptr);
  EXPECT_EQ(pool.get(2), nullptr);
  EXPECT_GT(build_candidate_pool(ds, p, 64, 5).model_version, pool.model_version);
}

TEST(RetrieveTest, SelfMatchScoresOneOnMatchedNodes) {
  RingInstance inst = ring_instance(12, 3);
  CandidateSet cand;
  cand.entries.push_back({99, inst.embeddings, Vector()});
  RetrievalOptions opts;
  Explanation e = retrieve_explanation(inst.graph, inst.embeddings, cand, opts);
  const int k = selection_size(inst.graph.node_count, opts.ratio);
  EXPECT_EQ(static_cast<int>(e.selected_nodes.size()), k);
  int ones = 0;
  for (int i = 0; i < e.node_scores.size(); ++i) {
    if (std::abs(e.node_scores(i) - 1.0) < 1e-12) {
      ++ones;
    } else {
      EXPECT_EQ(e.node_scores(i), 0.0);
    }
  }
  EXPECT_EQ(ones, k);
  for (int v : e.selected_nodes) EXPECT_NEAR(e.node_scores(v), 1.0, 1e-12);
  EXPECT_TRUE(std::is_sorted(e.selected_nodes.begin(), e.selected_nodes.end()));
  EXPECT_EQ(e.edge_scores.size(), inst.graph.edge_count());
}

TEST(RetrieveTest, DistinctiveRingIsRecovered) {
  RingInstance query = ring_instance(12, 10);
  CandidateSet cand;
  for (uint64_t s = 0; s < 4; ++s) {
    RingInstance c = ring_instance(10 + static_cast<int>(s), 20 + s);
    cand.entries.push_back({static_cast<int>(s), c.embeddings, Vector()});
  }
  RetrievalOptions opts;
  Explanation e = retrieve_explanation(query.graph, query.embeddings, cand, opts);
  EXPECT_EQ(e.selected_nodes, (std::vector<int>{12, 13, 14, 15, 16}));
  EXPECT_DOUBLE_EQ(*precision_at_n(e, query.graph, 5), 1.0);
}

TEST(RetrieveTest, UnreachableThresholdFallsBackToBestCandidate) {
  RingInstance query = ring_instance(8, 1);
  RingInstance other = ring_instance(9, 2);
  other.embeddings.array() += 0.01;
  CandidateSet cand;
  cand.entries.push_back({0, other.embeddings, Vector()});
  RetrievalOptions opts;
  opts.threshold = 1.0;
  Explanation e = retrieve_explanation(query.graph, query.embeddings, cand, opts);
  EXPECT_EQ(e.selected_nodes.size(), 4u);
  EXPECT_GT(e.node_scores.maxCoeff(), 0.0);
  EXPECT_TRUE(e.node_scores.allFinite());
}

TEST(RetrieveTest, ExcludedCandidateIsSkipped) {
  RingInstance query = ring_instance(8, 1);
  CandidateSet cand;
  cand.entries.push_back({5, query.embeddings, Vector()});
  RetrievalOptions opts;
  opts.exclude_graph_id = 5;
  EXPECT_THROW(retrieve_explanation(query.graph, query.embeddings, cand, opts),
               EmptyCandidateSetError);
  opts.ratio = 0.0;
  EXPECT_THROW(retrieve_explanation(query.graph, query.embeddings, cand, opts), ParameterError);
}

TEST(RetrieveTest, DeterministicWithModel) {
  Dataset ds = generate_ba3motif(60, 3);
  ModelConfig c;
  c.hidden_dim = 6;
  ModelParams p = ModelParams::initialize(c, 2);
  CandidatePool pool = build_candidate_pool(ds, p, 8, 0);
  for (int cls = 0; cls < 3; ++cls) {
    const CandidateSet* set = pool.get(cls);
    if (!set) continue;
    const Graph& g = ds.graph(ds.splits.test.front());
    Explanation a = retrieve_explanation(g, p, *set, {});
    Explanation b = retrieve_explanation(g, p, *set, {});
    EXPECT_EQ(a.node_scores, b.node_scores);
    EXPECT_EQ(a.selected_nodes, b.selected_nodes);
  }
}

}  // namespace
}  // namespace rcgnn
