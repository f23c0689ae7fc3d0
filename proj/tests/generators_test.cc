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


#include "rcgnn/generators.h"

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "rcgnn/error.h"

namespace rcgnn {
namespace {

// Positive edges relabeled onto 0..k-1; checks they span one connected piece.
bool gt_edges_connected(const Graph& g, int* node_count, int* edge_count) {
  std::map<int, int> ids;
  std::vector<Edge> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!(*g.gt_edge_mask)[e]) continue;
    const Edge& x = g.edges[e];
    const int a = ids.emplace(x.u, static_cast<int>(ids.size())).first->second;
    const int b = ids.emplace(x.v, static_cast<int>(ids.size())).first->second;
    edges.push_back({a, b});
  }
  *node_count = static_cast<int>(ids.size());
  *edge_count = static_cast<int>(edges.size());
  return is_connected(*node_count, edges);
}

TEST(MotifSpecTest, CanonicalShapes) {
  const std::map<MotifKind, std::pair<int, int>> expected = {
      {MotifKind::kHouse, {5, 6}},  {MotifKind::kCycle, {5, 5}},   {MotifKind::kGrid, {9, 12}},
      {MotifKind::kCycle6, {6, 6}}, {MotifKind::kWheel, {6, 10}},  {MotifKind::kLadder, {8, 10}},
      {MotifKind::kK4, {4, 6}},     {MotifKind::kDiamond, {4, 5}}, {MotifKind::kBowtie, {5, 6}},
  };
  for (const auto& [kind, shape] : expected) {
    MotifSpec m = motif_spec(kind);
    EXPECT_EQ(m.node_count, shape.first) << motif_name(kind);
    EXPECT_EQ(static_cast<int>(m.edges.size()), shape.second) << motif_name(kind);
    EXPECT_TRUE(is_connected(m.node_count, m.edges)) << motif_name(kind);
  }
  const MotifSpec house = motif_spec(MotifKind::kHouse);
  EXPECT_EQ(house.edges, (std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 2}, {4, 3}}));
}

TEST(BaGraphTest, TreeWhenAttachmentIsOne) {
  for (uint64_t seed : {0u, 1u, 2u}) {
    Graph g = generate_ba_graph(3, 1, seed);
    EXPECT_EQ(g.node_count, 3);
    EXPECT_EQ(g.edge_count(), 2);
    EXPECT_TRUE(is_connected(g.node_count, g.edges));
  }
  Graph g = generate_ba_graph(22, 1, 7);
  EXPECT_EQ(g.node_count, 22);
  EXPECT_EQ(g.edge_count(), 21);
  EXPECT_TRUE(is_connected(g.node_count, g.edges));
  EXPECT_EQ(g.gt_positive_count(), 0);
  EXPECT_NO_THROW(validate(g));
}

TEST(BaGraphTest, DeterministicAndValid) {
  Graph a = generate_ba_graph(10, 2, 3);
  Graph b = generate_ba_graph(10, 2, 3);
  EXPECT_EQ(a, b);
  EXPECT_NO_THROW(validate(a));
  EXPECT_TRUE(is_connected(a.node_count, a.edges));
  EXPECT_EQ(a.edge_count(), 2 * (10 - 2));
}

TEST(BaGraphTest, RejectsTooFewNodes) {
  EXPECT_THROW(generate_ba_graph(2, 2, 0), ParameterError);
  EXPECT_THROW(generate_ba_graph(5, 0, 0), ParameterError);
}

TEST(AttachMotifTest, NodeAndPositiveEdgeCounts) {
  Graph base = generate_ba_graph(10, 1, 11);
  const std::vector<std::pair<MotifKind, std::pair<int, int>>> cases = {
      {MotifKind::kHouse, {15, 6}}, {MotifKind::kCycle, {15, 5}}, {MotifKind::kGrid, {19, 12}}};
  for (const auto& [kind, counts] : cases) {
    MotifSpec m = motif_spec(kind);
    Graph g = attach_motif(base, m, 4);
    EXPECT_EQ(g.node_count, counts.first);
    EXPECT_EQ(g.gt_positive_count(), counts.second);
    EXPECT_EQ(g.edge_count(), base.edge_count() + static_cast<int>(m.edges.size()) + 1);
    EXPECT_EQ(g.label, static_cast<int>(kind));
    EXPECT_TRUE(is_connected(g.node_count, g.edges));
    EXPECT_FALSE(g.gt_edge_mask->back());  // bridge
    EXPECT_NO_THROW(validate(g));
  }
}

TEST(Ba3MotifTest, BalancedAndSplit) {
  Dataset ds = generate_ba3motif(300, 1);
  EXPECT_NO_THROW(validate(ds));
  EXPECT_EQ(ds.num_classes, 3);
  std::map<int, int> hist;
  for (const Graph& g : ds.graphs) ++hist[g.label];
  EXPECT_EQ(hist, (std::map<int, int>{{0, 100}, {1, 100}, {2, 100}}));
  EXPECT_EQ(ds.splits.explain, ds.splits.test);
  EXPECT_EQ(ds.splits.train.size(), 210u);
}

TEST(Ba3MotifTest, BalanceWithinOneForUnevenCounts) {
  Dataset ds = generate_ba3motif(31, 2);
  std::map<int, int> hist;
  for (const Graph& g : ds.graphs) ++hist[g.label];
  for (const auto& [label, count] : hist) {
    EXPECT_LE(std::abs(count - 31 / 3), 1) << label;
  }
}

TEST(Ba3MotifTest, GraphsAreConnectedWithConnectedMotif) {
  Dataset ds = generate_ba3motif(90, 3);
  for (const Graph& g : ds.graphs) {
    EXPECT_TRUE(is_connected(g.node_count, g.edges));
    int nodes = 0;
    int edges = 0;
    EXPECT_TRUE(gt_edges_connected(g, &nodes, &edges));
    const MotifSpec m = motif_spec(static_cast<MotifKind>(g.label));
    EXPECT_EQ(nodes, m.node_count);
    EXPECT_EQ(edges, static_cast<int>(m.edges.size()));
    EXPECT_GE(g.node_count - m.node_count, 12);
    EXPECT_LE(g.node_count - m.node_count, 20);
    EXPECT_TRUE((g.node_features.array() == 1.0).all());
    EXPECT_EQ(g.feature_dim(), 8);
  }
}

TEST(Ba3MotifTest, Deterministic) {
  EXPECT_EQ(generate_ba3motif(60, 9), generate_ba3motif(60, 9));
  EXPECT_NE(generate_ba3motif(60, 9), generate_ba3motif(60, 10));
}

TEST(Ba3MotifTest, FullScaleLabels) {
  Dataset ds = generate_ba3motif(3000, 0);
  EXPECT_EQ(ds.graphs.size(), 3000u);
  std::set<int> labels;
  for (const Graph& g : ds.graphs) labels.insert(g.label);
  EXPECT_EQ(labels.size(), 3u);
}

TEST(MultiMotifTest, EveryClassUsesSeveralMotifs) {
  Dataset ds = generate_multimotif(120, 2, 4);
  EXPECT_NO_THROW(validate(ds));
  std::map<int, std::set<int>> edge_counts;
  for (const Graph& g : ds.graphs) edge_counts[g.label].insert(g.gt_positive_count());
  for (int c = 0; c < 3; ++c) EXPECT_GE(edge_counts[c].size(), 2u) << c;
}

TEST(MultiMotifTest, HouseAndCyclePoolGivesFiveOrSixPositives) {
  EXPECT_EQ(multimotif_pool(0, 2), (std::vector<MotifKind>{MotifKind::kHouse, MotifKind::kCycle}));
  Dataset ds = generate_multimotif(60, 2, 5);
  for (const Graph& g : ds.graphs) {
    if (g.label != 0) continue;
    const int count = g.gt_positive_count();
    EXPECT_TRUE(count == 5 || count == 6) << count;
    EXPECT_EQ(count, static_cast<int>(motif_spec(multimotif_kind(g.graph_id, 2)).edges.size()));
  }
}

TEST(MultiMotifTest, DeterministicAndChecked) {
  EXPECT_EQ(generate_multimotif(30, 3, 1), generate_multimotif(30, 3, 1));
  EXPECT_THROW(generate_multimotif(30, 1, 1), ParameterError);
  EXPECT_THROW(generate_multimotif(2, 2, 1), ParameterError);
}

}  // namespace
}  // namespace rcgnn
