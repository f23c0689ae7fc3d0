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


#include "rcgnn/model.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "rcgnn/error.h"
#include "rcgnn/generators.h"
#include "rcgnn/rng.h"
#include "test_util.h"

namespace rcgnn {
namespace {

ModelConfig small_config(int d = 8) {
  ModelConfig c;
  c.feature_dim = d;
  c.hidden_dim = 6;
  c.num_layers = 2;
  c.num_classes = 3;
  return c;
}

// Random features make node states distinct, so equivariance checks are not
// satisfied trivially.
Graph featured(Graph g, uint64_t seed) {
  Rng rng(seed);
  for (int i = 0; i < g.node_features.size(); ++i) g.node_features.data()[i] = uniform01(rng);
  return g;
}

Graph relabel(const Graph& g, const std::vector<int>& pi) {
  Graph out = g;
  for (int i = 0; i < g.node_count; ++i) out.node_features.row(pi[i]) = g.node_features.row(i);
  for (Edge& e : out.edges) e = {pi[e.u], pi[e.v]};
  return out;
}

TEST(ModelTest, ShapesMatchConfig) {
  const ModelConfig c = small_config();
  ModelParams p = ModelParams::initialize(c, 0);
  size_t total = 0;
  for (const auto& [name, shape] : block_shapes(c)) total += shape.first * shape.second;
  EXPECT_EQ(p.parameter_count(), total);
  EXPECT_EQ(p.flatten().size(), total);
  EXPECT_TRUE(p.all_finite());
  EXPECT_EQ(p.weights.causal_head.weight.rows(), 2 * c.hidden_dim);
  EXPECT_EQ(p.weights.causal_head.weight.cols(), c.num_classes);
}

TEST(ModelTest, FlattenRoundTrip) {
  ModelParams p = ModelParams::initialize(small_config(), 3);
  ModelParams q = ModelParams::zeros(small_config());
  q.unflatten(p.flatten());
  EXPECT_EQ(q.flatten(), p.flatten());
}

TEST(ModelTest, InitializationIsSeeded) {
  EXPECT_EQ(ModelParams::initialize(small_config(), 5).flatten(),
            ModelParams::initialize(small_config(), 5).flatten());
  EXPECT_NE(ModelParams::initialize(small_config(), 5).flatten(),
            ModelParams::initialize(small_config(), 6).flatten());
}

TEST(EncodeTest, IsolatedNodeWithZeroWeightsIsZero) {
  ModelParams p = ModelParams::zeros(small_config());
  Graph g = testing::make_graph(1, {});
  NodeEmbeddings ne = encode(p, g);
  EXPECT_EQ(ne.values.rows(), 1);
  EXPECT_TRUE(ne.values.isZero());
  EXPECT_EQ(ne.layer, 2);
}

TEST(EncodeTest, PermutationEquivariance) {
  ModelParams p = ModelParams::initialize(small_config(), 1);
  Graph g = featured(generate_ba_graph(9, 2, 4), 8);
  std::vector<int> pi(g.node_count);
  std::iota(pi.begin(), pi.end(), 0);
  Rng rng(2);
  for (int i = g.node_count - 1; i > 0; --i) std::swap(pi[i], pi[uniform_index(rng, i + 1)]);
  Graph h = relabel(g, pi);
  Matrix a = encode(p, g).values;
  Matrix b = encode(p, h).values;
  for (int i = 0; i < g.node_count; ++i) EXPECT_LT((a.row(i) - b.row(pi[i])).norm(), 1e-12);
  EXPECT_LT((readout(encode(p, g)) - readout(encode(p, h))).norm(), 1e-9);
  EXPECT_LT((full_graph_probs(p, g) - full_graph_probs(p, h)).norm(), 1e-12);
}

TEST(EncodeTest, DisjointCopiesDoNotInteract) {
  ModelParams p = ModelParams::initialize(small_config(), 2);
  Graph g = featured(generate_ba_graph(7, 1, 3), 5);
  Graph twice = g;
  twice.node_count = 2 * g.node_count;
  twice.node_features.resize(twice.node_count, g.feature_dim());
  twice.node_features << g.node_features, g.node_features;
  for (const Edge& e : g.edges) twice.edges.push_back({e.u + g.node_count, e.v + g.node_count});
  twice.gt_edge_mask.reset();
  Matrix single = encode(p, g).values;
  Matrix both = encode(p, twice).values;
  EXPECT_LT((both.topRows(g.node_count) - single).norm(), 1e-12);
  EXPECT_LT((both.bottomRows(g.node_count) - single).norm(), 1e-12);
}

TEST(EncodeTest, DependsOnlyOnTwoHopNeighborhood) {
  ModelParams p = ModelParams::initialize(small_config(), 4);
  Graph g = featured(testing::path(7), 1);
  Matrix before = encode(p, g).values;
  g.node_features.row(6).setConstant(5.0);
  Matrix after = encode(p, g).values;
  EXPECT_LT((before.row(0) - after.row(0)).norm(), 1e-15);
  EXPECT_LT((before.row(3) - after.row(3)).norm(), 1e-15);
}

TEST(EncodeTest, FeatureWidthMismatchIsShapeError) {
  ModelParams p = ModelParams::initialize(small_config(8), 0);
  EXPECT_THROW(encode(p, testing::ring(4, 0, 5)), ShapeError);
}

TEST(ReadoutTest, SumsRows) {
  NodeEmbeddings zero{Matrix::Zero(4, 3), 2};
  EXPECT_TRUE(readout(zero).isZero());
  NodeEmbeddings ne{Matrix::Random(5, 3), 2};
  std::vector<int> one = {3};
  EXPECT_EQ(readout(ne, std::span<const int>(one)), ne.values.row(3).transpose());
  std::vector<int> none;
  EXPECT_THROW(readout(ne, std::span<const int>(none)), ParameterError);
}

TEST(ReadoutTest, AdditiveOverBipartition) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    NodeEmbeddings ne{Matrix::Random(10, 4), 2};
    std::vector<int> s;
    std::vector<int> rest;
    for (int i = 0; i < 10; ++i) (uniform01(rng) < 0.5 ? s : rest).push_back(i);
    if (s.empty() || rest.empty()) continue;
    Vector sum = readout(ne, std::span<const int>(s)) + readout(ne, std::span<const int>(rest));
    EXPECT_LT((readout(ne) - sum).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(ClassifyTest, ZeroHeadIsUniform) {
  Dense head{Matrix::Zero(4, 3), Matrix::Zero(1, 3)};
  Vector p = classify(head, Vector::Random(4));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(p(i), 1.0 / 3.0, 1e-15);
}

TEST(ClassifyTest, SoftmaxShiftInvariantAndNormalized) {
  Vector z(3);
  z << 0.3, -1.2, 2.0;
  Vector shifted = (z.array() + 17.0).matrix();
  EXPECT_LT((softmax(z) - softmax(shifted)).norm(), 1e-15);
  EXPECT_NEAR(softmax(z).sum(), 1.0, 1e-12);
  Dense head{Matrix::Random(2, 3), Matrix::Random(1, 3)};
  Dense moved = head;
  moved.bias.array() += 4.0;
  Vector e = Vector::Random(2);
  EXPECT_LT((classify(head, e) - classify(moved, e)).norm(), 1e-12);
}

TEST(ClassifyTest, LogTwoLogits) {
  Vector z(2);
  z << std::log(2.0), 0.0;
  Vector p = softmax(z);
  EXPECT_NEAR(p(0), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(p(1), 1.0 / 3.0, 1e-12);
}

TEST(RetrievalEmbeddingTest, RowsHaveUnitRms) {
  ModelParams p = ModelParams::initialize(small_config(), 7);
  Graph g = generate_ba_graph(10, 1, 2);
  NodeEmbeddings ne = retrieval_embeddings(p, g);
  EXPECT_EQ(ne.layer, 3);
  for (int i = 0; i < ne.values.rows(); ++i) {
    const double n = ne.values.row(i).norm();
    if (n > 0) EXPECT_NEAR(n, std::sqrt(6.0), 1e-12);
  }
  Matrix m = Matrix::Zero(2, 4);
  m(1, 2) = 0.5;
  Matrix out = normalize_rows(m);
  EXPECT_TRUE(out.row(0).isZero());
  EXPECT_NEAR(out(1, 2), 2.0, 1e-15);
}

}  // namespace
}  // namespace rcgnn
