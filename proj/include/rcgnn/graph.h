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

#ifndef RCGNN_GRAPH_H_
#define RCGNN_GRAPH_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rcgnn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected attributed graph with a class label and, for synthetic data, a
// ground-truth explanation mask over its edges.
struct Graph {
  int graph_id = 0;
  int node_count = 0;
  std::vector<Edge> edges;
  Matrix node_features;  // node_count x d
  int label = 0;
  // One entry per edge; true marks an edge of the planted motif.
  std::optional<std::vector<bool>> gt_edge_mask;

  int edge_count() const { return static_cast<int>(edges.size()); }
  int feature_dim() const { return static_cast<int>(node_features.cols()); }
  int gt_positive_count() const;

  friend bool operator==(const Graph&, const Graph&) = default;
};

// Throws ParameterError when an invariant of Graph is violated.
void validate(const Graph& g);

// Neighbor lists, sorted ascending.
std::vector<std::vector<int>> adjacency_lists(const Graph& g);

bool is_connected(int node_count, std::span<const Edge> edges);

struct InducedSubgraph {
  Graph graph;
  std::vector<int> node_map;  // compact index -> original node index
  std::vector<int> edge_map;  // compact edge index -> original edge index
};

// Subgraph induced on `nodes` (any order, duplicates ignored). Nodes are
// compacted in ascending original order. Throws on an empty node set.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> nodes);

// Ascending list of the nodes not in `nodes`.
std::vector<int> complement_nodes(int node_count, std::span<const int> nodes);

struct Splits {
  std::vector<int> train;
  std::vector<int> val;
  std::vector<int> test;
  std::vector<int> explain;

  friend bool operator==(const Splits&, const Splits&) = default;
};

struct Dataset {
  std::vector<Graph> graphs;
  int num_classes = 0;
  Splits splits;

  // Graphs are stored so that graphs[i].graph_id == i.
  const Graph& graph(int graph_id) const { return graphs.at(graph_id); }
  int feature_dim() const { return graphs.empty() ? 0 : graphs.front().feature_dim(); }
  std::vector<const Graph*> subset(std::span<const int> ids) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Checks label range, split disjointness and coverage, explain ⊆ test, and
// every graph invariant. Throws ParameterError.
void validate(const Dataset& ds);

// 70/10/20 train/val/test over a seeded shuffle of ids; explain = test.
Splits make_splits(int num_graphs, uint64_t seed);

}  // namespace rcgnn

#endif  // RCGNN_GRAPH_H_
