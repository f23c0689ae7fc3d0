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

#include "rcgnn/graph.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "rcgnn/error.h"
#include "rcgnn/rng.h"

namespace rcgnn {

int Graph::gt_positive_count() const {
  if (!gt_edge_mask) return 0;
  return static_cast<int>(std::count(gt_edge_mask->begin(), gt_edge_mask->end(), true));
}

void validate(const Graph& g) {
  const std::string where = "graph " + std::to_string(g.graph_id) + ": ";
  if (g.node_count < 0) throw ParameterError(where + "negative node count");
  if (g.node_features.rows() != g.node_count) {
    throw ParameterError(where + "feature rows " + std::to_string(g.node_features.rows()) +
                         " != node count " + std::to_string(g.node_count));
  }
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges) {
    if (e.u < 0 || e.u >= g.node_count || e.v < 0 || e.v >= g.node_count) {
      throw ParameterError(where + "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") out of range");
    }
    if (e.u == e.v) throw ParameterError(where + "self-loop on node " + std::to_string(e.u));
    if (!seen.insert(std::minmax(e.u, e.v)).second) {
      throw ParameterError(where + "duplicate edge (" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + ")");
    }
  }
  if (g.gt_edge_mask && g.gt_edge_mask->size() != g.edges.size()) {
    throw ParameterError(where + "gt mask length differs from edge count");
  }
}

std::vector<std::vector<int>> adjacency_lists(const Graph& g) {
  std::vector<std::vector<int>> adj(g.node_count);
  for (const Edge& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

bool is_connected(int node_count, std::span<const Edge> edges) {
  if (node_count <= 1) return true;
  std::vector<int> parent(node_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = node_count;
  for (const Edge& e : edges) {
    int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> nodes) {
  if (nodes.empty()) throw ParameterError("induced_subgraph: empty node set");
  std::vector<int> compact(g.node_count, -1);
  std::vector<int> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.front() < 0 || sorted.back() >= g.node_count) {
    throw ParameterError("induced_subgraph: node index out of range");
  }
  InducedSubgraph out;
  out.node_map = sorted;
  for (size_t i = 0; i < sorted.size(); ++i) compact[sorted[i]] = static_cast<int>(i);

  Graph& sub = out.graph;
  sub.graph_id = g.graph_id;
  sub.label = g.label;
  sub.node_count = static_cast<int>(sorted.size());
  sub.node_features.resize(sub.node_count, g.node_features.cols());
  for (int i = 0; i < sub.node_count; ++i) sub.node_features.row(i) = g.node_features.row(sorted[i]);
  if (g.gt_edge_mask) sub.gt_edge_mask.emplace();
  for (int k = 0; k < g.edge_count(); ++k) {
    const Edge& e = g.edges[k];
    if (compact[e.u] < 0 || compact[e.v] < 0) continue;
    sub.edges.push_back({compact[e.u], compact[e.v]});
    out.edge_map.push_back(k);
    if (g.gt_edge_mask) sub.gt_edge_mask->push_back((*g.gt_edge_mask)[k]);
  }
  return out;
}

std::vector<int> complement_nodes(int node_count, std::span<const int> nodes) {
  std::vector<bool> in(node_count, false);
  for (int v : nodes) in.at(v) = true;
  std::vector<int> rest;
  for (int v = 0; v < node_count; ++v) {
    if (!in[v]) rest.push_back(v);
  }
  return rest;
}

std::vector<const Graph*> Dataset::subset(std::span<const int> ids) const {
  std::vector<const Graph*> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(&graph(id));
  return out;
}

void validate(const Dataset& ds) {
  if (ds.num_classes < 1) throw ParameterError("dataset: num_classes must be >= 1");
  const int n = static_cast<int>(ds.graphs.size());
  for (int i = 0; i < n; ++i) {
    const Graph& g = ds.graphs[i];
    if (g.graph_id != i) throw ParameterError("dataset: graph ids must equal positions");
    if (g.label < 0 || g.label >= ds.num_classes) {
      throw ParameterError("dataset: graph " + std::to_string(i) + " label out of range");
    }
    validate(g);
  }
  std::vector<int> owner(n, 0);
  for (const auto* part : {&ds.splits.train, &ds.splits.val, &ds.splits.test}) {
    for (int id : *part) {
      if (id < 0 || id >= n) throw ParameterError("dataset: split id out of range");
      if (owner[id]++) throw ParameterError("dataset: splits overlap at id " + std::to_string(id));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!owner[i]) throw ParameterError("dataset: graph " + std::to_string(i) + " in no split");
  }
  std::set<int> test(ds.splits.test.begin(), ds.splits.test.end());
  for (int id : ds.splits.explain) {
    if (!test.count(id)) throw ParameterError("dataset: explain split must be a subset of test");
  }
}

Splits make_splits(int num_graphs, uint64_t seed) {
  std::vector<int> ids(num_graphs);
  std::iota(ids.begin(), ids.end(), 0);
  Rng rng(seed);
  for (int i = num_graphs - 1; i > 0; --i) {
    std::swap(ids[i], ids[uniform_index(rng, i + 1)]);
  }
  const int n_train = num_graphs * 7 / 10;
  const int n_val = num_graphs / 10;
  Splits s;
  s.train.assign(ids.begin(), ids.begin() + n_train);
  s.val.assign(ids.begin() + n_train, ids.begin() + n_train + n_val);
  s.test.assign(ids.begin() + n_train + n_val, ids.end());
  for (auto* part : {&s.train, &s.val, &s.test}) std::sort(part->begin(), part->end());
  s.explain = s.test;
  return s;
}

}  // namespace rcgnn
