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

#include <set>

#include "rcgnn/error.h"
#include "rcgnn/rng.h"

namespace rcgnn {
namespace {

std::vector<Edge> ring(int first, int count) {
  std::vector<Edge> edges;
  for (int i = 0; i < count; ++i) edges.push_back({first + i, first + (i + 1) % count});
  return edges;
}

std::vector<Edge> lattice(int rows, int cols) {
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) edges.push_back({r * cols + c, r * cols + c + 1});
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) edges.push_back({r * cols + c, (r + 1) * cols + c});
  }
  return edges;
}

constexpr MotifKind kPools[3][3] = {
    {MotifKind::kHouse, MotifKind::kCycle, MotifKind::kK4},
    {MotifKind::kGrid, MotifKind::kWheel, MotifKind::kDiamond},
    {MotifKind::kLadder, MotifKind::kBowtie, MotifKind::kCycle6},
};

void check_generator_options(int num_graphs, const GeneratorOptions& opts) {
  if (num_graphs < 3) throw ParameterError("num_graphs must be >= 3");
  if (opts.attachment < 1 || opts.min_base_nodes < opts.attachment + 1 ||
      opts.max_base_nodes < opts.min_base_nodes) {
    throw ParameterError("invalid base size range");
  }
  if (opts.feature_dim < 1) throw ParameterError("feature_dim must be >= 1");
}

int draw_base_size(Rng& rng, const GeneratorOptions& opts) {
  return opts.min_base_nodes +
         static_cast<int>(uniform_index(rng, opts.max_base_nodes - opts.min_base_nodes + 1));
}

}  // namespace

std::string_view motif_name(MotifKind kind) {
  switch (kind) {
    case MotifKind::kHouse: return "house";
    case MotifKind::kCycle: return "cycle";
    case MotifKind::kGrid: return "grid";
    case MotifKind::kCycle6: return "cycle6";
    case MotifKind::kWheel: return "wheel";
    case MotifKind::kLadder: return "ladder";
    case MotifKind::kK4: return "k4";
    case MotifKind::kDiamond: return "diamond";
    case MotifKind::kBowtie: return "bowtie";
  }
  return "unknown";
}

MotifSpec motif_spec(MotifKind kind) {
  MotifSpec m;
  m.kind = kind;
  switch (kind) {
    case MotifKind::kHouse:
      m.node_count = 5;
      m.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 2}, {4, 3}};
      break;
    case MotifKind::kCycle:
      m.node_count = 5;
      m.edges = ring(0, 5);
      break;
    case MotifKind::kGrid:
      m.node_count = 9;
      m.edges = lattice(3, 3);
      break;
    case MotifKind::kCycle6:
      m.node_count = 6;
      m.edges = ring(0, 6);
      break;
    case MotifKind::kWheel:
      m.node_count = 6;
      m.edges = ring(1, 5);
      for (int i = 1; i <= 5; ++i) m.edges.push_back({0, i});
      break;
    case MotifKind::kLadder:
      m.node_count = 8;
      m.edges = lattice(2, 4);
      break;
    case MotifKind::kK4:
      m.node_count = 4;
      m.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
      break;
    case MotifKind::kDiamond:
      m.node_count = 4;
      m.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
      break;
    case MotifKind::kBowtie:
      m.node_count = 5;
      m.edges = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}};
      break;
  }
  return m;
}

Graph generate_ba_graph(int n, int m, uint64_t seed, int feature_dim) {
  if (m < 1) throw ParameterError("generate_ba_graph: m must be >= 1");
  if (n < m + 1) {
    throw ParameterError("generate_ba_graph: need n >= m + 1 (n=" + std::to_string(n) +
                         ", m=" + std::to_string(m) + ")");
  }
  Rng rng(seed);
  Graph g;
  g.node_count = n;
  g.node_features = Matrix::Ones(n, feature_dim);

  std::vector<int> targets(m);
  for (int i = 0; i < m; ++i) targets[i] = i;
  // Every endpoint appears once per incident edge, so sampling uniformly from
  // this list is sampling proportionally to degree.
  std::vector<int> endpoints;
  for (int source = m; source < n; ++source) {
    for (int t : targets) {
      g.edges.push_back({t, source});
      endpoints.push_back(t);
      endpoints.push_back(source);
    }
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < m) {
      chosen.insert(endpoints[uniform_index(rng, endpoints.size())]);
    }
    targets.assign(chosen.begin(), chosen.end());
  }
  g.gt_edge_mask = std::vector<bool>(g.edges.size(), false);
  return g;
}

Graph attach_motif(const Graph& base, const MotifSpec& motif, uint64_t seed) {
  if (base.node_count < 1) throw ParameterError("attach_motif: base graph is empty");
  Rng rng(seed);
  const int offset = base.node_count;
  Graph g = base;
  g.node_count = base.node_count + motif.node_count;
  g.node_features.conservativeResize(g.node_count, base.node_features.cols());
  g.node_features.bottomRows(motif.node_count).setOnes();

  std::vector<bool> mask(base.edges.size(), false);
  for (const Edge& e : motif.edges) {
    g.edges.push_back({offset + e.u, offset + e.v});
    mask.push_back(true);
  }
  const int anchor = static_cast<int>(uniform_index(rng, base.node_count));
  const int port = offset + static_cast<int>(uniform_index(rng, motif.node_count));
  g.edges.push_back({anchor, port});
  mask.push_back(false);
  g.gt_edge_mask = std::move(mask);
  g.label = static_cast<int>(motif.kind);
  return g;
}

Dataset generate_ba3motif(int num_graphs, uint64_t seed, const GeneratorOptions& opts) {
  check_generator_options(num_graphs, opts);
  Dataset ds;
  ds.num_classes = 3;
  for (int i = 0; i < num_graphs; ++i) {
    Rng rng(derive_seed(seed, Stream::kDataset, 3 * static_cast<uint64_t>(i)));
    const int n = draw_base_size(rng, opts);
    Graph base = generate_ba_graph(n, opts.attachment,
                                   derive_seed(seed, Stream::kDataset, 3 * static_cast<uint64_t>(i) + 1),
                                   opts.feature_dim);
    Graph g = attach_motif(base, motif_spec(static_cast<MotifKind>(i % 3)),
                           derive_seed(seed, Stream::kDataset, 3 * static_cast<uint64_t>(i) + 2));
    g.graph_id = i;
    ds.graphs.push_back(std::move(g));
  }
  ds.splits = make_splits(num_graphs, derive_seed(seed, Stream::kSplit));
  return ds;
}

std::vector<MotifKind> multimotif_pool(int class_id, int motifs_per_class) {
  if (class_id < 0 || class_id > 2) throw ParameterError("multimotif_pool: class must be 0..2");
  if (motifs_per_class < 2 || motifs_per_class > 3) {
    throw ParameterError("motifs_per_class must be 2 or 3");
  }
  return {kPools[class_id], kPools[class_id] + motifs_per_class};
}

MotifKind multimotif_kind(int graph_id, int motifs_per_class) {
  const auto pool = multimotif_pool(graph_id % 3, motifs_per_class);
  return pool[(graph_id / 3) % pool.size()];
}

Dataset generate_multimotif(int num_graphs, int motifs_per_class, uint64_t seed,
                            const GeneratorOptions& opts) {
  check_generator_options(num_graphs, opts);
  Dataset ds;
  ds.num_classes = 3;
  for (int i = 0; i < num_graphs; ++i) {
    const int label = i % 3;
    const MotifKind kind = multimotif_kind(i, motifs_per_class);
    Rng rng(derive_seed(seed, Stream::kDataset, 3 * static_cast<uint64_t>(i)));
    const int n = draw_base_size(rng, opts);
    Graph base = generate_ba_graph(n, opts.attachment,
                                   derive_seed(seed, Stream::kDataset, 3 * static_cast<uint64_t>(i) + 1),
                                   opts.feature_dim);
    Graph g = attach_motif(base, motif_spec(kind),
                           derive_seed(seed, Stream::kDataset, 3 * static_cast<uint64_t>(i) + 2));
    g.label = label;
    g.graph_id = i;
    ds.graphs.push_back(std::move(g));
  }
  ds.splits = make_splits(num_graphs, derive_seed(seed, Stream::kSplit));
  return ds;
}

}  // namespace rcgnn
