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

#ifndef RCGNN_GENERATORS_H_
#define RCGNN_GENERATORS_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "rcgnn/graph.h"

namespace rcgnn {

// The first three kinds are the BA-3Motif classes and their enum value is the
// class index. The rest only appear in multi-motif pools.
enum class MotifKind {
  kHouse = 0,
  kCycle = 1,
  kGrid = 2,
  kCycle6 = 3,
  kWheel = 4,
  kLadder = 5,
  kK4 = 6,
  kDiamond = 7,
  kBowtie = 8,
};

std::string_view motif_name(MotifKind kind);

struct MotifSpec {
  MotifKind kind = MotifKind::kHouse;
  int node_count = 0;
  std::vector<Edge> edges;
};

// Canonical edge lists:
//   house  : square 0-1-2-3 plus apex 4 joined to 2 and 3 (5 nodes, 6 edges)
//   cycle  : 5-ring (5 edges)
//   grid   : 3x3 lattice, row-major ids (9 nodes, 12 edges)
//   cycle6 : 6-ring (6 edges)
//   wheel  : hub 0 plus 5-ring 1..5 (6 nodes, 10 edges)
//   ladder : 2x4 lattice (8 nodes, 10 edges)
//   k4     : complete graph on 4 nodes (6 edges)
//   diamond: K4 minus edge 2-3 (4 nodes, 5 edges)
//   bowtie : two triangles sharing node 0 (5 nodes, 6 edges)
MotifSpec motif_spec(MotifKind kind);

// Preferential-attachment graph: the first m nodes are seeded, node m joins
// all of them, every later node joins m distinct earlier nodes chosen with
// probability proportional to degree. Features are constant 1.
Graph generate_ba_graph(int n, int m, uint64_t seed, int feature_dim = 8);

// Base plus a disjoint motif copy joined by one bridge edge between a random
// base node and a random motif node. The gt mask marks the motif's internal
// edges only; the label becomes the motif kind's class index.
Graph attach_motif(const Graph& base, const MotifSpec& motif, uint64_t seed);

struct GeneratorOptions {
  int min_base_nodes = 12;
  int max_base_nodes = 20;
  int attachment = 1;
  int feature_dim = 8;
};

// Three balanced classes (house, cycle, grid) on BA bases.
Dataset generate_ba3motif(int num_graphs, uint64_t seed, const GeneratorOptions& opts = {});

// Three balanced classes, each owning a pool of `motifs_per_class` distinct
// motifs (2 or 3); motif i of class c is attached to every graph whose
// within-class index is i modulo the pool size.
Dataset generate_multimotif(int num_graphs, int motifs_per_class, uint64_t seed,
                            const GeneratorOptions& opts = {});

// Motif pool used by generate_multimotif for a class.
std::vector<MotifKind> multimotif_pool(int class_id, int motifs_per_class);

// Motif planted in graph `graph_id` of a generate_multimotif dataset.
MotifKind multimotif_kind(int graph_id, int motifs_per_class);

}  // namespace rcgnn

#endif  // RCGNN_GENERATORS_H_
