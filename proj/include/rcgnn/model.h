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

#ifndef RCGNN_MODEL_H_
#define RCGNN_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcgnn/autodiff.h"
#include "rcgnn/graph.h"

namespace rcgnn {

enum class BranchMode {
  kGin,       // one message-passing layer on the branch's induced subgraph
  kIdentity,  // plain readout of the shared embeddings (test configuration)
};

struct ModelConfig {
  int feature_dim = 8;
  int hidden_dim = 32;
  int num_layers = 2;
  int num_classes = 3;
  BranchMode branch_mode = BranchMode::kGin;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

void validate(const ModelConfig& config);

// Affine map x -> x * weight + bias on row vectors; weight is in x out.
template <class T>
struct DenseT {
  T weight;
  T bias;
};

// GIN layer: relu(relu((h + sum_neighbors h) W1 + b1) W2 + b2).
template <class T>
struct GinLayerT {
  DenseT<T> lin1;
  DenseT<T> lin2;
};

// Every weight block of the model, parameterized over the block type so the
// same layout holds matrices, gradients and tape handles.
template <class T>
struct Weights {
  std::vector<GinLayerT<T>> shared;  // f
  GinLayerT<T> causal_branch;        // f_c
  GinLayerT<T> trivial_branch;       // f_t
  DenseT<T> causal_head;             // C_c on [h_c; h_t]
  DenseT<T> trivial_head;            // C_t on [h_c; h_t]
  DenseT<T> node_scorer;             // used by the no-retriever ablation only
};

// Visits blocks in a fixed order with a dotted name, e.g. "shared.0.lin1.weight".
template <class W, class F>
void for_each_block(W& w, F&& fn) {
  auto dense = [&](const std::string& prefix, auto& d) {
    fn(prefix + ".weight", d.weight);
    fn(prefix + ".bias", d.bias);
  };
  auto gin = [&](const std::string& prefix, auto& layer) {
    dense(prefix + ".lin1", layer.lin1);
    dense(prefix + ".lin2", layer.lin2);
  };
  for (size_t l = 0; l < w.shared.size(); ++l) gin("shared." + std::to_string(l), w.shared[l]);
  gin("causal_branch", w.causal_branch);
  gin("trivial_branch", w.trivial_branch);
  dense("causal_head", w.causal_head);
  dense("trivial_head", w.trivial_head);
  dense("node_scorer", w.node_scorer);
}

using Dense = DenseT<Matrix>;
using GinLayer = GinLayerT<Matrix>;

struct ModelParams {
  ModelConfig config;
  Weights<Matrix> weights;

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights and biases.
  static ModelParams initialize(const ModelConfig& config, uint64_t seed);
  static ModelParams zeros(const ModelConfig& config);

  std::vector<double> flatten() const;
  void unflatten(std::span<const double> values);
  size_t parameter_count() const;
  bool all_finite() const;
};

// Expected (rows, cols) for each named block of a config.
std::vector<std::pair<std::string, std::pair<int, int>>> block_shapes(const ModelConfig& config);

using ModelVars = Weights<ad::Var>;

// Places every block on the tape; trainable blocks collect gradients.
ModelVars bind(ad::Tape& tape, const ModelParams& params, bool trainable = true);

// Gradients of the last backward() in ModelParams layout (zeros where unreached).
ModelParams collect_grads(const ad::Tape& tape, const ModelVars& vars, const ModelParams& like);

ad::Var dense_forward(ad::Tape& t, const DenseT<ad::Var>& d, ad::Var x);
ad::Var gin_forward(ad::Tape& t, const GinLayerT<ad::Var>& layer, ad::Var h,
                    std::span<const Edge> edges, ad::Var edge_weights = {});

// Shared encoder f on a whole graph: node_count x hidden_dim.
ad::Var encode_nodes(ad::Tape& t, const ModelVars& vars, const Graph& g,
                     ad::Var edge_weights = {});

// Branch embedding of the node subset: gathers the shared embeddings of
// `nodes`, applies the branch layer on the induced subgraph and sums rows.
// An empty subset yields the zero vector.
ad::Var branch_embedding(ad::Tape& t, const GinLayerT<ad::Var>& layer, BranchMode mode,
                         int hidden_dim, ad::Var node_emb, const Graph& g,
                         std::span<const int> nodes, ad::Var edge_weights = {});

// Node states after the causal branch layer on the whole graph (layer
// num_layers + 1). The retrieval-free route sums them; retrieval matches them.
ad::Var route_node_states(ad::Tape& t, const ModelVars& vars, const ModelConfig& config,
                          const Graph& g, ad::Var node_emb, ad::Var edge_weights = {});

// Retrieval-free route: causal head on [f_c(all nodes); 0]. This is the
// model's own prediction of a whole (or induced) graph.
ad::Var full_graph_logits(ad::Tape& t, const ModelVars& vars, const ModelConfig& config,
                          const Graph& g, ad::Var node_emb, ad::Var edge_weights = {});

struct NodeEmbeddings {
  Matrix values;  // node_count x hidden_dim
  int layer = 0;
};

NodeEmbeddings encode(const ModelParams& params, const Graph& g);
// route_node_states with every nonzero row rescaled to unit RMS (L2 norm
// sqrt(width)). Matching then compares directions, so low-norm leaf states
// no longer dominate, while 1/(1+d) keeps a useful dynamic range.
NodeEmbeddings retrieval_embeddings(const ModelParams& params, const Graph& g);
Matrix normalize_rows(Matrix m);

// Sum of the selected rows (all rows when absent). Throws on an empty subset.
Vector readout(const NodeEmbeddings& ne, std::optional<std::span<const int>> subset = std::nullopt);

Vector softmax(const Vector& logits);

// softmax(x * weight + bias).
Vector classify(const Dense& head, const Vector& embedding);

Vector full_graph_probs(const ModelParams& params, const Graph& g);
int argmax(const Vector& v);
int predict_full(const ModelParams& params, const Graph& g);

}  // namespace rcgnn

#endif  // RCGNN_MODEL_H_
