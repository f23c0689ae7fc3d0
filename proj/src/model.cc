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

#include "rcgnn/error.h"
#include "rcgnn/rng.h"

namespace rcgnn {
namespace {

Dense make_dense(int in, int out, Rng* rng) {
  Dense d{Matrix::Zero(in, out), Matrix::Zero(1, out)};
  if (rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    for (auto* m : {&d.weight, &d.bias}) {
      for (Eigen::Index i = 0; i < m->size(); ++i) {
        m->data()[i] = (2.0 * uniform01(*rng) - 1.0) * bound;
      }
    }
  }
  return d;
}

GinLayer make_gin(int in, int hidden, Rng* rng) {
  GinLayer layer;
  layer.lin1 = make_dense(in, hidden, rng);
  layer.lin2 = make_dense(hidden, hidden, rng);
  return layer;
}

ModelParams build(const ModelConfig& config, Rng* rng) {
  validate(config);
  ModelParams p;
  p.config = config;
  const int h = config.hidden_dim;
  for (int l = 0; l < config.num_layers; ++l) {
    p.weights.shared.push_back(make_gin(l == 0 ? config.feature_dim : h, h, rng));
  }
  p.weights.causal_branch = make_gin(h, h, rng);
  p.weights.trivial_branch = make_gin(h, h, rng);
  p.weights.causal_head = make_dense(2 * h, config.num_classes, rng);
  p.weights.trivial_head = make_dense(2 * h, config.num_classes, rng);
  p.weights.node_scorer = make_dense(h, 1, rng);
  return p;
}

}  // namespace

void validate(const ModelConfig& config) {
  if (config.feature_dim < 1 || config.hidden_dim < 1 || config.num_layers < 1 ||
      config.num_classes < 2) {
    throw ParameterError("model config: feature_dim, hidden_dim, num_layers >= 1 and "
                         "num_classes >= 2 required");
  }
}

ModelParams ModelParams::initialize(const ModelConfig& config, uint64_t seed) {
  Rng rng(seed);
  return build(config, &rng);
}

ModelParams ModelParams::zeros(const ModelConfig& config) { return build(config, nullptr); }

std::vector<double> ModelParams::flatten() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  for_each_block(weights, [&](const std::string&, const Matrix& m) {
    out.insert(out.end(), m.data(), m.data() + m.size());
  });
  return out;
}

void ModelParams::unflatten(std::span<const double> values) {
  if (values.size() != parameter_count()) throw ShapeError("unflatten: parameter count differs");
  size_t offset = 0;
  for_each_block(weights, [&](const std::string&, Matrix& m) {
    std::copy(values.begin() + offset, values.begin() + offset + m.size(), m.data());
    offset += m.size();
  });
}

size_t ModelParams::parameter_count() const {
  size_t n = 0;
  for_each_block(weights, [&](const std::string&, const Matrix& m) { n += m.size(); });
  return n;
}

bool ModelParams::all_finite() const {
  bool ok = true;
  for_each_block(weights, [&](const std::string&, const Matrix& m) { ok = ok && m.allFinite(); });
  return ok;
}

std::vector<std::pair<std::string, std::pair<int, int>>> block_shapes(const ModelConfig& config) {
  std::vector<std::pair<std::string, std::pair<int, int>>> shapes;
  const ModelParams zero = ModelParams::zeros(config);
  for_each_block(zero.weights, [&](const std::string& name, const Matrix& m) {
    shapes.push_back({name, {static_cast<int>(m.rows()), static_cast<int>(m.cols())}});
  });
  return shapes;
}

ModelVars bind(ad::Tape& tape, const ModelParams& params, bool trainable) {
  ModelVars vars;
  vars.shared.resize(params.weights.shared.size());
  std::vector<ad::Var> flat;
  for_each_block(params.weights, [&](const std::string&, const Matrix& m) {
    flat.push_back(trainable ? tape.parameter(m) : tape.constant(m));
  });
  size_t i = 0;
  for_each_block(vars, [&](const std::string&, ad::Var& v) { v = flat[i++]; });
  return vars;
}

ModelParams collect_grads(const ad::Tape& tape, const ModelVars& vars, const ModelParams& like) {
  ModelParams grads = like;
  std::vector<Matrix> flat;
  for_each_block(vars, [&](const std::string&, const ad::Var& v) {
    flat.push_back(tape.grad_or_zero(v));
  });
  size_t i = 0;
  for_each_block(grads.weights, [&](const std::string&, Matrix& m) { m = flat[i++]; });
  return grads;
}

ad::Var dense_forward(ad::Tape& t, const DenseT<ad::Var>& d, ad::Var x) {
  return ad::add_row(t, ad::matmul(t, x, d.weight), d.bias);
}

ad::Var gin_forward(ad::Tape& t, const GinLayerT<ad::Var>& layer, ad::Var h,
                    std::span<const Edge> edges, ad::Var edge_weights) {
  ad::Var z = ad::aggregate(t, h, edges, edge_weights);
  z = ad::relu(t, dense_forward(t, layer.lin1, z));
  return ad::relu(t, dense_forward(t, layer.lin2, z));
}

ad::Var encode_nodes(ad::Tape& t, const ModelVars& vars, const Graph& g, ad::Var edge_weights) {
  ad::Var h = t.constant(g.node_features);
  if (t.value(vars.shared.front().lin1.weight).rows() != g.feature_dim()) {
    throw ShapeError("encode: graph feature dim " + std::to_string(g.feature_dim()) +
                     " does not match model input dim " +
                     std::to_string(t.value(vars.shared.front().lin1.weight).rows()));
  }
  for (const auto& layer : vars.shared) h = gin_forward(t, layer, h, g.edges, edge_weights);
  return h;
}

ad::Var branch_embedding(ad::Tape& t, const GinLayerT<ad::Var>& layer, BranchMode mode,
                         int hidden_dim, ad::Var node_emb, const Graph& g,
                         std::span<const int> nodes, ad::Var edge_weights) {
  if (nodes.empty()) return t.constant(Matrix::Zero(1, hidden_dim));
  const bool all = static_cast<int>(nodes.size()) == g.node_count;
  if (mode == BranchMode::kIdentity) {
    return ad::sum_rows(t, all ? node_emb : ad::gather_rows(t, node_emb, nodes));
  }
  if (all) return ad::sum_rows(t, gin_forward(t, layer, node_emb, g.edges, edge_weights));
  InducedSubgraph sub = induced_subgraph(g, nodes);
  ad::Var h = ad::gather_rows(t, node_emb, sub.node_map);
  ad::Var w = edge_weights.valid() ? ad::gather_cols(t, edge_weights, sub.edge_map) : ad::Var{};
  return ad::sum_rows(t, gin_forward(t, layer, h, sub.graph.edges, w));
}

ad::Var route_node_states(ad::Tape& t, const ModelVars& vars, const ModelConfig& config,
                          const Graph& g, ad::Var node_emb, ad::Var edge_weights) {
  if (config.branch_mode == BranchMode::kIdentity) return node_emb;
  return gin_forward(t, vars.causal_branch, node_emb, g.edges, edge_weights);
}

ad::Var full_graph_logits(ad::Tape& t, const ModelVars& vars, const ModelConfig& config,
                          const Graph& g, ad::Var node_emb, ad::Var edge_weights) {
  ad::Var hc = ad::sum_rows(t, route_node_states(t, vars, config, g, node_emb, edge_weights));
  ad::Var x = ad::concat_cols(t, hc, t.constant(Matrix::Zero(1, config.hidden_dim)));
  return dense_forward(t, vars.causal_head, x);
}

NodeEmbeddings encode(const ModelParams& params, const Graph& g) {
  ad::Tape t(false);
  ModelVars vars = bind(t, params, false);
  return {t.value(encode_nodes(t, vars, g)), params.config.num_layers};
}

NodeEmbeddings retrieval_embeddings(const ModelParams& params, const Graph& g) {
  ad::Tape t(false);
  ModelVars vars = bind(t, params, false);
  ad::Var h = route_node_states(t, vars, params.config, g, encode_nodes(t, vars, g));
  return {normalize_rows(t.value(h)), params.config.num_layers + 1};
}

Matrix normalize_rows(Matrix m) {
  const double target = std::sqrt(static_cast<double>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double n = m.row(i).norm();
    if (n > 0.0) m.row(i) *= target / n;
  }
  return m;
}

Vector readout(const NodeEmbeddings& ne, std::optional<std::span<const int>> subset) {
  if (!subset) return ne.values.colwise().sum().transpose();
  if (subset->empty()) throw ParameterError("readout: empty node subset");
  Vector out = Vector::Zero(ne.values.cols());
  for (int i : *subset) {
    if (i < 0 || i >= ne.values.rows()) throw ParameterError("readout: node out of range");
    out += ne.values.row(i).transpose();
  }
  return out;
}

Vector softmax(const Vector& logits) {
  Vector p = (logits.array() - logits.maxCoeff()).exp().matrix();
  return p / p.sum();
}

Vector classify(const Dense& head, const Vector& embedding) {
  if (embedding.size() != head.weight.rows()) throw ShapeError("classify: embedding width");
  Vector logits = (embedding.transpose() * head.weight + head.bias).transpose();
  return softmax(logits);
}

Vector full_graph_probs(const ModelParams& params, const Graph& g) {
  ad::Tape t(false);
  ModelVars vars = bind(t, params, false);
  ad::Var emb = encode_nodes(t, vars, g);
  return softmax(t.value(full_graph_logits(t, vars, params.config, g, emb)).row(0).transpose());
}

int argmax(const Vector& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) best = i;
  }
  return static_cast<int>(best);
}

int predict_full(const ModelParams& params, const Graph& g) {
  return argmax(full_graph_probs(params, g));
}

}  // namespace rcgnn
