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

#include "rcgnn/trainer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "rcgnn/rng.h"

namespace rcgnn {
namespace {

struct BranchPair {
  ad::Var h_c;
  ad::Var h_t;
  std::vector<int> causal_nodes;
  ad::Var node_scores;  // no-retriever variant only
};

std::vector<int> all_nodes(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

BranchPair branch_pair(ad::Tape& t, const ModelVars& vars, const ModelConfig& config,
                       Variant variant, double ratio, const Graph& g, ad::Var node_emb,
                       std::vector<int> causal_nodes) {
  BranchPair out;
  ad::Var h = node_emb;
  if (variant == Variant::kNoRetriever) {
    out.node_scores = ad::sigmoid(t, dense_forward(t, vars.node_scorer, node_emb));
    causal_nodes = top_k(t.value(out.node_scores).col(0), selection_size(g.node_count, ratio));
    std::sort(causal_nodes.begin(), causal_nodes.end());
    h = ad::scale_rows(t, node_emb, out.node_scores);
  }
  out.h_c = branch_embedding(t, vars.causal_branch, config.branch_mode, config.hidden_dim, h, g,
                             causal_nodes);
  if (variant == Variant::kNoCausal) {
    out.h_t = t.constant(Matrix::Zero(1, config.hidden_dim));
  } else {
    out.h_t = branch_embedding(t, vars.trivial_branch, config.branch_mode, config.hidden_dim, h, g,
                               complement_nodes(g.node_count, causal_nodes));
  }
  out.causal_nodes = std::move(causal_nodes);
  return out;
}

int row_argmax(const Matrix& row) { return argmax(row.row(0).transpose()); }

std::string format_fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

ModelConfig model_config_for(const Dataset& ds, const HyperParams& hp) {
  ModelConfig c;
  c.feature_dim = ds.feature_dim();
  c.hidden_dim = hp.hidden_dim;
  c.num_layers = hp.num_layers;
  c.num_classes = ds.num_classes;
  return c;
}

TrainedModel make_trained_model(const Dataset& ds, ModelParams params, const HyperParams& hp,
                                int64_t model_version) {
  TrainedModel m{std::move(params), hp, {}};
  m.pool = build_candidate_pool(ds, m.params, hp.candidate_max, model_version);
  return m;
}

Explanation explain_graph(const TrainedModel& model, const Graph& g) {
  if (model.hp.variant == Variant::kNoRetriever) {
    ad::Tape t(false);
    ModelVars vars = bind(t, model.params, false);
    ad::Var emb = encode_nodes(t, vars, g);
    ad::Var s = ad::sigmoid(t, dense_forward(t, vars.node_scorer, emb));
    return explanation_from_node_scores(g, t.value(s).col(0), model.hp.ratio);
  }
  ad::Tape t(false);
  ModelVars vars = bind(t, model.params, false);
  const ModelConfig& config = model.params.config;
  ad::Var states = route_node_states(t, vars, config, g, encode_nodes(t, vars, g));
  ad::Var x = ad::concat_cols(t, ad::sum_rows(t, states),
                              t.constant(Matrix::Zero(1, config.hidden_dim)));
  const int cls = row_argmax(t.value(dense_forward(t, vars.causal_head, x)));
  const CandidateSet* cand = model.pool.get(cls);
  if (!cand) return explanation_from_node_scores(g, Vector::Zero(g.node_count), model.hp.ratio);
  RetrievalOptions opts;
  opts.ratio = model.hp.ratio;
  opts.threshold = model.hp.threshold;
  opts.exclude_graph_id = g.graph_id;
  if (cand->entries.size() == 1 && cand->entries[0].graph_id == g.graph_id) {
    opts.exclude_graph_id = -1;
  }
  return retrieve_explanation(g, normalize_rows(t.value(states)), *cand, opts);
}

BranchOutputs encode_branches(const ModelParams& params, const Graph& g, const Explanation& expl,
                              Variant variant) {
  ad::Tape t(false);
  ModelVars vars = bind(t, params, false);
  ad::Var emb = encode_nodes(t, vars, g);
  BranchPair bp =
      branch_pair(t, vars, params.config, variant, expl.ratio, g, emb, expl.selected_nodes);
  ad::Var x = ad::concat_cols(t, bp.h_c, bp.h_t);
  BranchOutputs out;
  out.h_c = t.value(bp.h_c).row(0).transpose();
  out.h_t = t.value(bp.h_t).row(0).transpose();
  out.probs_c = softmax(t.value(dense_forward(t, vars.causal_head, x)).row(0).transpose());
  out.probs_t = softmax(t.value(dense_forward(t, vars.trivial_head, x)).row(0).transpose());
  out.label = g.label;
  out.ce_c = cross_entropy(out.probs_c, g.label);
  out.ce_t = cross_entropy(out.probs_t, g.label);
  return out;
}

int predict(const TrainedModel& model, const Graph& g) {
  if (model.hp.variant != Variant::kNoRetriever &&
      !model.pool.get(predict_full(model.params, g))) {
    return predict_full(model.params, g);
  }
  const Explanation expl = explain_graph(model, g);
  return argmax(encode_branches(model.params, g, expl, model.hp.variant).probs_c);
}

double full_route_accuracy(const ModelParams& params, const Dataset& ds, std::span<const int> ids,
                           int threads) {
  if (ids.empty()) return 0.0;
  std::vector<int> hit(ids.size(), 0);
  parallel_for(ids.size(), threads, [&](size_t i) {
    const Graph& g = ds.graph(ids[i]);
    hit[i] = predict_full(params, g) == g.label;
  });
  int total = 0;
  for (int h : hit) total += h;
  return static_cast<double>(total) / static_cast<double>(ids.size());
}

double accuracy(const TrainedModel& model, const Dataset& ds, std::span<const int> ids,
                int threads) {
  if (ids.empty()) return 0.0;
  std::vector<int> hit(ids.size(), 0);
  parallel_for(ids.size(), threads, [&](size_t i) {
    const Graph& g = ds.graph(ids[i]);
    hit[i] = predict(model, g) == g.label;
  });
  int total = 0;
  for (int h : hit) total += h;
  return static_cast<double>(total) / static_cast<double>(ids.size());
}

BatchObjective batch_objective(ad::Tape& t, const ModelVars& vars, const ModelConfig& config,
                               std::span<const BatchItem> items, const HyperParams& hp,
                               std::span<const int> permutation, bool warmup,
                               std::span<const double> frozen_weights) {
  const size_t n = items.size();
  if (n == 0) throw ParameterError("batch_objective: empty batch");
  if (!frozen_weights.empty() && frozen_weights.size() != n) {
    throw ShapeError("batch_objective: frozen weight count");
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  BatchObjective obj;
  std::vector<ad::Var> sup_terms, dis_terms;
  std::vector<ad::Var> h_c(n), h_t(n);
  std::vector<double> weights(n, 0.0);

  for (size_t i = 0; i < n; ++i) {
    const Graph& g = *items[i].graph;
    const int y = g.label;
    ad::Var emb = encode_nodes(t, vars, g);
    ad::Var full = full_graph_logits(t, vars, config, g, emb);
    ad::Var full_ce = ad::cross_entropy_logits(t, full, y);
    if (warmup) {
      sup_terms.push_back(full_ce);
      obj.parts.correct += row_argmax(t.value(full)) == y;
      continue;
    }
    std::vector<int> causal = items[i].causal_nodes;
    if (causal.empty()) causal = all_nodes(g.node_count);
    BranchPair bp = branch_pair(t, vars, config, hp.variant, hp.ratio, g, emb, std::move(causal));
    h_c[i] = bp.h_c;
    h_t[i] = bp.h_t;
    ad::Var x = ad::concat_cols(t, bp.h_c, bp.h_t);
    ad::Var logits_c = dense_forward(t, vars.causal_head, x);
    ad::Var probs_c = ad::softmax_row(t, logits_c);
    ad::Var ce_c = ad::cross_entropy_logits(t, logits_c, y);
    sup_terms.push_back(ce_c);
    sup_terms.push_back(full_ce);
    if (static_cast<int>(bp.causal_nodes.size()) < g.node_count) {
      const Graph sub = induced_subgraph(g, bp.causal_nodes).graph;
      sup_terms.push_back(ad::cross_entropy_logits(
          t, full_graph_logits(t, vars, config, sub, encode_nodes(t, vars, sub)), y));
    }
    obj.parts.correct += row_argmax(t.value(probs_c)) == y;
    if (hp.variant == Variant::kNoCausal) continue;

    ad::Var probs_t = ad::softmax_row(t, dense_forward(t, vars.trivial_head, x));
    const double ce_t = cross_entropy(t.value(probs_t).row(0).transpose(), y);
    weights[i] = frozen_weights.empty() ? disentangle_weight(t.scalar(ce_c), ce_t)
                                        : frozen_weights[i];
    ad::Var gce = ad::generalized_ce(t, hp.gce_on_trivial ? probs_t : probs_c, y, hp.q);
    const ad::Var terms[] = {ce_c, gce};
    const double coeffs[] = {weights[i], 1.0};
    dis_terms.push_back(ad::weighted_sum(t, terms, coeffs));
  }

  std::vector<double> sup_w(sup_terms.size(), inv_n);
  ad::Var sup = ad::weighted_sum(t, sup_terms, sup_w);
  obj.parts.sup = t.scalar(sup);
  if (warmup || hp.variant == Variant::kNoCausal) {
    obj.total = sup;
    obj.parts.total = obj.parts.sup;
    return obj;
  }

  obj.weights = weights;
  std::vector<double> mean_w(n, inv_n);
  ad::Var dis = ad::weighted_sum(t, dis_terms, mean_w);
  ad::Var con;
  if (hp.contrastive_mode == ContrastiveMode::kPermute) {
    if (permutation.size() != n) throw ShapeError("batch_objective: permutation size");
    std::vector<ad::Var> con_terms;
    for (size_t i = 0; i < n; ++i) {
      const size_t j = static_cast<size_t>(permutation[i]);
      const int y = items[i].graph->label;
      const int y_swapped = items[j].graph->label;
      ad::Var xp = ad::concat_cols(t, h_c[i], h_t[j]);
      ad::Var pt = ad::softmax_row(t, dense_forward(t, vars.trivial_head, xp));
      const ad::Var terms[] = {ad::cross_entropy_logits(t, dense_forward(t, vars.causal_head, xp), y),
                               ad::generalized_ce(t, pt, y_swapped, hp.q)};
      const double coeffs[] = {weights[i], 1.0};
      con_terms.push_back(ad::weighted_sum(t, terms, coeffs));
    }
    con = ad::weighted_sum(t, con_terms, mean_w);
  } else {
    ad::Var scores = ad::matmul_transposed(t, ad::stack_rows(t, h_c), ad::stack_rows(t, h_t));
    con = ad::positive_over_negative_log_ratio(t, scores, hp.tau);
  }
  obj.parts.dis = t.scalar(dis);
  obj.parts.con = t.scalar(con);
  const ad::Var parts[] = {sup, dis, con};
  const bool no_dis_con = hp.variant == Variant::kNoDisCon;
  const double coeffs[] = {1.0, no_dis_con ? 0.0 : hp.lambda1, no_dis_con ? 0.0 : hp.lambda2};
  obj.total = ad::weighted_sum(t, parts, coeffs);
  obj.parts.total = t.scalar(obj.total);
  return obj;
}

double objective_value(const ModelParams& params, std::span<const BatchItem> items,
                       const HyperParams& hp, std::span<const int> permutation, bool warmup,
                       const ModelParams* weight_params) {
  std::vector<double> frozen;
  if (weight_params != nullptr) {
    ad::Tape wt(false);
    ModelVars wv = bind(wt, *weight_params, false);
    frozen = batch_objective(wt, wv, weight_params->config, items, hp, permutation, warmup).weights;
  }
  ad::Tape t(false);
  ModelVars vars = bind(t, params, false);
  return t.scalar(
      batch_objective(t, vars, params.config, items, hp, permutation, warmup, frozen).total);
}

ModelParams objective_gradient(const ModelParams& params, std::span<const BatchItem> items,
                               const HyperParams& hp, std::span<const int> permutation,
                               bool warmup) {
  ad::Tape t;
  ModelVars vars = bind(t, params, true);
  BatchObjective obj = batch_objective(t, vars, params.config, items, hp, permutation, warmup);
  t.backward(obj.total);
  return collect_grads(t, vars, params);
}

void write_training_log(std::ostream& out, const TrainingLog& log, const std::string& comment) {
  if (!comment.empty()) out << comment << '\n';
  out << "epoch,L_sup,L_dis,L_con,train_acc,val_acc\n";
  for (const EpochLog& e : log.epochs) {
    out << e.epoch << ',' << format_fixed(e.l_sup) << ',' << format_fixed(e.l_dis) << ','
        << format_fixed(e.l_con) << ',' << format_fixed(e.train_acc) << ','
        << format_fixed(e.val_acc) << '\n';
  }
}

FitResult fit(const Dataset& ds, const HyperParams& hp, const FitOptions& opts) {
  validate(hp);
  validate(ds);
  if (ds.num_classes < 2) throw ParameterError("fit: dataset needs at least two classes");
  if (ds.splits.train.empty()) throw ParameterError("fit: empty training split");

  ModelParams params =
      ModelParams::initialize(model_config_for(ds, hp), derive_seed(hp.seed, Stream::kInit));
  AdamState adam;
  Rng shuffle_rng(derive_seed(hp.seed, Stream::kShuffle));
  uint64_t perm_counter = 0;
  int64_t version = 0;

  FitResult result;
  result.params = params;
  CandidatePool pool = build_candidate_pool(ds, params, hp.candidate_max, version++);

  RetrievalOptions ropts;
  ropts.ratio = hp.ratio;
  ropts.threshold = hp.threshold;

  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    const bool warmup = epoch < hp.warmup_epochs;
    std::vector<int> order = ds.splits.train;
    for (size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[uniform_index(shuffle_rng, i + 1)]);
    }
    std::vector<std::pair<size_t, size_t>> batches;
    for (size_t start = 0; start < order.size(); start += hp.batch_size) {
      batches.push_back({start, std::min(order.size(), start + hp.batch_size)});
    }
    if (batches.size() > 1 && batches.back().second - batches.back().first < 2) {
      batches[batches.size() - 2].second = batches.back().second;
      batches.pop_back();
    }

    if (!warmup && hp.variant != Variant::kNoRetriever) {
      for (int c = 0; c < ds.num_classes; ++c) {
        if (!pool.get(c)) {
          result.log.warnings.push_back("epoch " + std::to_string(epoch) + ": class " +
                                        std::to_string(c) +
                                        " has no candidates; using full graphs");
        }
      }
    }

    EpochLog entry;
    entry.epoch = epoch;
    double sum_sup = 0.0, sum_dis = 0.0, sum_con = 0.0;
    int correct = 0;
    for (const auto& [begin, end] : batches) {
      const size_t n = end - begin;
      std::vector<BatchItem> items(n);
      for (size_t i = 0; i < n; ++i) items[i].graph = &ds.graph(order[begin + i]);
      if (!warmup && hp.variant != Variant::kNoRetriever) {
        std::vector<char> fallback(n, 0);
        parallel_for(n, opts.threads, [&](size_t i) {
          const Graph& g = *items[i].graph;
          const CandidateSet* cand = pool.get(g.label);
          const bool usable =
              cand && !(cand->entries.size() == 1 && cand->entries[0].graph_id == g.graph_id);
          if (!usable) {
            fallback[i] = 1;
            return;
          }
          RetrievalOptions o = ropts;
          o.exclude_graph_id = g.graph_id;
          items[i].causal_nodes = retrieve_explanation(g, params, *cand, o).selected_nodes;
        });
        for (char f : fallback) entry.full_graph_fallbacks += f;
      }
      std::vector<int> perm;
      if (n >= 2) perm = derangement(static_cast<int>(n), derive_seed(hp.seed, Stream::kPermute, perm_counter++));

      ad::Tape tape;
      ModelVars vars = bind(tape, params, true);
      BatchObjective obj = batch_objective(tape, vars, params.config, items, hp, perm, warmup);
      if (!std::isfinite(obj.parts.total)) {
        throw TrainingDivergedError("non-finite loss at epoch " + std::to_string(epoch), params,
                                    epoch);
      }
      tape.backward(obj.total);
      ModelParams grads = collect_grads(tape, vars, params);
      clip_grad_norm(grads, hp.grad_clip);
      ModelParams next = params;
      try {
        adam_step(adam, next, grads, hp.lr);
      } catch (const NonFiniteError& err) {
        throw TrainingDivergedError(err.what(), params, epoch);
      }
      params = std::move(next);
      sum_sup += obj.parts.sup * n;
      sum_dis += obj.parts.dis * n;
      sum_con += obj.parts.con * n;
      correct += obj.parts.correct;
    }
    const double count = static_cast<double>(order.size());
    entry.l_sup = sum_sup / count;
    entry.l_dis = sum_dis / count;
    entry.l_con = sum_con / count;
    entry.train_acc = correct / count;

    pool = build_candidate_pool(ds, params, hp.candidate_max, version++);
    // Only the retrieval-free route is trained during warm-up, so it is the
    // one validated there; selection waits for the full objective.
    TrainedModel current{params, hp, pool};
    if (ds.splits.val.empty()) {
      entry.val_acc = entry.train_acc;
    } else if (warmup) {
      entry.val_acc = full_route_accuracy(params, ds, ds.splits.val, opts.threads);
    } else {
      entry.val_acc = accuracy(current, ds, ds.splits.val, opts.threads);
    }
    result.log.epochs.push_back(entry);
    const bool eligible = !warmup || hp.epochs <= hp.warmup_epochs;
    if (eligible && entry.val_acc > result.log.best_val_acc) {
      result.log.best_val_acc = entry.val_acc;
      result.log.best_epoch = epoch;
      result.params = params;
    }
    if (opts.on_epoch) opts.on_epoch(entry);
  }
  result.final_params = params;
  result.epochs_run = hp.epochs;
  std::ostringstream rng_state;
  rng_state << shuffle_rng;
  result.rng_state = rng_state.str();
  return result;
}

}  // namespace rcgnn
