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

#ifndef RCGNN_TRAINER_H_
#define RCGNN_TRAINER_H_

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rcgnn/autodiff.h"
#include "rcgnn/error.h"
#include "rcgnn/hyperparams.h"
#include "rcgnn/losses.h"
#include "rcgnn/model.h"
#include "rcgnn/optim.h"
#include "rcgnn/parallel.h"
#include "rcgnn/retrieval.h"

namespace rcgnn {

ModelConfig model_config_for(const Dataset& ds, const HyperParams& hp);

// Parameters plus the candidate pool they induce on the training split.
struct TrainedModel {
  ModelParams params;
  HyperParams hp;
  CandidatePool pool;
};

TrainedModel make_trained_model(const Dataset& ds, ModelParams params, const HyperParams& hp,
                                int64_t model_version = 0);

// Causal subgraph of `g` under the model: retrieval against the candidates
// of the model's retrieval-free prediction, or the learned node scorer for
// the no-retriever variant. When the predicted class has no candidates every
// node scores 0.
Explanation explain_graph(const TrainedModel& model, const Graph& g);

// h_c from f_c over the selected nodes, h_t from f_t over the rest (zero when
// the rest is empty or the variant has no trivial branch), both heads on
// [h_c; h_t].
BranchOutputs encode_branches(const ModelParams& params, const Graph& g, const Explanation& expl,
                              Variant variant = Variant::kFull);

// Final graph-level prediction: causal head after retrieval.
int predict(const TrainedModel& model, const Graph& g);
double full_route_accuracy(const ModelParams& params, const Dataset& ds, std::span<const int> ids,
                           int threads = 1);
double accuracy(const TrainedModel& model, const Dataset& ds, std::span<const int> ids,
                int threads = 1);

struct BatchItem {
  const Graph* graph = nullptr;
  std::vector<int> causal_nodes;  // ignored by the no-retriever variant
};

struct LossParts {
  double sup = 0.0;
  double dis = 0.0;
  double con = 0.0;
  double total = 0.0;
  int correct = 0;
};

struct BatchObjective {
  ad::Var total;
  LossParts parts;
  std::vector<double> weights;  // disentangling weight per item
};

// L_sup + lambda1 L_dis + lambda2 L_con over one mini-batch, each term a
// batch mean. L_sup also carries the CE of the retrieval-free route that
// picks the candidate class at inference. `permutation` is the trivial
// embedding swap (permute mode). In warm-up only the retrieval-free CE is
// used.
BatchObjective batch_objective(ad::Tape& tape, const ModelVars& vars, const ModelConfig& config,
                               std::span<const BatchItem> items, const HyperParams& hp,
                               std::span<const int> permutation, bool warmup,
                               std::span<const double> frozen_weights = {});

// The disentangling weights carry no gradient. When `weight_params` is given
// they are evaluated there and held fixed, so finite differences of this value
// match objective_gradient at `weight_params`.
double objective_value(const ModelParams& params, std::span<const BatchItem> items,
                       const HyperParams& hp, std::span<const int> permutation, bool warmup,
                       const ModelParams* weight_params = nullptr);
ModelParams objective_gradient(const ModelParams& params, std::span<const BatchItem> items,
                               const HyperParams& hp, std::span<const int> permutation,
                               bool warmup);

struct EpochLog {
  int epoch = 0;
  double l_sup = 0.0;
  double l_dis = 0.0;
  double l_con = 0.0;
  double train_acc = 0.0;
  double val_acc = 0.0;
  int full_graph_fallbacks = 0;
};

struct TrainingLog {
  std::vector<EpochLog> epochs;
  std::vector<std::string> warnings;
  int best_epoch = -1;
  double best_val_acc = -1.0;
};

// CSV: epoch,L_sup,L_dis,L_con,train_acc,val_acc
void write_training_log(std::ostream& out, const TrainingLog& log, const std::string& comment = "");

struct FitOptions {
  int threads = default_thread_count();
  std::function<void(const EpochLog&)> on_epoch;
};

struct FitResult {
  ModelParams params;        // best validation accuracy
  ModelParams final_params;  // after the last epoch
  TrainingLog log;
  std::string rng_state;
  int epochs_run = 0;
};

class TrainingDivergedError : public NonFiniteError {
 public:
  TrainingDivergedError(const std::string& what, ModelParams last_good, int epoch)
      : NonFiniteError(what), last_good_(std::move(last_good)), epoch_(epoch) {}
  const ModelParams& last_good() const { return last_good_; }
  int epoch() const { return epoch_; }

 private:
  ModelParams last_good_;
  int epoch_;
};

// Per epoch: retrieve a causal subgraph for every training graph from the
// candidate pool of its class, minimize the batch objective with Adam, then
// rebuild the pool from the updated model and score the validation split.
// The first warmup_epochs train the retrieval-free route only.
FitResult fit(const Dataset& ds, const HyperParams& hp, const FitOptions& opts = {});

}  // namespace rcgnn

#endif  // RCGNN_TRAINER_H_
