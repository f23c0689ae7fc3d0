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

#ifndef RCGNN_HYPERPARAMS_H_
#define RCGNN_HYPERPARAMS_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "rcgnn/model.h"
#include "rcgnn/provenance.h"

namespace rcgnn {

enum class ContrastiveMode {
  kPermute,  // in-batch swap of trivial embeddings with label swap
  kInfoNce,  // positive/negative log-ratio over causal-trivial pairs
};

enum class Variant {
  kFull,
  kNoRetriever,  // learned linear node scorer instead of retrieval
  kNoCausal,     // single-branch CE on the retrieved subgraph
  kNoDisCon,     // lambda1 = lambda2 = 0
};

std::string_view to_string(ContrastiveMode mode);
std::string_view to_string(Variant variant);
ContrastiveMode parse_contrastive_mode(std::string_view text);
Variant parse_variant(std::string_view text);

struct HyperParams {
  double beta = 1.0;  // information-bottleneck trade-off; recorded, not used
  double q = 0.7;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double threshold = 0.4;
  double tau = 1.0;
  double ratio = 0.3;
  double lr = 3e-3;
  double grad_clip = 1.0;  // global gradient-norm cap; 0 disables
  int epochs = 100;
  int batch_size = 32;
  int warmup_epochs = 20;
  uint64_t seed = 0;
  ContrastiveMode contrastive_mode = ContrastiveMode::kPermute;
  bool gce_on_trivial = false;
  int candidate_max = 64;
  Variant variant = Variant::kFull;
  int hidden_dim = 32;
  int num_layers = 2;

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

// Throws ParameterError naming the first offending field.
void validate(const HyperParams& hp);

// Every field as a string, keyed by the same names the config file and the
// command line use (e.g. "lambda1", "contrastive_mode").
ConfigMap to_config_map(const HyperParams& hp);

// Overrides fields named in `config`; unknown keys throw ParameterError.
// Keys outside the hyperparameter set are ignored when `allow_unknown`.
HyperParams apply_config(HyperParams hp, const ConfigMap& config, bool allow_unknown = false);

}  // namespace rcgnn

#endif  // RCGNN_HYPERPARAMS_H_
