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

#ifndef RCGNN_ABLATION_H_
#define RCGNN_ABLATION_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rcgnn/graph.h"
#include "rcgnn/hyperparams.h"
#include "rcgnn/trainer.h"

namespace rcgnn {

inline constexpr std::array<Variant, 4> kAllVariants = {Variant::kFull, Variant::kNoRetriever,
                                                        Variant::kNoCausal, Variant::kNoDisCon};

struct AblationResult {
  Variant variant = Variant::kFull;
  uint64_t seed = 0;
  double test_acc = 0.0;
  double acc_auc = 0.0;
  double recall_at_n = 0.0;
  double precision_at_n = 0.0;
};

// Hyperparameters the variant trains with: no_dis_con zeroes both lambdas.
HyperParams variant_hyperparams(HyperParams hp, Variant variant);

struct AblationOptions {
  int top_n = 5;
  int threads = 1;
};

// Trains `variant` on ds and scores it on the test (= explain) split with the
// variant's own explanations.
AblationResult ablate(const Dataset& ds, const HyperParams& hp, Variant variant,
                      const AblationOptions& opts = {});

// variant,seed,test_acc,acc_auc,recall@N,precision@N
void write_ablation_csv(std::ostream& out, const std::vector<AblationResult>& rows, int top_n,
                        const std::string& comment = "");

}  // namespace rcgnn

#endif  // RCGNN_ABLATION_H_
