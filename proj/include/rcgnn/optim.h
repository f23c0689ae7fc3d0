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

#ifndef RCGNN_OPTIM_H_
#define RCGNN_OPTIM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rcgnn/model.h"

namespace rcgnn {

// params -= lr * grads. Throws NonFiniteError on a NaN/Inf gradient.
void sgd_step(std::span<double> params, std::span<const double> grads, double lr);
void sgd_step(ModelParams& params, const ModelParams& grads, double lr);

// Rescales grads so their global L2 norm is at most max_norm (no-op when
// max_norm <= 0). Returns the norm before rescaling.
double clip_grad_norm(std::span<double> grads, double max_norm);
double clip_grad_norm(ModelParams& grads, double max_norm);

struct AdamState {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int64_t step = 0;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
};

// Bias-corrected Adam. Moments are sized lazily on the first call.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads,
               double lr);
void adam_step(AdamState& state, ModelParams& params, const ModelParams& grads, double lr);

}  // namespace rcgnn

#endif  // RCGNN_OPTIM_H_
