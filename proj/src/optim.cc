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

#include "rcgnn/optim.h"

#include <cmath>
#include <string>

#include "rcgnn/error.h"

namespace rcgnn {
namespace {

void check_grads(std::span<const double> params, std::span<const double> grads, const char* op) {
  if (params.size() != grads.size()) throw ShapeError(std::string(op) + ": gradient size differs");
  for (size_t i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i])) {
      throw NonFiniteError(std::string(op) + ": non-finite gradient at coordinate " +
                           std::to_string(i));
    }
  }
}

}  // namespace

void sgd_step(std::span<double> params, std::span<const double> grads, double lr) {
  check_grads(params, grads, "sgd_step");
  for (size_t i = 0; i < params.size(); ++i) params[i] -= lr * grads[i];
}

void sgd_step(ModelParams& params, const ModelParams& grads, double lr) {
  std::vector<double> flat = params.flatten();
  sgd_step(flat, grads.flatten(), lr);
  params.unflatten(flat);
}

double clip_grad_norm(std::span<double> grads, double max_norm) {
  double sq = 0.0;
  for (double g : grads) sq += g * g;
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double factor = max_norm / norm;
    for (double& g : grads) g *= factor;
  }
  return norm;
}

double clip_grad_norm(ModelParams& grads, double max_norm) {
  std::vector<double> flat = grads.flatten();
  const double norm = clip_grad_norm(flat, max_norm);
  if (max_norm > 0.0 && norm > max_norm) grads.unflatten(flat);
  return norm;
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads,
               double lr) {
  check_grads(params, grads, "adam_step");
  if (state.first_moment.empty()) {
    state.first_moment.assign(params.size(), 0.0);
    state.second_moment.assign(params.size(), 0.0);
  }
  if (state.first_moment.size() != params.size()) throw ShapeError("adam_step: state size differs");
  ++state.step;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (size_t i = 0; i < params.size(); ++i) {
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = state.beta1 * m + (1.0 - state.beta1) * grads[i];
    v = state.beta2 * v + (1.0 - state.beta2) * grads[i] * grads[i];
    params[i] -= lr * (m / c1) / (std::sqrt(v / c2) + state.epsilon);
  }
}

void adam_step(AdamState& state, ModelParams& params, const ModelParams& grads, double lr) {
  std::vector<double> flat = params.flatten();
  adam_step(state, flat, grads.flatten(), lr);
  params.unflatten(flat);
  if (!params.all_finite()) throw NonFiniteError("adam_step: non-finite weight after update");
}

}  // namespace rcgnn
