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

#ifndef RCGNN_GRAD_CHECK_H_
#define RCGNN_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <span>

namespace rcgnn {

struct GradCheckResult {
  double max_relative_error = 0.0;
  size_t coordinates_checked = 0;
  size_t worst_coordinate = 0;
};

// Compares `analytic` against central differences (loss(x+eps) -
// loss(x-eps)) / 2eps on up to `max_coordinates` coordinates sampled without
// replacement. Relative error is |a-b| / max(|a|, |b|, 1e-8).
GradCheckResult grad_check(const std::function<double(std::span<const double>)>& loss,
                           std::span<const double> params, std::span<const double> analytic,
                           double eps, uint64_t seed, size_t max_coordinates = 200);

}  // namespace rcgnn

#endif  // RCGNN_GRAD_CHECK_H_
