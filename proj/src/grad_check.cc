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

#include "rcgnn/grad_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rcgnn/error.h"
#include "rcgnn/rng.h"

namespace rcgnn {

GradCheckResult grad_check(const std::function<double(std::span<const double>)>& loss,
                           std::span<const double> params, std::span<const double> analytic,
                           double eps, uint64_t seed, size_t max_coordinates) {
  if (params.size() != analytic.size()) throw ShapeError("grad_check: gradient size differs");
  std::vector<size_t> coords(params.size());
  std::iota(coords.begin(), coords.end(), 0);
  Rng rng(seed);
  const size_t take = std::min(max_coordinates, coords.size());
  for (size_t i = 0; i < take; ++i) {
    std::swap(coords[i], coords[i + uniform_index(rng, coords.size() - i)]);
  }
  coords.resize(take);
  std::sort(coords.begin(), coords.end());

  GradCheckResult result;
  std::vector<double> x(params.begin(), params.end());
  for (size_t c : coords) {
    const double saved = x[c];
    x[c] = saved + eps;
    const double up = loss(x);
    x[c] = saved - eps;
    const double down = loss(x);
    x[c] = saved;
    const double numeric = (up - down) / (2.0 * eps);
    const double a = analytic[c];
    const double rel =
        std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-8});
    if (rel > result.max_relative_error || result.coordinates_checked == 0) {
      if (rel >= result.max_relative_error) {
        result.max_relative_error = rel;
        result.worst_coordinate = c;
      }
    }
    ++result.coordinates_checked;
  }
  return result;
}

}  // namespace rcgnn
