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

#include "rcgnn/losses.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rcgnn/error.h"
#include "rcgnn/rng.h"

namespace rcgnn {
namespace {

Vector concat(const Vector& a, const Vector& b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

}  // namespace

double cross_entropy(const Vector& probs, int y) {
  return -std::log(std::max(probs(y), kProbFloor));
}

double gce_loss(const Vector& probs, int y, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw ParameterError("gce_loss: q must be in (0,1]");
  return (1.0 - std::pow(probs(y), q)) / q;
}

double disentangle_weight(double ce_c, double ce_t) {
  const double denom = ce_c + ce_t;
  if (denom <= 0.0) return 0.5;
  return ce_c / denom;
}

double dis_loss(const Vector& probs_c, const Vector& probs_t, int y, double q,
                bool gce_on_trivial) {
  const double ce_c = cross_entropy(probs_c, y);
  const double w = disentangle_weight(ce_c, cross_entropy(probs_t, y));
  return w * ce_c + gce_loss(gce_on_trivial ? probs_t : probs_c, y, q);
}

double total_loss(double sup, double dis, double con, double lambda1, double lambda2) {
  return sup + lambda1 * dis + lambda2 * con;
}

std::vector<int> derangement(int n, uint64_t seed) {
  if (n < 2) throw ParameterError("derangement: need at least two elements");
  Rng rng(seed);
  std::vector<int> perm(n);
  for (;;) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[uniform_index(rng, i + 1)]);
    bool fixed = false;
    for (int i = 0; i < n && !fixed; ++i) fixed = perm[i] == i;
    if (!fixed) return perm;
  }
}

IntervenedBatch apply_permutation(std::span<const BranchOutputs> batch,
                                  std::span<const int> permutation) {
  if (permutation.size() != batch.size()) throw ShapeError("permutation size differs from batch");
  IntervenedBatch out;
  out.permutation.assign(permutation.begin(), permutation.end());
  for (size_t i = 0; i < batch.size(); ++i) {
    const BranchOutputs& src = batch[permutation[i]];
    out.h_c.push_back(batch[i].h_c);
    out.h_t_hat.push_back(src.h_t);
    out.labels.push_back(batch[i].label);
    out.swapped_labels.push_back(src.label);
    out.weights.push_back(batch[i].weight());
  }
  return out;
}

IntervenedBatch permute_trivial(std::span<const BranchOutputs> batch, uint64_t seed) {
  if (batch.size() < 2) throw ParameterError("permute_trivial: batch size must be >= 2");
  const std::vector<int> perm = derangement(static_cast<int>(batch.size()), seed);
  return apply_permutation(batch, perm);
}

double contrastive_loss(const IntervenedBatch& batch, const Dense& causal_head,
                        const Dense& trivial_head, double q) {
  const size_t n = batch.h_c.size();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Vector hp = concat(batch.h_c[i], batch.h_t_hat[i]);
    total += batch.weights[i] * cross_entropy(classify(causal_head, hp), batch.labels[i]) +
             gce_loss(classify(trivial_head, hp), batch.swapped_labels[i], q);
  }
  return total / static_cast<double>(n);
}

double infonce_loss(std::span<const Vector> h_c, std::span<const Vector> h_t, double tau) {
  const size_t n = h_c.size();
  if (n < 2 || h_t.size() != n) throw ParameterError("infonce_loss: need n >= 2 matched pairs");
  if (!(tau > 0.0)) throw ParameterError("infonce_loss: tau must be > 0");
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double top = -INFINITY;
    for (size_t k = 0; k < n; ++k) {
      if (k != i) top = std::max(top, h_c[i].dot(h_t[k]) / tau);
    }
    double z = 0.0;
    for (size_t k = 0; k < n; ++k) {
      if (k != i) z += std::exp(h_c[i].dot(h_t[k]) / tau - top);
    }
    total += h_c[i].dot(h_t[i]) / tau - (top + std::log(z));
  }
  return total / static_cast<double>(n);
}

}  // namespace rcgnn
