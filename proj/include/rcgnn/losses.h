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

#ifndef RCGNN_LOSSES_H_
#define RCGNN_LOSSES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rcgnn/graph.h"
#include "rcgnn/model.h"

namespace rcgnn {

// Probability floor inside every log, shared by CE and GCE.
inline constexpr double kProbFloor = 1e-12;

// -log(max(p[y], kProbFloor)).
double cross_entropy(const Vector& probs, int y);

// (1 - p[y]^q) / q.
double gce_loss(const Vector& probs, int y, double q);

// ce_c / (ce_t + ce_c); 0.5 when both are zero.
double disentangle_weight(double ce_c, double ce_t);

// W * CE(probs_c, y) + GCE(target, y) where target is probs_c, or probs_t
// when gce_on_trivial. W is a constant weight computed from both branches.
double dis_loss(const Vector& probs_c, const Vector& probs_t, int y, double q,
                bool gce_on_trivial = false);

double total_loss(double sup, double dis, double con, double lambda1, double lambda2);

// Uniformly drawn permutation of [0, n) without fixed points; n >= 2.
std::vector<int> derangement(int n, uint64_t seed);

// Per-graph output of the two branches.
struct BranchOutputs {
  Vector h_c;
  Vector h_t;
  Vector probs_c;  // C_c([h_c; h_t])
  Vector probs_t;  // C_t([h_c; h_t])
  double ce_c = 0.0;
  double ce_t = 0.0;
  int label = 0;

  double weight() const { return disentangle_weight(ce_c, ce_t); }
};

// Batch after swapping trivial embeddings: graph i keeps h_c[i] and receives
// h_t[perm[i]] together with label[perm[i]].
struct IntervenedBatch {
  std::vector<int> permutation;
  std::vector<Vector> h_c;
  std::vector<Vector> h_t_hat;
  std::vector<int> labels;
  std::vector<int> swapped_labels;
  std::vector<double> weights;  // W of the unintervened pass
};

// Throws ParameterError for fewer than two graphs.
IntervenedBatch permute_trivial(std::span<const BranchOutputs> batch, uint64_t seed);
IntervenedBatch apply_permutation(std::span<const BranchOutputs> batch,
                                  std::span<const int> permutation);

// Mean over the batch of W * CE(C_c([h_c; h_t_hat]), y) + GCE(C_t([h_c; h_t_hat]), y').
double contrastive_loss(const IntervenedBatch& batch, const Dense& causal_head,
                        const Dense& trivial_head, double q);

// (1/n) sum_i log( exp(<h_c[i], h_t[i]>/tau) / sum_{k != i} exp(<h_c[i], h_t[k]>/tau) ).
double infonce_loss(std::span<const Vector> h_c, std::span<const Vector> h_t, double tau);

}  // namespace rcgnn

#endif  // RCGNN_LOSSES_H_
