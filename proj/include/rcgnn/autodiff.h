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

#ifndef RCGNN_AUTODIFF_H_
#define RCGNN_AUTODIFF_H_

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rcgnn/graph.h"

namespace rcgnn::ad {

// Handle to a value recorded on a Tape.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Eager reverse-mode tape over dense matrices. Every op computes its value
// immediately; backward() replays the recorded pullbacks in reverse creation
// order. A tape built with record=false keeps values only.
class Tape {
 public:
  using Pullback = std::function<void(Tape&, const Matrix& grad_out)>;

  explicit Tape(bool record = true) : record_(record) {}

  Var constant(Matrix value);
  Var parameter(Matrix value);

  const Matrix& value(Var v) const { return nodes_[v.id].value; }
  double scalar(Var v) const { return nodes_[v.id].value(0, 0); }
  bool requires_grad(Var v) const { return nodes_[v.id].requires_grad; }

  // Gradient of the last backward() target; zero-sized when unreached.
  const Matrix& grad(Var v) const { return nodes_[v.id].grad; }
  Matrix grad_or_zero(Var v) const;

  void backward(Var loss);

  // Records a derived value. `pullback` is dropped when no parent needs a
  // gradient or the tape does not record.
  Var push(Matrix value, std::initializer_list<Var> parents, Pullback pullback);
  Var push(Matrix value, std::span<const Var> parents, Pullback pullback);

  void accumulate(Var v, const Matrix& g);

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool requires_grad = false;
    Pullback pullback;
  };
  std::vector<Node> nodes_;
  bool record_;
};

Var matmul(Tape& t, Var a, Var b);
Var matmul_transposed(Tape& t, Var a, Var b);  // a * b^T
Var add(Tape& t, Var a, Var b);
Var add_row(Tape& t, Var a, Var row);  // broadcast a 1 x k row over a's rows
Var relu(Tape& t, Var a);
Var sigmoid(Tape& t, Var a);
Var scale(Tape& t, Var a, double factor);
Var scale_rows(Tape& t, Var a, Var column);  // row i of a times column(i)

// h_i + sum_{j in N(i)} w_ij h_j over undirected edges. `edge_weights`, when
// valid, is a 1 x |edges| row of per-edge message weights; otherwise 1.
Var aggregate(Tape& t, Var h, std::span<const Edge> edges, Var edge_weights = {});

Var gather_rows(Tape& t, Var a, std::span<const int> rows);
Var gather_cols(Tape& t, Var a, std::span<const int> cols);
Var sum_rows(Tape& t, Var a);  // n x k -> 1 x k
Var concat_cols(Tape& t, Var a, Var b);
Var stack_rows(Tape& t, std::span<const Var> rows);
Var pick(Tape& t, Var a, int row, int col);  // 1 x 1

Var softmax_row(Tape& t, Var logits);  // 1 x C
// -log(max(p[y], floor)); zero gradient below the floor.
Var neg_log_prob(Tape& t, Var probs, int y, double floor);
// logsumexp(z) - z[y] on a 1 x C logit row; never saturates to a zero gradient.
Var cross_entropy_logits(Tape& t, Var logits, int y);
// (1 - p[y]^q) / q
Var generalized_ce(Tape& t, Var probs, int y, double q);

Var sum(Tape& t, std::span<const Var> scalars);
Var weighted_sum(Tape& t, std::span<const Var> scalars, std::span<const double> weights);

// (1/n) sum_i log( exp(S_ii/tau) / sum_{k != i} exp(S_ik/tau) ) for an n x n
// score matrix S.
Var positive_over_negative_log_ratio(Tape& t, Var scores, double tau);

}  // namespace rcgnn::ad

#endif  // RCGNN_AUTODIFF_H_
