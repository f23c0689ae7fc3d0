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

#include "rcgnn/autodiff.h"

#include <cmath>

#include "rcgnn/error.h"

namespace rcgnn::ad {
namespace {

void require(bool ok, const char* op, const char* what) {
  if (!ok) throw ShapeError(std::string(op) + ": " + what);
}

}  // namespace

Var Tape::constant(Matrix value) {
  nodes_.push_back({std::move(value), Matrix(), false, nullptr});
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Var Tape::parameter(Matrix value) {
  nodes_.push_back({std::move(value), Matrix(), record_, nullptr});
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Matrix Tape::grad_or_zero(Var v) const {
  const Node& n = nodes_[v.id];
  if (n.grad.size() == 0) return Matrix::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

Var Tape::push(Matrix value, std::initializer_list<Var> parents, Pullback pullback) {
  return push(std::move(value), std::span<const Var>(parents.begin(), parents.size()),
              std::move(pullback));
}

Var Tape::push(Matrix value, std::span<const Var> parents, Pullback pullback) {
  bool needs = false;
  if (record_) {
    for (Var p : parents) needs = needs || nodes_[p.id].requires_grad;
  }
  nodes_.push_back({std::move(value), Matrix(), needs, needs ? std::move(pullback) : nullptr});
  return Var{static_cast<int>(nodes_.size()) - 1};
}

void Tape::accumulate(Var v, const Matrix& g) {
  Node& n = nodes_[v.id];
  if (!n.requires_grad) return;
  if (n.grad.size() == 0) {
    n.grad = g;
  } else {
    n.grad += g;
  }
}

void Tape::backward(Var loss) {
  require(record_, "backward", "tape does not record");
  for (Node& n : nodes_) n.grad.resize(0, 0);
  const Node& target = nodes_[loss.id];
  require(target.value.size() == 1, "backward", "loss must be a scalar");
  if (!target.requires_grad) return;
  nodes_[loss.id].grad = Matrix::Ones(1, 1);
  for (int i = loss.id; i >= 0; --i) {
    Node& n = nodes_[i];
    if (n.pullback && n.grad.size() != 0) n.pullback(*this, n.grad);
  }
}

Var matmul(Tape& t, Var a, Var b) {
  require(t.value(a).cols() == t.value(b).rows(), "matmul", "inner dimensions differ");
  return t.push(t.value(a) * t.value(b), {a, b}, [a, b](Tape& t, const Matrix& g) {
    t.accumulate(a, g * t.value(b).transpose());
    t.accumulate(b, t.value(a).transpose() * g);
  });
}

Var matmul_transposed(Tape& t, Var a, Var b) {
  require(t.value(a).cols() == t.value(b).cols(), "matmul_transposed", "widths differ");
  return t.push(t.value(a) * t.value(b).transpose(), {a, b}, [a, b](Tape& t, const Matrix& g) {
    t.accumulate(a, g * t.value(b));
    t.accumulate(b, g.transpose() * t.value(a));
  });
}

Var add(Tape& t, Var a, Var b) {
  require(t.value(a).rows() == t.value(b).rows() && t.value(a).cols() == t.value(b).cols(), "add",
          "shapes differ");
  return t.push(t.value(a) + t.value(b), {a, b}, [a, b](Tape& t, const Matrix& g) {
    t.accumulate(a, g);
    t.accumulate(b, g);
  });
}

Var add_row(Tape& t, Var a, Var row) {
  require(t.value(row).rows() == 1 && t.value(row).cols() == t.value(a).cols(), "add_row",
          "row must be 1 x cols(a)");
  Matrix out = t.value(a).rowwise() + t.value(row).row(0);
  return t.push(std::move(out), {a, row}, [a, row](Tape& t, const Matrix& g) {
    t.accumulate(a, g);
    t.accumulate(row, g.colwise().sum());
  });
}

Var relu(Tape& t, Var a) {
  return t.push(t.value(a).cwiseMax(0.0), {a}, [a](Tape& t, const Matrix& g) {
    t.accumulate(a, (t.value(a).array() > 0.0).cast<double>().matrix().cwiseProduct(g));
  });
}

Var sigmoid(Tape& t, Var a) {
  Matrix s = (1.0 / (1.0 + (-t.value(a).array()).exp())).matrix();
  return t.push(std::move(s), {a}, [a](Tape& t, const Matrix& g) {
    Matrix sv = (1.0 / (1.0 + (-t.value(a).array()).exp())).matrix();
    t.accumulate(a, (sv.array() * (1.0 - sv.array()) * g.array()).matrix());
  });
}

Var scale(Tape& t, Var a, double factor) {
  return t.push(t.value(a) * factor, {a}, [a, factor](Tape& t, const Matrix& g) {
    t.accumulate(a, g * factor);
  });
}

Var scale_rows(Tape& t, Var a, Var column) {
  require(t.value(column).cols() == 1 && t.value(column).rows() == t.value(a).rows(),
          "scale_rows", "column must be rows(a) x 1");
  Matrix out = t.value(column).col(0).asDiagonal() * t.value(a);
  return t.push(std::move(out), {a, column}, [a, column](Tape& t, const Matrix& g) {
    t.accumulate(a, t.value(column).col(0).asDiagonal() * g);
    t.accumulate(column, g.cwiseProduct(t.value(a)).rowwise().sum());
  });
}

Var aggregate(Tape& t, Var h, std::span<const Edge> edges, Var edge_weights) {
  const Matrix& hv = t.value(h);
  const bool weighted = edge_weights.valid();
  if (weighted) {
    require(t.value(edge_weights).rows() == 1 &&
                t.value(edge_weights).cols() == static_cast<int>(edges.size()),
            "aggregate", "edge weights must be 1 x |edges|");
  }
  Matrix out = hv;
  for (size_t k = 0; k < edges.size(); ++k) {
    const double w = weighted ? t.value(edge_weights)(0, k) : 1.0;
    out.row(edges[k].u) += w * hv.row(edges[k].v);
    out.row(edges[k].v) += w * hv.row(edges[k].u);
  }
  std::vector<Edge> edge_copy(edges.begin(), edges.end());
  std::vector<Var> parents = {h};
  if (weighted) parents.push_back(edge_weights);
  return t.push(std::move(out), parents,
                [h, edge_weights, weighted, edge_copy = std::move(edge_copy)](Tape& t,
                                                                              const Matrix& g) {
                  const Matrix& hv = t.value(h);
                  if (t.requires_grad(h)) {
                    Matrix gh = g;
                    for (size_t k = 0; k < edge_copy.size(); ++k) {
                      const double w = weighted ? t.value(edge_weights)(0, k) : 1.0;
                      gh.row(edge_copy[k].v) += w * g.row(edge_copy[k].u);
                      gh.row(edge_copy[k].u) += w * g.row(edge_copy[k].v);
                    }
                    t.accumulate(h, gh);
                  }
                  if (weighted && t.requires_grad(edge_weights)) {
                    Matrix gw(1, edge_copy.size());
                    for (size_t k = 0; k < edge_copy.size(); ++k) {
                      const Edge& e = edge_copy[k];
                      gw(0, k) = g.row(e.u).dot(hv.row(e.v)) + g.row(e.v).dot(hv.row(e.u));
                    }
                    t.accumulate(edge_weights, gw);
                  }
                });
}

Var gather_rows(Tape& t, Var a, std::span<const int> rows) {
  const Matrix& av = t.value(a);
  Matrix out(rows.size(), av.cols());
  for (size_t i = 0; i < rows.size(); ++i) {
    require(rows[i] >= 0 && rows[i] < av.rows(), "gather_rows", "row out of range");
    out.row(i) = av.row(rows[i]);
  }
  std::vector<int> idx(rows.begin(), rows.end());
  return t.push(std::move(out), {a}, [a, idx = std::move(idx)](Tape& t, const Matrix& g) {
    Matrix ga = Matrix::Zero(t.value(a).rows(), t.value(a).cols());
    for (size_t i = 0; i < idx.size(); ++i) ga.row(idx[i]) += g.row(i);
    t.accumulate(a, ga);
  });
}

Var gather_cols(Tape& t, Var a, std::span<const int> cols) {
  const Matrix& av = t.value(a);
  Matrix out(av.rows(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    require(cols[j] >= 0 && cols[j] < av.cols(), "gather_cols", "column out of range");
    out.col(j) = av.col(cols[j]);
  }
  std::vector<int> idx(cols.begin(), cols.end());
  return t.push(std::move(out), {a}, [a, idx = std::move(idx)](Tape& t, const Matrix& g) {
    Matrix ga = Matrix::Zero(t.value(a).rows(), t.value(a).cols());
    for (size_t j = 0; j < idx.size(); ++j) ga.col(idx[j]) += g.col(j);
    t.accumulate(a, ga);
  });
}

Var sum_rows(Tape& t, Var a) {
  return t.push(t.value(a).colwise().sum(), {a}, [a](Tape& t, const Matrix& g) {
    t.accumulate(a, g.replicate(t.value(a).rows(), 1));
  });
}

Var concat_cols(Tape& t, Var a, Var b) {
  const Matrix& av = t.value(a);
  const Matrix& bv = t.value(b);
  require(av.rows() == bv.rows(), "concat_cols", "row counts differ");
  Matrix out(av.rows(), av.cols() + bv.cols());
  out << av, bv;
  const auto split = av.cols();
  return t.push(std::move(out), {a, b}, [a, b, split](Tape& t, const Matrix& g) {
    t.accumulate(a, g.leftCols(split));
    t.accumulate(b, g.rightCols(g.cols() - split));
  });
}

Var stack_rows(Tape& t, std::span<const Var> rows) {
  require(!rows.empty(), "stack_rows", "no rows");
  const auto width = t.value(rows[0]).cols();
  Matrix out(rows.size(), width);
  for (size_t i = 0; i < rows.size(); ++i) {
    require(t.value(rows[i]).rows() == 1 && t.value(rows[i]).cols() == width, "stack_rows",
            "inputs must be 1 x k");
    out.row(i) = t.value(rows[i]);
  }
  std::vector<Var> parents(rows.begin(), rows.end());
  return t.push(std::move(out), rows, [parents](Tape& t, const Matrix& g) {
    for (size_t i = 0; i < parents.size(); ++i) t.accumulate(parents[i], g.row(i));
  });
}

Var pick(Tape& t, Var a, int row, int col) {
  Matrix out(1, 1);
  out(0, 0) = t.value(a)(row, col);
  return t.push(std::move(out), {a}, [a, row, col](Tape& t, const Matrix& g) {
    Matrix ga = Matrix::Zero(t.value(a).rows(), t.value(a).cols());
    ga(row, col) = g(0, 0);
    t.accumulate(a, ga);
  });
}

Var softmax_row(Tape& t, Var logits) {
  const Matrix& z = t.value(logits);
  require(z.rows() == 1, "softmax_row", "logits must be a row");
  Matrix p = (z.array() - z.maxCoeff()).exp().matrix();
  p /= p.sum();
  return t.push(p, {logits}, [logits, p](Tape& t, const Matrix& g) {
    const double inner = g.cwiseProduct(p).sum();
    t.accumulate(logits, (p.array() * (g.array() - inner)).matrix());
  });
}

Var neg_log_prob(Tape& t, Var probs, int y, double floor) {
  const double p = t.value(probs)(0, y);
  const bool clamped = !(p > floor);
  Matrix out(1, 1);
  out(0, 0) = -std::log(clamped ? floor : p);
  return t.push(std::move(out), {probs}, [probs, y, p, clamped](Tape& t, const Matrix& g) {
    if (clamped) return;
    Matrix gp = Matrix::Zero(1, t.value(probs).cols());
    gp(0, y) = -g(0, 0) / p;
    t.accumulate(probs, gp);
  });
}

Var cross_entropy_logits(Tape& t, Var logits, int y) {
  const Matrix& z = t.value(logits);
  require(z.rows() == 1, "cross_entropy_logits", "logits must be a row");
  require(y >= 0 && y < z.cols(), "cross_entropy_logits", "class out of range");
  const double m = z.maxCoeff();
  Matrix p = (z.array() - m).exp().matrix();
  const double total = p.sum();
  p /= total;
  Matrix out(1, 1);
  out(0, 0) = m + std::log(total) - z(0, y);
  return t.push(std::move(out), {logits}, [logits, y, p](Tape& t, const Matrix& g) {
    Matrix d = p;
    d(0, y) -= 1.0;
    t.accumulate(logits, g(0, 0) * d);
  });
}

Var generalized_ce(Tape& t, Var probs, int y, double q) {
  const double p = t.value(probs)(0, y);
  Matrix out(1, 1);
  out(0, 0) = (1.0 - std::pow(p, q)) / q;
  return t.push(std::move(out), {probs}, [probs, y, p, q](Tape& t, const Matrix& g) {
    if (!(p > 0.0)) return;
    Matrix gp = Matrix::Zero(1, t.value(probs).cols());
    gp(0, y) = -g(0, 0) * std::pow(p, q - 1.0);
    t.accumulate(probs, gp);
  });
}

Var sum(Tape& t, std::span<const Var> scalars) {
  std::vector<double> ones(scalars.size(), 1.0);
  return weighted_sum(t, scalars, ones);
}

Var weighted_sum(Tape& t, std::span<const Var> scalars, std::span<const double> weights) {
  require(scalars.size() == weights.size(), "weighted_sum", "weight count differs");
  Matrix out = Matrix::Zero(1, 1);
  for (size_t i = 0; i < scalars.size(); ++i) out(0, 0) += weights[i] * t.scalar(scalars[i]);
  std::vector<Var> parents(scalars.begin(), scalars.end());
  std::vector<double> w(weights.begin(), weights.end());
  return t.push(std::move(out), scalars, [parents, w](Tape& t, const Matrix& g) {
    for (size_t i = 0; i < parents.size(); ++i) t.accumulate(parents[i], g * w[i]);
  });
}

Var positive_over_negative_log_ratio(Tape& t, Var scores, double tau) {
  const Matrix& s = t.value(scores);
  const auto n = s.rows();
  require(n == s.cols() && n >= 2, "positive_over_negative_log_ratio",
          "scores must be square with n >= 2");
  // Row-wise softmax over the off-diagonal entries, kept for the pullback.
  Matrix neg_softmax = Matrix::Zero(n, n);
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double top = -INFINITY;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k != i) top = std::max(top, s(i, k) / tau);
    }
    double z = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == i) continue;
      neg_softmax(i, k) = std::exp(s(i, k) / tau - top);
      z += neg_softmax(i, k);
    }
    neg_softmax.row(i) /= z;
    total += s(i, i) / tau - (top + std::log(z));
  }
  Matrix out(1, 1);
  out(0, 0) = total / static_cast<double>(n);
  return t.push(std::move(out), {scores}, [scores, neg_softmax, tau, n](Tape& t, const Matrix& g) {
    const double c = g(0, 0) / (static_cast<double>(n) * tau);
    Matrix gs = -c * neg_softmax;
    for (Eigen::Index i = 0; i < n; ++i) gs(i, i) = c;
    t.accumulate(scores, gs);
  });
}

}  // namespace rcgnn::ad
