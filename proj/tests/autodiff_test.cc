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
#include <functional>

#include <gtest/gtest.h>

#include "rcgnn/grad_check.h"
#include "rcgnn/rng.h"

namespace rcgnn::ad {
namespace {

using Builder = std::function<Var(Tape&, const std::vector<Var>&)>;

Matrix random_matrix(int rows, int cols, Rng& rng, double lo = -1.0, double hi = 1.0) {
  Matrix m(rows, cols);
  for (int i = 0; i < m.size(); ++i) m.data()[i] = lo + (hi - lo) * uniform01(rng);
  return m;
}

// Packs the inputs into one coordinate vector, differentiates `build`
// through the tape and compares with central differences.
double max_gradient_error(const Builder& build, const std::vector<Matrix>& inputs) {
  auto evaluate = [&](std::span<const double> x, std::vector<double>* grad) {
    Tape t;
    std::vector<Var> vars;
    size_t offset = 0;
    for (const Matrix& m : inputs) {
      Matrix v(m.rows(), m.cols());
      std::copy(x.begin() + offset, x.begin() + offset + m.size(), v.data());
      offset += m.size();
      vars.push_back(t.parameter(v));
    }
    Var out = build(t, vars);
    if (grad) {
      t.backward(out);
      grad->clear();
      for (Var v : vars) {
        Matrix g = t.grad_or_zero(v);
        grad->insert(grad->end(), g.data(), g.data() + g.size());
      }
    }
    return t.scalar(out);
  };
  std::vector<double> x;
  for (const Matrix& m : inputs) x.insert(x.end(), m.data(), m.data() + m.size());
  std::vector<double> analytic;
  evaluate(x, &analytic);
  auto loss = [&](std::span<const double> p) { return evaluate(p, nullptr); };
  return grad_check(loss, x, analytic, 1e-6, 1).max_relative_error;
}

// Reduces any matrix to a scalar with fixed distinct weights so every entry
// of the gradient is exercised.
Var reduce(Tape& t, Var a) {
  const Eigen::Index rows = t.value(a).rows(), cols = t.value(a).cols();
  Matrix w(cols, 1);
  for (int i = 0; i < w.rows(); ++i) w(i, 0) = 0.3 + 0.7 * i;
  Var col = matmul(t, a, t.constant(w));
  Matrix ones = Matrix::Ones(1, rows);
  for (int i = 0; i < ones.cols(); ++i) ones(0, i) = 1.0 + 0.1 * i;
  return matmul(t, t.constant(ones), col);
}

class AutodiffGradTest : public ::testing::Test {
 protected:
  Rng rng{42};
};

TEST_F(AutodiffGradTest, MatmulAndTransposed) {
  EXPECT_LT(max_gradient_error([](Tape& t, const auto& v) { return reduce(t, matmul(t, v[0], v[1])); },
                               {random_matrix(3, 4, rng), random_matrix(4, 2, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error(
                [](Tape& t, const auto& v) { return reduce(t, matmul_transposed(t, v[0], v[1])); },
                {random_matrix(3, 4, rng), random_matrix(5, 4, rng)}),
            1e-6);
}

TEST_F(AutodiffGradTest, ElementwiseOps) {
  // Inputs away from zero keep relu differentiable at every sampled point.
  Matrix a = random_matrix(3, 3, rng, 0.2, 1.0);
  a(0, 1) = -0.5;
  a(2, 2) = -0.8;
  EXPECT_LT(max_gradient_error([](Tape& t, const auto& v) { return reduce(t, relu(t, v[0])); }, {a}),
            1e-6);
  EXPECT_LT(max_gradient_error([](Tape& t, const auto& v) { return reduce(t, sigmoid(t, v[0])); },
                               {random_matrix(2, 3, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error([](Tape& t, const auto& v) { return reduce(t, scale(t, v[0], -2.5)); },
                               {random_matrix(2, 3, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error([](Tape& t, const auto& v) { return reduce(t, add(t, v[0], v[1])); },
                               {random_matrix(2, 3, rng), random_matrix(2, 3, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error([](Tape& t, const auto& v) { return reduce(t, add_row(t, v[0], v[1])); },
                               {random_matrix(4, 3, rng), random_matrix(1, 3, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error(
                [](Tape& t, const auto& v) { return reduce(t, scale_rows(t, v[0], v[1])); },
                {random_matrix(4, 3, rng), random_matrix(4, 1, rng)}),
            1e-6);
}

TEST_F(AutodiffGradTest, StructuralOps) {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};
  EXPECT_LT(max_gradient_error(
                [&](Tape& t, const auto& v) { return reduce(t, aggregate(t, v[0], edges, v[1])); },
                {random_matrix(4, 3, rng), random_matrix(1, 5, rng)}),
            1e-6);
  const std::vector<int> rows = {2, 0, 2};
  EXPECT_LT(max_gradient_error(
                [&](Tape& t, const auto& v) { return reduce(t, gather_rows(t, v[0], rows)); },
                {random_matrix(4, 3, rng)}),
            1e-6);
  const std::vector<int> cols = {1, 3};
  EXPECT_LT(max_gradient_error(
                [&](Tape& t, const auto& v) { return reduce(t, gather_cols(t, v[0], cols)); },
                {random_matrix(2, 4, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error([](Tape& t, const auto& v) { return reduce(t, sum_rows(t, v[0])); },
                               {random_matrix(4, 3, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error(
                [](Tape& t, const auto& v) { return reduce(t, concat_cols(t, v[0], v[1])); },
                {random_matrix(1, 3, rng), random_matrix(1, 2, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error(
                [](Tape& t, const auto& v) {
                  std::vector<Var> rows_in = {v[0], v[1], v[0]};
                  return reduce(t, stack_rows(t, rows_in));
                },
                {random_matrix(1, 3, rng), random_matrix(1, 3, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error([](Tape& t, const auto& v) { return pick(t, v[0], 1, 2); },
                               {random_matrix(2, 3, rng)}),
            1e-6);
}

TEST_F(AutodiffGradTest, LossOps) {
  EXPECT_LT(max_gradient_error(
                [](Tape& t, const auto& v) { return neg_log_prob(t, softmax_row(t, v[0]), 1, 1e-12); },
                {random_matrix(1, 3, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error(
                [](Tape& t, const auto& v) { return cross_entropy_logits(t, v[0], 2); },
                {random_matrix(1, 4, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error(
                [](Tape& t, const auto& v) { return generalized_ce(t, softmax_row(t, v[0]), 0, 0.7); },
                {random_matrix(1, 3, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error(
                [](Tape& t, const auto& v) {
                  std::vector<Var> s = {pick(t, v[0], 0, 0), pick(t, v[0], 0, 1)};
                  std::vector<double> w = {0.25, -3.0};
                  return add(t, weighted_sum(t, s, w), sum(t, s));
                },
                {random_matrix(1, 2, rng)}),
            1e-6);
  EXPECT_LT(max_gradient_error(
                [](Tape& t, const auto& v) {
                  return positive_over_negative_log_ratio(t, matmul_transposed(t, v[0], v[1]), 0.5);
                },
                {random_matrix(3, 2, rng), random_matrix(3, 2, rng)}),
            1e-6);
}

TEST(AutodiffTest, CrossEntropyLogitsValue) {
  Tape t;
  Matrix z(1, 2);
  z << std::log(2.0), 0.0;
  Var v = cross_entropy_logits(t, t.parameter(z), 0);
  EXPECT_NEAR(t.scalar(v), -std::log(2.0 / 3.0), 1e-12);
  // Extreme logits keep a nonzero gradient.
  Tape t2;
  Matrix far(1, 2);
  far << -200.0, 200.0;
  Var p = t2.parameter(far);
  t2.backward(cross_entropy_logits(t2, p, 0));
  EXPECT_NEAR(t2.grad(p)(0, 0), -1.0, 1e-12);
}

TEST(AutodiffTest, NonRecordingTapeKeepsValues) {
  Tape t(false);
  Var a = t.parameter(Matrix::Constant(2, 2, 3.0));
  Var b = scale(t, a, 2.0);
  EXPECT_DOUBLE_EQ(t.value(b)(1, 1), 6.0);
}

TEST(AutodiffTest, UnreachedParameterHasZeroGradient) {
  Tape t;
  Var a = t.parameter(Matrix::Ones(1, 1));
  Var b = t.parameter(Matrix::Ones(2, 2));
  t.backward(scale(t, a, 3.0));
  EXPECT_DOUBLE_EQ(t.grad(a)(0, 0), 3.0);
  EXPECT_TRUE(t.grad_or_zero(b).isZero());
  EXPECT_EQ(t.grad_or_zero(b).rows(), 2);
}

}  // namespace
}  // namespace rcgnn::ad
