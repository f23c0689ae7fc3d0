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

#include "rcgnn/matching.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rcgnn/error.h"

namespace rcgnn {
namespace {

void check_k(int k, Eigen::Index rows, Eigen::Index cols) {
  if (k <= 0) throw ParameterError("match: K must be >= 1");
  if (k > rows || k > cols) {
    throw ParameterError("match: K=" + std::to_string(k) + " exceeds node count (" +
                         std::to_string(rows) + ", " + std::to_string(cols) + ")");
  }
}

MatchResult finish(const Matrix& sim, std::vector<NodePair> pairs, int k) {
  std::sort(pairs.begin(), pairs.end(),
            [](const NodePair& a, const NodePair& b) { return a.query < b.query; });
  double total = 0.0;
  for (NodePair& p : pairs) {
    p.similarity = sim(p.query, p.candidate);
    total += p.similarity;
  }
  return {std::move(pairs), total / k};
}

// Successive shortest augmenting paths on the bipartite flow network
// source -> query -> candidate -> sink with arc cost 1 - sim. After k
// augmentations the flow is a minimum-cost k-matching, i.e. a maximum
// similarity one. Dijkstra runs on reduced costs over a dense node set
// [source, query rows, candidate cols, sink].
MatchResult exact_match(const Matrix& sim, int k) {
  const int n = static_cast<int>(sim.rows());
  const int m = static_cast<int>(sim.cols());
  const int source = 0, sink = n + m + 1, total = n + m + 2;
  auto row_node = [](int i) { return 1 + i; };
  auto col_node = [n](int j) { return 1 + n + j; };
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<int> row_match(n, -1), col_match(m, -1);
  std::vector<double> pot(total, 0.0), dist(total);
  std::vector<int> parent(total);
  std::vector<char> done(total);

  for (int step = 0; step < k; ++step) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    dist[source] = 0.0;
    auto relax = [&](int u, int v, double cost) {
      const double d = dist[u] + cost + pot[u] - pot[v];
      if (!done[v] && d < dist[v]) {
        dist[v] = d;
        parent[v] = u;
      }
    };
    for (;;) {
      int u = -1;
      for (int v = 0; v < total; ++v) {
        if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[u])) u = v;
      }
      if (u < 0 || u == sink) break;
      done[u] = 1;
      if (u == source) {
        for (int i = 0; i < n; ++i) {
          if (row_match[i] < 0) relax(u, row_node(i), 0.0);
        }
      } else if (u <= n) {
        const int i = u - 1;
        for (int j = 0; j < m; ++j) {
          if (row_match[i] != j) relax(u, col_node(j), 1.0 - sim(i, j));
        }
      } else {
        const int j = u - 1 - n;
        if (col_match[j] >= 0) {
          relax(u, row_node(col_match[j]), -(1.0 - sim(col_match[j], j)));
        } else {
          relax(u, sink, 0.0);
        }
      }
    }
    if (dist[sink] == inf) throw std::logic_error("exact_match: no augmenting path");
    for (int v = 0; v < total; ++v) pot[v] += std::min(dist[v], dist[sink]);
    // Walk back from the sink; every query->candidate arc on the path becomes
    // a matched pair, displacing the reverse arcs it crosses.
    for (int v = parent[sink]; v != source;) {
      const int u = parent[v];
      if (u >= 1 && u <= n && v > n) {
        const int i = u - 1, j = v - 1 - n;
        row_match[i] = j;
        col_match[j] = i;
      }
      v = u;
    }
  }
  std::vector<NodePair> pairs;
  for (int i = 0; i < n; ++i) {
    if (row_match[i] >= 0) pairs.push_back({i, row_match[i], 0.0});
  }
  return finish(sim, std::move(pairs), k);
}

MatchResult greedy_match(const Matrix& sim, int k) {
  const int n = static_cast<int>(sim.rows());
  const int m = static_cast<int>(sim.cols());
  std::vector<int> order(static_cast<size_t>(n) * m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sim(a / m, a % m) > sim(b / m, b % m);
  });
  std::vector<char> row_used(n, 0), col_used(m, 0);
  std::vector<NodePair> pairs;
  for (int idx : order) {
    if (static_cast<int>(pairs.size()) == k) break;
    const int i = idx / m, j = idx % m;
    if (row_used[i] || col_used[j]) continue;
    row_used[i] = col_used[j] = 1;
    pairs.push_back({i, j, 0.0});
  }
  return finish(sim, std::move(pairs), k);
}

}  // namespace

double node_pair_similarity(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                            const Eigen::Ref<const Eigen::RowVectorXd>& b) {
  if (a.size() != b.size()) throw ShapeError("node_pair_similarity: dimension differs");
  return 1.0 / (1.0 + (a - b).norm());
}

Matrix similarity_matrix(const Matrix& query, const Matrix& candidate) {
  if (query.cols() != candidate.cols()) throw ShapeError("similarity_matrix: widths differ");
  Matrix sim(query.rows(), candidate.rows());
  for (Eigen::Index i = 0; i < query.rows(); ++i) {
    for (Eigen::Index j = 0; j < candidate.rows(); ++j) {
      sim(i, j) = 1.0 / (1.0 + (query.row(i) - candidate.row(j)).norm());
    }
  }
  return sim;
}

MatchResult match_similarity(const Matrix& similarity, int k, MatchMode mode) {
  check_k(k, similarity.rows(), similarity.cols());
  if (mode == MatchMode::kAuto) {
    mode = (similarity.rows() <= kExactMatchLimit && similarity.cols() <= kExactMatchLimit)
               ? MatchMode::kExact
               : MatchMode::kGreedy;
  }
  return mode == MatchMode::kExact ? exact_match(similarity, k) : greedy_match(similarity, k);
}

MatchResult match_subgraphs(const Matrix& query_emb, const Matrix& candidate_emb, int k,
                            MatchMode mode) {
  return match_similarity(similarity_matrix(query_emb, candidate_emb), k, mode);
}

MatchResult brute_force_match(const Matrix& query_emb, const Matrix& candidate_emb, int k) {
  const int n = static_cast<int>(query_emb.rows());
  const int m = static_cast<int>(candidate_emb.rows());
  if (n > kBruteForceLimit || m > kBruteForceLimit) {
    throw ParameterError("brute_force_match: graphs limited to " +
                         std::to_string(kBruteForceLimit) + " nodes");
  }
  check_k(k, n, m);
  const Matrix sim = similarity_matrix(query_emb, candidate_emb);

  double best = -1.0;
  std::vector<NodePair> best_pairs;
  std::vector<int> rows(k);
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<int> cols(m);
  for (;;) {
    // Every ordered choice of k distinct columns for the current row subset:
    // iterate permutations of all m columns and use the first k, skipping
    // duplicates of the same prefix.
    std::iota(cols.begin(), cols.end(), 0);
    do {
      double total = 0.0;
      for (int r = 0; r < k; ++r) total += sim(rows[r], cols[r]);
      if (total > best) {
        best = total;
        best_pairs.clear();
        for (int r = 0; r < k; ++r) best_pairs.push_back({rows[r], cols[r], 0.0});
      }
      std::reverse(cols.begin() + k, cols.end());
    } while (std::next_permutation(cols.begin(), cols.end()));

    int pos = k - 1;
    while (pos >= 0 && rows[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++rows[pos];
    for (int r = pos + 1; r < k; ++r) rows[r] = rows[r - 1] + 1;
  }
  return finish(sim, std::move(best_pairs), k);
}

}  // namespace rcgnn
