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

#ifndef RCGNN_BENCHMARK_H_
#define RCGNN_BENCHMARK_H_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rcgnn/explainers.h"
#include "rcgnn/graph.h"
#include "rcgnn/metrics.h"
#include "rcgnn/trainer.h"

namespace rcgnn {

struct ReportRow {
  std::string dataset;
  std::string explainer;
  double acc_auc = 0.0;
  std::array<double, 10> acc_at_rho{};
  double recall_at_n = 0.0;
  double precision_at_n = 0.0;
  double graph_acc = 0.0;
  int n_used = 0;
  int skipped_no_gt = 0;
  uint64_t seed = 0;
};

struct MetricsReport {
  int top_n = 5;
  std::array<double, 10> rho_grid = kRhoGrid;
  std::vector<ReportRow> rows;
};

struct BenchmarkOptions {
  std::string dataset_name = "dataset";
  int top_n = 5;
  uint64_t seed = 0;
  int threads = 1;
};

// Explanations of every graph in `ids`, computed in parallel, in id order.
std::vector<Explanation> explain_all(const Dataset& ds, std::span<const int> ids,
                                     const Explainer& explainer, int threads = 1);

// Evaluates every explainer on the explain split.
MetricsReport run_benchmark(const Dataset& ds, const TrainedModel& model,
                            std::span<const Explainer> explainers, const BenchmarkOptions& opts);

void write_report_csv(std::ostream& out, const MetricsReport& report,
                      const std::string& comment = "");

// One row per edge: graph_id,edge_u,edge_v,edge_score,selected,gt. An edge is
// selected when it ranks in the top K edges, K being the explanation's node
// selection size (capped by the edge count). The gt cell is empty without a mask.
void write_explanations_csv(std::ostream& out, const Dataset& ds, std::span<const int> ids,
                            std::span<const Explanation> expls, const std::string& comment = "");

// graph_id,label,h_0..,h_c_0..,h_t_0.. where h is the shared readout over all
// nodes and h_c / h_t are the branch embeddings of the explanation split.
void write_embeddings_csv(std::ostream& out, const TrainedModel& model, const Dataset& ds,
                          std::span<const int> ids, const std::string& comment = "");

// Runs `writer` on a file stream for `path`; throws std::runtime_error naming
// the path on open or write failure.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer);

std::string format_double(double v);

}  // namespace rcgnn

#endif  // RCGNN_BENCHMARK_H_
