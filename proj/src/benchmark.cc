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

#include "rcgnn/benchmark.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "rcgnn/parallel.h"

namespace rcgnn {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

std::vector<Explanation> explain_all(const Dataset& ds, std::span<const int> ids,
                                     const Explainer& explainer, int threads) {
  std::vector<Explanation> out(ids.size());
  parallel_for(ids.size(), threads,
               [&](size_t i) { out[i] = explainer.explain(ds.graph(ids[i])); });
  return out;
}

MetricsReport run_benchmark(const Dataset& ds, const TrainedModel& model,
                            std::span<const Explainer> explainers, const BenchmarkOptions& opts) {
  MetricsReport report;
  report.top_n = opts.top_n;
  const std::vector<int>& ids = ds.splits.explain;
  std::vector<const Graph*> graphs;
  graphs.reserve(ids.size());
  for (int id : ids) graphs.push_back(&ds.graph(id));
  const double graph_acc = accuracy(model, ds, ids, opts.threads);

  for (const Explainer& explainer : explainers) {
    const std::vector<Explanation> expls = explain_all(ds, ids, explainer, opts.threads);
    ReportRow row;
    row.dataset = opts.dataset_name;
    row.explainer = explainer.name;
    row.acc_at_rho = acc_curve(model.params, graphs, expls, opts.threads);
    row.acc_auc = acc_auc(row.acc_at_rho);
    const RankingMetrics rm = ranking_metrics(graphs, expls, opts.top_n);
    row.recall_at_n = rm.recall;
    row.precision_at_n = rm.precision;
    row.n_used = static_cast<int>(ids.size());
    row.skipped_no_gt = rm.skipped;
    row.graph_acc = graph_acc;
    row.seed = opts.seed;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_report_csv(std::ostream& out, const MetricsReport& report, const std::string& comment) {
  if (!comment.empty()) out << comment << '\n';
  out << "dataset,explainer,acc_auc";
  for (double rho : report.rho_grid) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.1f", rho);
    out << ",acc@" << buf;
  }
  out << ",recall@" << report.top_n << ",precision@" << report.top_n << ",graph_acc,n,seed\n";
  for (const ReportRow& r : report.rows) {
    out << r.dataset << ',' << r.explainer << ',' << format_double(r.acc_auc);
    for (double a : r.acc_at_rho) out << ',' << format_double(a);
    out << ',' << format_double(r.recall_at_n) << ',' << format_double(r.precision_at_n) << ','
        << format_double(r.graph_acc) << ',' << r.n_used << ',' << r.seed << '\n';
  }
}

void write_explanations_csv(std::ostream& out, const Dataset& ds, std::span<const int> ids,
                            std::span<const Explanation> expls, const std::string& comment) {
  if (ids.size() != expls.size()) throw ShapeError("write_explanations_csv: size mismatch");
  if (!comment.empty()) out << comment << '\n';
  out << "graph_id,edge_u,edge_v,edge_score,selected,gt\n";
  for (size_t i = 0; i < ids.size(); ++i) {
    const Graph& g = ds.graph(ids[i]);
    const Explanation& e = expls[i];
    const std::vector<int> ranked = rank_edges(e.edge_scores);
    const int k = std::min<int>(static_cast<int>(e.selected_nodes.size()), g.edge_count());
    std::vector<char> selected(g.edge_count(), 0);
    for (int r = 0; r < k; ++r) selected[ranked[r]] = 1;
    for (int j = 0; j < g.edge_count(); ++j) {
      out << g.graph_id << ',' << g.edges[j].u << ',' << g.edges[j].v << ','
          << format_double(e.edge_scores(j)) << ',' << int(selected[j]) << ',';
      if (g.gt_edge_mask) out << int((*g.gt_edge_mask)[j]);
      out << '\n';
    }
  }
}

void write_embeddings_csv(std::ostream& out, const TrainedModel& model, const Dataset& ds,
                          std::span<const int> ids, const std::string& comment) {
  const int d = model.params.config.hidden_dim;
  if (!comment.empty()) out << comment << '\n';
  out << "graph_id,label";
  for (const char* prefix : {"h_", "h_c_", "h_t_"}) {
    for (int k = 0; k < d; ++k) out << ',' << prefix << k;
  }
  out << '\n';
  std::vector<std::string> lines(ids.size());
  parallel_for(ids.size(), default_thread_count(), [&](size_t i) {
    const Graph& g = ds.graph(ids[i]);
    const Vector h = readout(encode(model.params, g));
    const BranchOutputs b =
        encode_branches(model.params, g, explain_graph(model, g), model.hp.variant);
    std::string line = std::to_string(g.graph_id) + ',' + std::to_string(g.label);
    for (int k = 0; k < d; ++k) line += ',' + format_double(h(k));
    for (int k = 0; k < d; ++k) line += ',' + format_double(b.h_c(k));
    for (int k = 0; k < d; ++k) line += ',' + format_double(b.h_t(k));
    lines[i] = std::move(line);
  });
  for (const std::string& l : lines) out << l << '\n';
}

}  // namespace rcgnn
