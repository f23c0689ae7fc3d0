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

#include "rcgnn/ablation.h"

#include <ostream>

#include "rcgnn/benchmark.h"
#include "rcgnn/explainers.h"
#include "rcgnn/metrics.h"

namespace rcgnn {

HyperParams variant_hyperparams(HyperParams hp, Variant variant) {
  hp.variant = variant;
  if (variant == Variant::kNoDisCon) {
    hp.lambda1 = 0.0;
    hp.lambda2 = 0.0;
  }
  return hp;
}

AblationResult ablate(const Dataset& ds, const HyperParams& hp, Variant variant,
                      const AblationOptions& opts) {
  const HyperParams vhp = variant_hyperparams(hp, variant);
  FitOptions fo;
  fo.threads = opts.threads;
  FitResult fr = fit(ds, vhp, fo);
  const TrainedModel model = make_trained_model(ds, std::move(fr.params), vhp);

  const std::vector<int>& ids = ds.splits.test;
  std::vector<const Graph*> graphs;
  for (int id : ids) graphs.push_back(&ds.graph(id));
  const std::vector<Explanation> expls =
      explain_all(ds, ids, make_retrieval_explainer(model), opts.threads);

  AblationResult r;
  r.variant = variant;
  r.seed = hp.seed;
  r.test_acc = accuracy(model, ds, ids, opts.threads);
  r.acc_auc = acc_auc(acc_curve(model.params, graphs, expls, opts.threads));
  const RankingMetrics rm = ranking_metrics(graphs, expls, opts.top_n);
  r.recall_at_n = rm.recall;
  r.precision_at_n = rm.precision;
  return r;
}

void write_ablation_csv(std::ostream& out, const std::vector<AblationResult>& rows, int top_n,
                        const std::string& comment) {
  if (!comment.empty()) out << comment << '\n';
  out << "variant,seed,test_acc,acc_auc,recall@" << top_n << ",precision@" << top_n << '\n';
  for (const AblationResult& r : rows) {
    out << to_string(r.variant) << ',' << r.seed << ',' << format_double(r.test_acc) << ','
        << format_double(r.acc_auc) << ',' << format_double(r.recall_at_n) << ','
        << format_double(r.precision_at_n) << '\n';
  }
}

}  // namespace rcgnn
