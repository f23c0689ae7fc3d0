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

// rcgnn: generate datasets, train, explain, evaluate and run ablations.
//
//   rcgnn gen-data --kind ba3motif --n 300 --seed 7 --out d.jsonl
//   rcgnn train --data d.jsonl --out model.ckpt --log train.csv
//   rcgnn explain --data d.jsonl --checkpoint model.ckpt --out expl.csv
//   rcgnn eval --data d.jsonl --checkpoint model.ckpt --out report.csv
//   rcgnn ablate --data d.jsonl --out ablation.csv
//
// Any option may also come from an INI file given with --config; a [train]
// section feeds the train subcommand, and so on. Flags win over the file.
//
// Exit codes: 0 success, 1 invalid arguments or I/O failure, 2 missing or
// malformed dataset/checkpoint or a shape mismatch between them, 3 training
// diverged (the last finite parameters are saved next to the checkpoint).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rcgnn/ablation.h"
#include "rcgnn/benchmark.h"
#include "rcgnn/checkpoint.h"
#include "rcgnn/dataset_io.h"
#include "rcgnn/error.h"
#include "rcgnn/explainers.h"
#include "rcgnn/generators.h"
#include "rcgnn/hyperparams.h"
#include "rcgnn/parallel.h"
#include "rcgnn/provenance.h"
#include "rcgnn/trainer.h"

namespace fs = std::filesystem;
using namespace rcgnn;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitDiverged = 3;

// Raised for missing or unreadable inputs so they map to kExitInput.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HpFlags {
  HyperParams hp;
  std::string variant = "full";
  std::string contrastive_mode = "permute";

  HyperParams resolve() const {
    HyperParams out = hp;
    out.variant = parse_variant(variant);
    out.contrastive_mode = parse_contrastive_mode(contrastive_mode);
    validate(out);
    return out;
  }
};

void add_hp_options(CLI::App* app, HpFlags& f) {
  HyperParams& hp = f.hp;
  app->add_option("--beta", hp.beta, "Bottleneck trade-off (recorded only)")->capture_default_str();
  app->add_option("--q", hp.q, "GCE exponent")->capture_default_str();
  app->add_option("--lambda1", hp.lambda1, "Weight of the disentangling loss")->capture_default_str();
  app->add_option("--lambda2", hp.lambda2, "Weight of the contrastive loss")->capture_default_str();
  app->add_option("--threshold", hp.threshold, "Candidate match threshold")->capture_default_str();
  app->add_option("--tau", hp.tau, "InfoNCE temperature")->capture_default_str();
  app->add_option("--ratio", hp.ratio, "Explanation node ratio")->capture_default_str();
  app->add_option("--lr", hp.lr, "Adam learning rate")->capture_default_str();
  app->add_option("--grad-clip", hp.grad_clip, "Global gradient-norm cap, 0 disables")
      ->capture_default_str();
  app->add_option("--epochs", hp.epochs, "Training epochs")->capture_default_str();
  app->add_option("--batch-size", hp.batch_size, "Graphs per batch")->capture_default_str();
  app->add_option("--warmup", hp.warmup_epochs, "Warm-up epochs")->capture_default_str();
  app->add_option("--seed", hp.seed, "Training seed")->capture_default_str();
  app->add_option("--contrastive-mode", f.contrastive_mode, "permute or infonce")
      ->check(CLI::IsMember({"permute", "infonce"}))
      ->capture_default_str();
  app->add_flag("--gce-on-trivial", hp.gce_on_trivial, "Apply GCE to the trivial head");
  app->add_option("--candidate-max", hp.candidate_max, "Candidates per class")
      ->capture_default_str();
  app->add_option("--variant", f.variant, "full, no_retriever, no_causal or no_dis_con")
      ->check(CLI::IsMember({"full", "no_retriever", "no_causal", "no_dis_con"}))
      ->capture_default_str();
  app->add_option("--hidden-dim", hp.hidden_dim, "Embedding width")->capture_default_str();
  app->add_option("--num-layers", hp.num_layers, "Shared encoder layers")->capture_default_str();
}

Dataset read_data(const std::string& path) {
  if (!fs::exists(path)) throw InputError("dataset not found: " + path);
  try {
    return load_dataset(path);
  } catch (const ParseError& err) {
    throw InputError(err.what());
  }
}

Checkpoint read_checkpoint(const std::string& path) {
  if (!fs::exists(path)) throw InputError("checkpoint not found: " + path);
  try {
    return load_checkpoint(path);
  } catch (const ParseError& err) {
    throw InputError(err.what());
  }
}

void check_compatible(const Dataset& ds, const ModelParams& params) {
  if (ds.feature_dim() != params.config.feature_dim || ds.num_classes != params.config.num_classes) {
    throw ShapeError("checkpoint expects feature_dim=" + std::to_string(params.config.feature_dim) +
                     " classes=" + std::to_string(params.config.num_classes) +
                     " but dataset has feature_dim=" + std::to_string(ds.feature_dim()) +
                     " classes=" + std::to_string(ds.num_classes));
  }
}

std::string dataset_name(const std::string& path, const std::string& override_name) {
  return override_name.empty() ? fs::path(path).stem().string() : override_name;
}

ConfigMap with_command(ConfigMap config, const std::string& command) {
  config["command"] = command;
  return config;
}

// ---------------------------------------------------------------- gen-data

struct GenArgs {
  std::string kind = "ba3motif";
  int n = 300;
  uint64_t seed = 0;
  int motifs_per_class = 2;
  GeneratorOptions opts;
  std::string out;
};

int run_gen_data(const GenArgs& a) {
  if (a.kind != "ba3motif" && a.kind != "multimotif") {
    throw ParameterError("unknown dataset kind: " + a.kind);
  }
  const Dataset ds = a.kind == "ba3motif"
                         ? generate_ba3motif(a.n, a.seed, a.opts)
                         : generate_multimotif(a.n, a.motifs_per_class, a.seed, a.opts);
  ConfigMap config = {{"kind", a.kind},
                      {"n", std::to_string(a.n)},
                      {"min_base", std::to_string(a.opts.min_base_nodes)},
                      {"max_base", std::to_string(a.opts.max_base_nodes)},
                      {"attachment", std::to_string(a.opts.attachment)},
                      {"feature_dim", std::to_string(a.opts.feature_dim)}};
  if (a.kind == "multimotif") config["motifs_per_class"] = std::to_string(a.motifs_per_class);
  save_dataset(ds, a.out, provenance_comment(a.seed, with_command(config, "gen-data")));

  std::vector<int> per_class(ds.num_classes, 0);
  for (const Graph& g : ds.graphs) ++per_class[g.label];
  std::printf("wrote %zu graphs to %s\n", ds.graphs.size(), a.out.c_str());
  for (int c = 0; c < ds.num_classes; ++c) std::printf("  class %d: %d\n", c, per_class[c]);
  std::printf("  splits: train %zu, val %zu, test %zu, explain %zu\n", ds.splits.train.size(),
              ds.splits.val.size(), ds.splits.test.size(), ds.splits.explain.size());
  return 0;
}

// ------------------------------------------------------------------- train

struct TrainArgs {
  std::string data;
  std::string out = "model.ckpt";
  std::string log = "train_log.csv";
  HpFlags flags;
};

int run_train(const TrainArgs& a) {
  const HyperParams hp = a.flags.resolve();
  const Dataset ds = read_data(a.data);
  const std::string comment = provenance_comment(hp.seed, with_command(to_config_map(hp), "train"));
  FitOptions fo;
  fo.threads = default_thread_count();
  FitResult fr;
  try {
    fr = fit(ds, hp, fo);
  } catch (const TrainingDivergedError& err) {
    const std::string last_good = a.out + ".last_good";
    save_checkpoint({err.last_good(), hp, err.epoch(), ""}, last_good, comment);
    std::fprintf(stderr, "error: %s\nlast good checkpoint: %s\n", err.what(), last_good.c_str());
    return kExitDiverged;
  }
  const int epoch = fr.log.best_epoch < 0 ? 0 : fr.log.best_epoch + 1;
  save_checkpoint({fr.params, hp, epoch, fr.rng_state}, a.out, comment);
  write_file(a.log, [&](std::ostream& out) { write_training_log(out, fr.log, comment); });
  for (const std::string& w : fr.log.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("trained %d epochs; best val acc %.4f at epoch %d\n", fr.epochs_run,
              fr.log.best_val_acc, fr.log.best_epoch);
  std::printf("checkpoint: %s\nlog: %s\n", a.out.c_str(), a.log.c_str());
  return 0;
}

// ----------------------------------------------------------------- explain

struct ExplainArgs {
  std::string data;
  std::string checkpoint;
  std::string out = "explanations.csv";
};

int run_explain(const ExplainArgs& a) {
  const Dataset ds = read_data(a.data);
  Checkpoint ckpt = read_checkpoint(a.checkpoint);
  check_compatible(ds, ckpt.params);
  const TrainedModel model = make_trained_model(ds, std::move(ckpt.params), ckpt.hyperparams);
  const std::vector<int>& ids = ds.splits.explain;
  const std::vector<Explanation> expls =
      explain_all(ds, ids, make_retrieval_explainer(model), default_thread_count());
  const std::string comment = provenance_comment(
      model.hp.seed, with_command(to_config_map(model.hp), "explain"));
  write_file(a.out, [&](std::ostream& out) { write_explanations_csv(out, ds, ids, expls, comment); });
  std::printf("explained %zu graphs -> %s\n", ids.size(), a.out.c_str());
  return 0;
}

// -------------------------------------------------------------------- eval

struct EvalArgs {
  std::string data;
  std::string checkpoint;
  std::string out = "report.csv";
  std::string embeddings;
  std::string name;
  std::vector<std::string> explainers = {"retrieval", "random", "saliency"};
  int top_n = 5;
};

int run_eval(const EvalArgs& a) {
  const Dataset ds = read_data(a.data);
  Checkpoint ckpt = read_checkpoint(a.checkpoint);
  check_compatible(ds, ckpt.params);
  const TrainedModel model = make_trained_model(ds, std::move(ckpt.params), ckpt.hyperparams);

  std::vector<Explainer> explainers;
  std::string names;
  for (const std::string& e : a.explainers) {
    if (e == "retrieval") {
      explainers.push_back(make_retrieval_explainer(model));
    } else if (e == "random") {
      explainers.push_back(make_random_explainer(model.hp.seed, model.hp.ratio));
    } else if (e == "saliency") {
      explainers.push_back(make_saliency_explainer(model.params, model.hp.ratio));
    } else {
      throw ParameterError("unknown explainer: " + e);
    }
    names += (names.empty() ? "" : "+") + e;
  }
  BenchmarkOptions bo;
  bo.dataset_name = dataset_name(a.data, a.name);
  bo.top_n = a.top_n;
  bo.seed = model.hp.seed;
  bo.threads = default_thread_count();
  const MetricsReport report = run_benchmark(ds, model, explainers, bo);

  ConfigMap config = with_command(to_config_map(model.hp), "eval");
  config["top_n"] = std::to_string(a.top_n);
  config["explainers"] = names;
  const std::string comment = provenance_comment(model.hp.seed, config);
  write_file(a.out, [&](std::ostream& out) { write_report_csv(out, report, comment); });
  if (!a.embeddings.empty()) {
    write_file(a.embeddings, [&](std::ostream& out) {
      write_embeddings_csv(out, model, ds, ds.splits.explain, comment);
    });
  }
  for (const ReportRow& r : report.rows) {
    std::printf("%-10s acc_auc %.4f recall@%d %.4f precision@%d %.4f graph_acc %.4f\n",
                r.explainer.c_str(), r.acc_auc, a.top_n, r.recall_at_n, a.top_n,
                r.precision_at_n, r.graph_acc);
  }
  return 0;
}

// ------------------------------------------------------------------ ablate

struct AblateArgs {
  std::string data;
  std::string out = "ablation.csv";
  std::vector<uint64_t> seeds;
  int top_n = 5;
  HpFlags flags;
};

int run_ablate(const AblateArgs& a) {
  const HyperParams base = a.flags.resolve();
  const Dataset ds = read_data(a.data);
  const std::vector<uint64_t> seeds = a.seeds.empty() ? std::vector<uint64_t>{base.seed} : a.seeds;
  AblationOptions ao;
  ao.top_n = a.top_n;
  ao.threads = default_thread_count();
  std::vector<AblationResult> rows;
  for (uint64_t seed : seeds) {
    for (Variant v : kAllVariants) {
      HyperParams hp = base;
      hp.seed = seed;
      rows.push_back(ablate(ds, hp, v, ao));
      const AblationResult& r = rows.back();
      std::printf("seed %llu %-12s test_acc %.4f acc_auc %.4f precision@%d %.4f\n",
                  static_cast<unsigned long long>(seed), std::string(to_string(v)).c_str(),
                  r.test_acc, r.acc_auc, a.top_n, r.precision_at_n);
    }
  }
  ConfigMap config = with_command(to_config_map(base), "ablate");
  std::string seed_list;
  for (uint64_t s : seeds) seed_list += (seed_list.empty() ? "" : "+") + std::to_string(s);
  config["seeds"] = seed_list;
  config["top_n"] = std::to_string(a.top_n);
  const std::string comment = provenance_comment(base.seed, config);
  write_file(a.out, [&](std::ostream& out) { write_ablation_csv(out, rows, a.top_n, comment); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rcgnn: retrieval-based causal graph explanations"};
  app.set_config("--config", "", "INI file with [gen-data], [train], ... sections");
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic dataset");
  gen_cmd->add_option("--kind", gen.kind, "ba3motif or multimotif")
      ->check(CLI::IsMember({"ba3motif", "multimotif"}))
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Number of graphs")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_option("--motifs-per-class", gen.motifs_per_class, "Multimotif pool size")
      ->capture_default_str();
  gen_cmd->add_option("--min-base", gen.opts.min_base_nodes, "Smallest base graph")
      ->capture_default_str();
  gen_cmd->add_option("--max-base", gen.opts.max_base_nodes, "Largest base graph")
      ->capture_default_str();
  gen_cmd->add_option("--attachment", gen.opts.attachment, "BA edges per new node")
      ->capture_default_str();
  gen_cmd->add_option("--feature-dim", gen.opts.feature_dim, "Node feature width")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output dataset file")->required();

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a model");
  train_cmd->add_option("--data", train.data, "Dataset file")->required();
  train_cmd->add_option("--out", train.out, "Checkpoint path")->capture_default_str();
  train_cmd->add_option("--log", train.log, "Training log CSV")->capture_default_str();
  add_hp_options(train_cmd, train.flags);

  ExplainArgs explain;
  CLI::App* explain_cmd = app.add_subcommand("explain", "Export explanations of the explain split");
  explain_cmd->add_option("--data", explain.data, "Dataset file")->required();
  explain_cmd->add_option("--checkpoint", explain.checkpoint, "Checkpoint path")->required();
  explain_cmd->add_option("--out", explain.out, "Explanation CSV")->capture_default_str();

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Benchmark explainers");
  eval_cmd->add_option("--data", eval.data, "Dataset file")->required();
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "Checkpoint path")->required();
  eval_cmd->add_option("--out", eval.out, "Report CSV")->capture_default_str();
  eval_cmd->add_option("--embeddings", eval.embeddings, "Optional embedding CSV");
  eval_cmd->add_option("--dataset-name", eval.name, "Name for the dataset column");
  eval_cmd->add_option("--explainers", eval.explainers, "Subset of retrieval,random,saliency")
      ->delimiter(',')
      ->capture_default_str();
  eval_cmd->add_option("--top-n", eval.top_n, "N for recall@N / precision@N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  AblateArgs ablate_args;
  CLI::App* ablate_cmd = app.add_subcommand("ablate", "Train and score all four variants");
  ablate_cmd->add_option("--data", ablate_args.data, "Dataset file")->required();
  ablate_cmd->add_option("--out", ablate_args.out, "Ablation CSV")->capture_default_str();
  ablate_cmd->add_option("--seeds", ablate_args.seeds, "Seeds to average over")->delimiter(',');
  ablate_cmd->add_option("--top-n", ablate_args.top_n, "N for recall@N / precision@N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_hp_options(ablate_cmd, ablate_args.flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return run_gen_data(gen);
    if (*train_cmd) return run_train(train);
    if (*explain_cmd) return run_explain(explain);
    if (*eval_cmd) return run_eval(eval);
    if (*ablate_cmd) return run_ablate(ablate_args);
  } catch (const InputError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitInput;
  } catch (const ShapeError& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitInput;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitUsage;
  }
  return kExitUsage;
}
