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

#include "rcgnn/hyperparams.h"

#include <charconv>
#include <cstdio>
#include <functional>
#include <map>

#include "rcgnn/error.h"

namespace rcgnn {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParameterError("config: " + key + " expects a number, got '" + text + "'");
  }
}

int64_t parse_int(const std::string& key, const std::string& text) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParameterError("config: " + key + " expects an integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ParameterError("config: " + key + " expects true/false, got '" + text + "'");
}

}  // namespace

std::string_view to_string(ContrastiveMode mode) {
  return mode == ContrastiveMode::kPermute ? "permute" : "infonce";
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::kFull: return "full";
    case Variant::kNoRetriever: return "no_retriever";
    case Variant::kNoCausal: return "no_causal";
    case Variant::kNoDisCon: return "no_dis_con";
  }
  return "full";
}

ContrastiveMode parse_contrastive_mode(std::string_view text) {
  if (text == "permute") return ContrastiveMode::kPermute;
  if (text == "infonce") return ContrastiveMode::kInfoNce;
  throw ParameterError("unknown contrastive mode '" + std::string(text) + "'");
}

Variant parse_variant(std::string_view text) {
  for (Variant v : {Variant::kFull, Variant::kNoRetriever, Variant::kNoCausal, Variant::kNoDisCon}) {
    if (to_string(v) == text) return v;
  }
  throw ParameterError("unknown variant '" + std::string(text) + "'");
}

void validate(const HyperParams& hp) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw ParameterError(std::string("hyperparameter out of range: ") + what);
  };
  need(hp.q > 0.0 && hp.q <= 1.0, "q in (0,1]");
  need(hp.lambda1 >= 0.0 && hp.lambda2 >= 0.0, "lambda1, lambda2 >= 0");
  need(hp.threshold >= 0.0 && hp.threshold <= 1.0, "threshold in [0,1]");
  need(hp.tau > 0.0, "tau > 0");
  need(hp.ratio > 0.0 && hp.ratio <= 1.0, "ratio in (0,1]");
  need(hp.lr >= 0.0, "lr >= 0");
  need(hp.grad_clip >= 0.0, "grad_clip >= 0");
  need(hp.epochs >= 0, "epochs >= 0");
  need(hp.batch_size >= 2, "batch_size >= 2");
  need(hp.warmup_epochs >= 0, "warmup_epochs >= 0");
  need(hp.candidate_max >= 1, "candidate_max >= 1");
  need(hp.hidden_dim >= 1 && hp.num_layers >= 1, "hidden_dim, num_layers >= 1");
}

ConfigMap to_config_map(const HyperParams& hp) {
  return {
      {"beta", format_double(hp.beta)},
      {"q", format_double(hp.q)},
      {"lambda1", format_double(hp.lambda1)},
      {"lambda2", format_double(hp.lambda2)},
      {"threshold", format_double(hp.threshold)},
      {"tau", format_double(hp.tau)},
      {"ratio", format_double(hp.ratio)},
      {"lr", format_double(hp.lr)},
      {"grad_clip", format_double(hp.grad_clip)},
      {"epochs", std::to_string(hp.epochs)},
      {"batch_size", std::to_string(hp.batch_size)},
      {"warmup_epochs", std::to_string(hp.warmup_epochs)},
      {"seed", std::to_string(hp.seed)},
      {"contrastive_mode", std::string(to_string(hp.contrastive_mode))},
      {"gce_on_trivial", hp.gce_on_trivial ? "true" : "false"},
      {"candidate_max", std::to_string(hp.candidate_max)},
      {"variant", std::string(to_string(hp.variant))},
      {"hidden_dim", std::to_string(hp.hidden_dim)},
      {"num_layers", std::to_string(hp.num_layers)},
  };
}

HyperParams apply_config(HyperParams hp, const ConfigMap& config, bool allow_unknown) {
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"beta", [&](auto& k, auto& v) { hp.beta = parse_double(k, v); }},
      {"q", [&](auto& k, auto& v) { hp.q = parse_double(k, v); }},
      {"lambda1", [&](auto& k, auto& v) { hp.lambda1 = parse_double(k, v); }},
      {"lambda2", [&](auto& k, auto& v) { hp.lambda2 = parse_double(k, v); }},
      {"threshold", [&](auto& k, auto& v) { hp.threshold = parse_double(k, v); }},
      {"tau", [&](auto& k, auto& v) { hp.tau = parse_double(k, v); }},
      {"ratio", [&](auto& k, auto& v) { hp.ratio = parse_double(k, v); }},
      {"lr", [&](auto& k, auto& v) { hp.lr = parse_double(k, v); }},
      {"epochs", [&](auto& k, auto& v) { hp.epochs = static_cast<int>(parse_int(k, v)); }},
      {"grad_clip", [&](auto& k, auto& v) { hp.grad_clip = parse_double(k, v); }},
      {"batch_size", [&](auto& k, auto& v) { hp.batch_size = static_cast<int>(parse_int(k, v)); }},
      {"warmup_epochs",
       [&](auto& k, auto& v) { hp.warmup_epochs = static_cast<int>(parse_int(k, v)); }},
      {"seed", [&](auto& k, auto& v) { hp.seed = static_cast<uint64_t>(parse_int(k, v)); }},
      {"contrastive_mode",
       [&](auto&, auto& v) { hp.contrastive_mode = parse_contrastive_mode(v); }},
      {"gce_on_trivial", [&](auto& k, auto& v) { hp.gce_on_trivial = parse_bool(k, v); }},
      {"candidate_max",
       [&](auto& k, auto& v) { hp.candidate_max = static_cast<int>(parse_int(k, v)); }},
      {"variant", [&](auto&, auto& v) { hp.variant = parse_variant(v); }},
      {"hidden_dim", [&](auto& k, auto& v) { hp.hidden_dim = static_cast<int>(parse_int(k, v)); }},
      {"num_layers", [&](auto& k, auto& v) { hp.num_layers = static_cast<int>(parse_int(k, v)); }},
  };
  for (const auto& [key, value] : config) {
    auto it = setters.find(key);
    if (it == setters.end()) {
      if (allow_unknown) continue;
      throw ParameterError("config: unknown key '" + key + "'");
    }
    it->second(key, value);
  }
  return hp;
}

}  // namespace rcgnn
