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

#include "rcgnn/checkpoint.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rcgnn/error.h"

namespace rcgnn {

using nlohmann::json;

std::string checkpoint_to_string(const Checkpoint& ckpt, const std::string& comment) {
  json j;
  j["format"] = "rcgnn-checkpoint";
  j["version"] = 1;
  const ModelConfig& c = ckpt.params.config;
  j["model"] = {{"feature_dim", c.feature_dim},
                {"hidden_dim", c.hidden_dim},
                {"num_layers", c.num_layers},
                {"num_classes", c.num_classes},
                {"branch_mode", c.branch_mode == BranchMode::kGin ? "gin" : "identity"}};
  j["hyperparams"] = to_config_map(ckpt.hyperparams);
  j["epoch"] = ckpt.epoch;
  j["rng_state"] = ckpt.rng_state;
  json blocks = json::object();
  for_each_block(ckpt.params.weights, [&](const std::string& name, const Matrix& m) {
    std::vector<double> data(m.size());
    // Row-major on disk.
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index col = 0; col < m.cols(); ++col) data[r * m.cols() + col] = m(r, col);
    }
    blocks[name] = {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
  });
  j["blocks"] = std::move(blocks);
  std::string out;
  if (!comment.empty()) out = comment + "\n";
  return out + j.dump() + "\n";
}

Checkpoint checkpoint_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string line, body;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    body += line;
  }
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("checkpoint: invalid JSON: ") + err.what());
  }
  Checkpoint ckpt;
  try {
    if (j.at("format") != "rcgnn-checkpoint") throw ParseError("checkpoint: unknown format");
    const auto& m = j.at("model");
    ModelConfig config;
    config.feature_dim = m.at("feature_dim").get<int>();
    config.hidden_dim = m.at("hidden_dim").get<int>();
    config.num_layers = m.at("num_layers").get<int>();
    config.num_classes = m.at("num_classes").get<int>();
    config.branch_mode =
        m.at("branch_mode").get<std::string>() == "identity" ? BranchMode::kIdentity : BranchMode::kGin;
    ckpt.params = ModelParams::zeros(config);
    ckpt.hyperparams = apply_config(HyperParams{}, j.at("hyperparams").get<ConfigMap>());
    ckpt.epoch = j.at("epoch").get<int>();
    ckpt.rng_state = j.at("rng_state").get<std::string>();

    const auto& blocks = j.at("blocks");
    std::set<std::string> expected;
    for_each_block(ckpt.params.weights, [&](const std::string& name, Matrix& mat) {
      expected.insert(name);
      if (!blocks.contains(name)) throw ShapeError("checkpoint: missing block " + name);
      const auto& b = blocks.at(name);
      const auto rows = b.at("rows").get<Eigen::Index>();
      const auto cols = b.at("cols").get<Eigen::Index>();
      if (rows != mat.rows() || cols != mat.cols()) {
        throw ShapeError("checkpoint: block " + name + " is " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", expected " + std::to_string(mat.rows()) + "x" +
                         std::to_string(mat.cols()));
      }
      const auto data = b.at("data").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
        throw ShapeError("checkpoint: block " + name + " has wrong element count");
      }
      for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) mat(r, c) = data[r * cols + c];
      }
    });
    for (const auto& [name, _] : blocks.items()) {
      if (!expected.count(name)) throw ShapeError("checkpoint: unexpected block " + name);
    }
  } catch (const json::exception& err) {
    throw ParseError(std::string("checkpoint: ") + err.what());
  }
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path,
                     const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << checkpoint_to_string(ckpt, comment);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return checkpoint_from_string(buffer.str());
}

}  // namespace rcgnn
