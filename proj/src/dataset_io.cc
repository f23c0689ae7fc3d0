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

#include "rcgnn/dataset_io.h"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "rcgnn/error.h"

namespace rcgnn {
namespace {

using nlohmann::json;

json edge_list(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

json graph_record(const Graph& g) {
  json rec;
  rec["id"] = g.graph_id;
  rec["n"] = g.node_count;
  rec["edges"] = edge_list(g.edges);
  json x = json::array();
  for (int i = 0; i < g.node_count; ++i) {
    json row = json::array();
    for (int j = 0; j < g.node_features.cols(); ++j) row.push_back(g.node_features(i, j));
    x.push_back(std::move(row));
  }
  rec["x"] = std::move(x);
  rec["y"] = g.label;
  if (g.gt_edge_mask) {
    std::vector<Edge> positive;
    for (int k = 0; k < g.edge_count(); ++k) {
      if ((*g.gt_edge_mask)[k]) positive.push_back(g.edges[k]);
    }
    rec["gt"] = edge_list(positive);
  }
  return rec;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

Graph parse_graph(const json& rec, int line, int feature_dim) {
  Graph g;
  g.graph_id = rec.at("id").get<int>();
  g.node_count = rec.at("n").get<int>();
  if (g.node_count < 0) fail(line, "negative node count");
  for (const auto& e : rec.at("edges")) {
    if (!e.is_array() || e.size() != 2) fail(line, "edge must be a [u,v] pair");
    g.edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  const auto& x = rec.at("x");
  if (static_cast<int>(x.size()) != g.node_count) {
    fail(line, "feature rows " + std::to_string(x.size()) + " != n " +
                   std::to_string(g.node_count));
  }
  g.node_features.resize(g.node_count, feature_dim);
  for (int i = 0; i < g.node_count; ++i) {
    if (static_cast<int>(x[i].size()) != feature_dim) fail(line, "feature row width != d");
    for (int j = 0; j < feature_dim; ++j) g.node_features(i, j) = x[i][j].get<double>();
  }
  g.label = rec.at("y").get<int>();
  if (rec.contains("gt")) {
    std::map<std::pair<int, int>, int> index;
    for (int k = 0; k < g.edge_count(); ++k) {
      index[std::minmax(g.edges[k].u, g.edges[k].v)] = k;
    }
    std::vector<bool> mask(g.edges.size(), false);
    for (const auto& e : rec.at("gt")) {
      if (!e.is_array() || e.size() != 2) fail(line, "gt edge must be a [u,v] pair");
      auto it = index.find(std::minmax(e[0].get<int>(), e[1].get<int>()));
      if (it == index.end()) fail(line, "gt edge is not an edge of the graph");
      mask[it->second] = true;
    }
    g.gt_edge_mask = std::move(mask);
  }
  try {
    validate(g);
  } catch (const ParameterError& err) {
    fail(line, err.what());
  }
  return g;
}

std::vector<int> id_list(const json& splits, const char* name) {
  return splits.contains(name) ? splits.at(name).get<std::vector<int>>() : std::vector<int>{};
}

}  // namespace

void write_dataset(std::ostream& out, const Dataset& ds, const std::string& comment) {
  if (!comment.empty()) out << comment << '\n';
  json header;
  header["num_classes"] = ds.num_classes;
  header["d"] = ds.feature_dim();
  header["splits"] = {{"train", ds.splits.train},
                      {"val", ds.splits.val},
                      {"test", ds.splits.test},
                      {"explain", ds.splits.explain}};
  out << header.dump() << '\n';
  for (const Graph& g : ds.graphs) out << graph_record(g).dump() << '\n';
}

Dataset read_dataset(std::istream& in) {
  Dataset ds;
  std::string text;
  int line = 0;
  bool have_header = false;
  int feature_dim = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty() || text[0] == '#') continue;
    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error& err) {
      fail(line, std::string("invalid JSON: ") + err.what());
    }
    try {
      if (!have_header) {
        ds.num_classes = rec.at("num_classes").get<int>();
        feature_dim = rec.at("d").get<int>();
        const auto& splits = rec.at("splits");
        ds.splits.train = id_list(splits, "train");
        ds.splits.val = id_list(splits, "val");
        ds.splits.test = id_list(splits, "test");
        ds.splits.explain = id_list(splits, "explain");
        have_header = true;
        continue;
      }
      Graph g = parse_graph(rec, line, feature_dim);
      if (g.graph_id != static_cast<int>(ds.graphs.size())) {
        fail(line, "graph id " + std::to_string(g.graph_id) + " out of sequence");
      }
      ds.graphs.push_back(std::move(g));
    } catch (const json::exception& err) {
      fail(line, std::string("bad record: ") + err.what());
    }
  }
  if (ds.graphs.empty()) throw ParseError("no records");
  try {
    validate(ds);
  } catch (const ParameterError& err) {
    throw ParseError(std::string("header: ") + err.what());
  }
  return ds;
}

void save_dataset(const Dataset& ds, const std::filesystem::path& path, const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_dataset(out, ds, comment);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return read_dataset(in);
  } catch (const ParseError& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
}

}  // namespace rcgnn
