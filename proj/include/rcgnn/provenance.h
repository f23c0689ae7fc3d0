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

#ifndef RCGNN_PROVENANCE_H_
#define RCGNN_PROVENANCE_H_

#include <cstdint>
#include <map>
#include <string>

namespace rcgnn {

// Effective configuration of a run, flattened to sorted key=value pairs.
using ConfigMap = std::map<std::string, std::string>;

uint64_t fnv1a64(const std::string& text);

// "k1=v1;k2=v2" in key order.
std::string canonical_config(const ConfigMap& config);

// First line of every output artifact:
//   # rcgnn <version> seed=<seed> config_hash=<16 hex> config=<canonical>
std::string provenance_comment(uint64_t seed, const ConfigMap& config);

}  // namespace rcgnn

#endif  // RCGNN_PROVENANCE_H_
