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

#include "rcgnn/provenance.h"

#include <cstdio>

namespace rcgnn {

uint64_t fnv1a64(const std::string& text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string canonical_config(const ConfigMap& config) {
  std::string out;
  for (const auto& [key, value] : config) {
    if (!out.empty()) out += ';';
    out += key + '=' + value;
  }
  return out;
}

std::string provenance_comment(uint64_t seed, const ConfigMap& config) {
  const std::string canon = canonical_config(config);
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(fnv1a64(canon)));
  return "# rcgnn " RCGNN_VERSION " seed=" + std::to_string(seed) + " config_hash=" + hash +
         " config=" + canon;
}

}  // namespace rcgnn
