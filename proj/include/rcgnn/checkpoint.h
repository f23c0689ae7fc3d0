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

#ifndef RCGNN_CHECKPOINT_H_
#define RCGNN_CHECKPOINT_H_

#include <filesystem>
#include <string>

#include "rcgnn/hyperparams.h"
#include "rcgnn/model.h"

namespace rcgnn {

struct Checkpoint {
  ModelParams params;
  HyperParams hyperparams;
  int epoch = 0;
  std::string rng_state;  // textual mt19937_64 state of the trainer
};

// JSON container: {"format": "rcgnn-checkpoint", "version": 1, "model": {...},
// "hyperparams": {...}, "epoch", "rng_state", "blocks": {name: {"rows",
// "cols", "data": [...]}}}. Doubles round-trip exactly.
std::string checkpoint_to_string(const Checkpoint& ckpt, const std::string& comment = "");
Checkpoint checkpoint_from_string(const std::string& text);

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path,
                     const std::string& comment = "");

// Throws ShapeError when a block is missing, extra, or of the wrong shape for
// the stored model config, ParseError when the container is malformed.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace rcgnn

#endif  // RCGNN_CHECKPOINT_H_
