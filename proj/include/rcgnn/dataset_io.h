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

#ifndef RCGNN_DATASET_IO_H_
#define RCGNN_DATASET_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "rcgnn/graph.h"

namespace rcgnn {

// Line-delimited JSON. Optional leading '#' comment lines, then a header
// object {"num_classes", "d", "splits": {train, val, test, explain}}, then one
// record per graph: {"id", "n", "edges": [[u,v],...], "x": [[...],...], "y",
// "gt": [[u,v],...]}. "gt" lists the positive edges and is omitted when the
// graph carries no mask.
void write_dataset(std::ostream& out, const Dataset& ds, const std::string& comment = "");
Dataset read_dataset(std::istream& in);

void save_dataset(const Dataset& ds, const std::filesystem::path& path,
                  const std::string& comment = "");
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace rcgnn

#endif  // RCGNN_DATASET_IO_H_
