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

#ifndef RCGNN_PARALLEL_H_
#define RCGNN_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace rcgnn {

// Worker cap from RCGNN_THREADS; 1 when unset or invalid.
int default_thread_count();

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
// handled exactly once; callers write results into per-index slots so the
// outcome does not depend on scheduling.
void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn);

}  // namespace rcgnn

#endif  // RCGNN_PARALLEL_H_
