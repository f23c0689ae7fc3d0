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

#ifndef RCGNN_ERROR_H_
#define RCGNN_ERROR_H_

#include <stdexcept>
#include <string>

namespace rcgnn {

// Invalid argument or hyperparameter outside its domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Matrix or weight shapes that do not line up.
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed dataset, checkpoint or config file. The message names the line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A class has no correctly-predicted training graph to retrieve from.
class EmptyCandidateSetError : public std::runtime_error {
 public:
  EmptyCandidateSetError(int class_id, const std::string& what)
      : std::runtime_error(what), class_id_(class_id) {}
  int class_id() const { return class_id_; }

 private:
  int class_id_;
};

// NaN or Inf reached a loss, a gradient or a weight.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rcgnn

#endif  // RCGNN_ERROR_H_
