// Copyright 2026 The complexity-lab Authors. All Rights Reserved.
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

#ifndef COMPLEXITY_LAB_ERROR_HPP_
#define COMPLEXITY_LAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace clab {

// Every failure raised by the library derives from Error so that front ends
// can map the category to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent caller data (shape mismatch, non-finite value,
// label outside the allowed set, unknown id).
class InputError : public Error {
 public:
  using Error::Error;
};

// A configuration value names something that does not exist or is out of
// its legal range (unknown family kind, bad search mode).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A hypothesis row has zero norm under the supplied distribution.
class DegenerateHypothesisError : public InputError {
 public:
  explicit DegenerateHypothesisError(const std::string& hypothesis_id)
      : InputError("hypothesis '" + hypothesis_id +
                   "' has zero norm under the distribution"),
        hypothesis_id_(hypothesis_id) {}
  const std::string& hypothesis_id() const { return hypothesis_id_; }

 private:
  std::string hypothesis_id_;
};

// A combination violates its coefficient budget.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// A requested construction exceeds the supported desk-scale size.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace clab

#endif  // COMPLEXITY_LAB_ERROR_HPP_
