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

#ifndef COMPLEXITY_LAB_VERIFY_HPP_
#define COMPLEXITY_LAB_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace clab {

// Deliberate defects used to show that the suites can fail.
enum class Fault { kNone, kGershgorinSign };

Fault parse_fault(std::string_view text);

struct PropertyResult {
  std::string suite;
  std::string name;
  int checks = 0;
  int failures = 0;
  std::string detail;  // first failure, or a short summary
  bool passed() const { return failures == 0 && checks > 0; }
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  bool passed() const;
};

const std::vector<std::string>& verify_suite_names();

// Runs the named suite ("all" runs every one in order). Throws ConfigError
// for unknown names. Results depend only on (suite, seed, fault).
VerifyReport run_verify(std::string_view suite, std::uint64_t seed,
                        Fault fault = Fault::kNone);

std::string verify_report_json(const VerifyReport& report);

}  // namespace clab

#endif  // COMPLEXITY_LAB_VERIFY_HPP_
