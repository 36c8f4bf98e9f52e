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

#include <gtest/gtest.h>

#include "complexity_lab/error.hpp"
#include "complexity_lab/verify.hpp"

namespace clab {
namespace {

TEST(Verify, EverySuitePasses) {
  for (const std::string& name : verify_suite_names()) {
    if (name == "all") continue;
    const VerifyReport r = run_verify(name, 2024);
    EXPECT_TRUE(r.passed()) << name;
    EXPECT_FALSE(r.properties.empty()) << name;
    for (const auto& p : r.properties) {
      EXPECT_TRUE(p.passed()) << p.suite << "/" << p.name << ": " << p.detail;
    }
  }
}

TEST(Verify, ReportsAreByteIdentical) {
  const std::string a = verify_report_json(run_verify("all", 7));
  const std::string b = verify_report_json(run_verify("all", 7));
  EXPECT_EQ(a, b);
}

TEST(Verify, InjectedFaultIsCaught) {
  const VerifyReport r = run_verify("spectral", 7, Fault::kGershgorinSign);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(parse_fault("gershgorin-sign"), Fault::kGershgorinSign);
  EXPECT_EQ(parse_fault("none"), Fault::kNone);
}

TEST(Verify, UnknownSuiteIsConfigError) {
  EXPECT_THROW(run_verify("nope", 1), ConfigError);
  EXPECT_THROW(parse_fault("other"), ConfigError);
}

}  // namespace
}  // namespace clab
