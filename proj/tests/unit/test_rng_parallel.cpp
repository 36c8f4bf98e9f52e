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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "complexity_lab/parallel.hpp"
#include "complexity_lab/rng.hpp"

namespace clab {
namespace {

TEST(Seeds, SplitmixReferenceValues) {
  // First two outputs of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(mix64(0x9e3779b97f4a7c15ULL), 0x6e789e6aa1b965f4ULL);
}

TEST(Seeds, FnvReferenceValues) {
  EXPECT_EQ(hash_label(std::string_view("")), 0xcbf29ce484222325ULL);
  EXPECT_EQ(hash_label(std::string_view("a")), 0xaf63dc4c8601ec8cULL);
}

TEST(Seeds, DerivationIsStableAndSpreads) {
  EXPECT_EQ(derive_seed(42, 7), mix64(42 ^ mix64(7)));
  EXPECT_EQ(derive_seed(42, "sample"), mix64(42 ^ hash_label(std::string_view("sample"))));
  EXPECT_NE(derive_seed(42, 0), derive_seed(42, 1));
  EXPECT_NE(derive_seed(42, 0), derive_seed(43, 0));
}

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, [&](int i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(50, [](int i) {
                 if (i == 17) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Parallel, ThreadCapFromEnvironment) {
  ::setenv("COMPLEXITY_LAB_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1);
  ::unsetenv("COMPLEXITY_LAB_THREADS");
  EXPECT_GE(worker_count(), 1);
}

}  // namespace
}  // namespace clab
