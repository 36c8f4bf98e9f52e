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

#ifndef COMPLEXITY_LAB_PARALLEL_HPP_
#define COMPLEXITY_LAB_PARALLEL_HPP_

#include <functional>

namespace clab {

// Worker count: hardware concurrency, capped by COMPLEXITY_LAB_THREADS when
// that variable holds a positive integer.
int worker_count();

// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
// write into slot i of a preallocated buffer and reduce afterwards in index
// order, so results never depend on scheduling.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace clab

#endif  // COMPLEXITY_LAB_PARALLEL_HPP_
