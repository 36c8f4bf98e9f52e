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

#ifndef COMPLEXITY_LAB_RNG_HPP_
#define COMPLEXITY_LAB_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace clab {

// Stream derivation. A child seed is the splitmix64 finalizer applied to
// (master XOR label hash). Integer labels are hashed with the same
// finalizer; string labels with 64-bit FNV-1a. Anyone re-implementing the
// tool can reproduce every stream from these three functions.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_label(std::string_view label);
std::uint64_t hash_label(std::uint64_t label);

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t label) {
  return mix64(master ^ hash_label(label));
}
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
  return mix64(master ^ hash_label(label));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace clab

#endif  // COMPLEXITY_LAB_RNG_HPP_
