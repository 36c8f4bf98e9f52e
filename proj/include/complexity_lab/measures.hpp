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

#ifndef COMPLEXITY_LAB_MEASURES_HPP_
#define COMPLEXITY_LAB_MEASURES_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "complexity_lab/core.hpp"
#include "complexity_lab/embeddings.hpp"
#include "complexity_lab/learners.hpp"
#include "complexity_lab/spectral.hpp"

namespace clab {

// Expected best-in-class loss for every hypothesis under a random embedding.
struct CriterionReport {
  IdList hypotheses;
  Vector values;
  Vector standard_errors;  // zero when the family was enumerated exactly
  double max = 0.0;
  double mean = 0.0;
  int draws = 0;
  double eps = std::numeric_limits<double>::quiet_NaN();
  bool exact_enumeration = false;
  std::string loss;
};

struct CriterionOptions {
  // Solve the inner infimum with ERM. When false only the family's own
  // weight maps are scored, which is how cover constructions are judged.
  bool run_erm = true;
  // Also score the family's weight maps and keep the smaller loss.
  bool use_pair_weights = true;
  // Restrict weights to the ball of this radius (the margin variant).
  std::optional<double> radius;
  ErmOptions erm = [] {
    ErmOptions o;
    o.certify = false;
    return o;
  }();
  double eps = std::numeric_limits<double>::quiet_NaN();
};

// For 0/1 and margin losses the infimum is approached through the hinge
// surrogate, so the reported value can only overstate the true infimum.
CriterionReport distributional_dc_criterion(const EmbeddingFamily& family,
                                            const FiniteHypothesisClass& h,
                                            const DistributionOverX& d,
                                            const LossSpec& loss, int draws,
                                            std::uint64_t seed,
                                            const CriterionOptions& opts = {});

struct WeightedPair {
  EmbeddingWeightPair pair;
  double probability = 1.0;
};

struct PointwiseReport {
  double value = 0.0;
  std::string hypothesis_id;  // the maximizing cell
  std::string point_id;
};

PointwiseReport pointwise_dc_criterion(const std::vector<WeightedPair>& pairs,
                                       const FiniteHypothesisClass& h,
                                       const LossSpec& loss = LossSpec::zero_one());

// Family with the same pair distribution, for comparison against the
// distributional criterion.
EmbeddingFamily induced_family(const std::vector<WeightedPair>& pairs);

using FamilyGenerator = std::function<EmbeddingFamily(int)>;

struct MinDimResult {
  bool found = false;
  int dimension = 0;       // meaningful only when found
  CriterionReport report;  // report at the returned (or best) dimension
  int best_dimension = 0;
  double best_max = std::numeric_limits<double>::infinity();
  std::vector<std::pair<int, double>> trace;  // (d, max criterion) scanned
};

// Linear scan over [d_min, d_max]. Monotonicity in d is not assumed, since
// neither the truncated cover nor random projection families guarantee it.
MinDimResult min_dim_for_criterion(const FamilyGenerator& generator,
                                   const FiniteHypothesisClass& h,
                                   const DistributionOverX& d,
                                   const LossSpec& loss, double eps, int d_min,
                                   int d_max, int draws, std::uint64_t seed,
                                   const CriterionOptions& opts = {});

FamilyGenerator svd_family_generator(const FiniteHypothesisClass& h,
                                     const DistributionOverX& d);
FamilyGenerator zero_family_generator(int num_points);
FamilyGenerator jl_family_generator(int num_points, std::uint64_t seed);
// Prefixes of the greedy cover at radius eps, with one-hot weights to the
// nearest retained element.
FamilyGenerator cover_family_generator(const FiniteHypothesisClass& h,
                                       const DistributionOverX& d, double eps);

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  bool vacuous = false;
  bool asymptotic = false;  // lower-order terms dropped
  std::optional<double> witness_lambda;
  IdList witness_ids;
  std::string note;
};

BoundReport thm9_lower_bound(const NormalizedClass& h, double eps,
                             const std::vector<double>& lambda_grid,
                             const DimSearchMode& mode = {});

BoundReport cor10_lower_bound(const NormalizedClass& h, double eps,
                              const DimSearchMode& mode = {},
                              const SqDimOptions& sq = {});

double binary_entropy(double q);

enum class LogBase { kTwo, kE };

double thm12_coefficient(double eps, LogBase base = LogBase::kTwo);
BoundReport thm12_lower_bound(int n, double eps, LogBase base = LogBase::kTwo);

double sm_log_count_bound(int n, int d);

struct Lemma3Result {
  double raw = 0.0;
  int dimension = 0;  // ceiling of raw, at least 1
  double calibration = 8.0;
};

Lemma3Result lemma3_dim_transfer(double radius, double eps, double eta,
                                 LossKind loss, double lipschitz = 1.0,
                                 double calibration = 8.0);

struct McResult {
  double radius = 0.0;
  Matrix features;  // k x |X|, unit columns
  Matrix weights;   // |H| x k, row norms at most radius
  double min_margin = 0.0;
  bool verified = false;
  bool trivial = false;  // the identity factorization won
};

McResult mc_upper_heuristic(const FiniteHypothesisClass& h, int restarts,
                            std::uint64_t seed);

struct VcResult {
  int value = 0;
  IdList witness;
  bool exceeds_cap = false;
};

VcResult vc_dimension(const FiniteHypothesisClass& h, int cap = 10);

bool sign_rank_one_test(const Matrix& signs);

}  // namespace clab

#endif  // COMPLEXITY_LAB_MEASURES_HPP_
