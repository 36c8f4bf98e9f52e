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

#ifndef COMPLEXITY_LAB_SPECTRAL_HPP_
#define COMPLEXITY_LAB_SPECTRAL_HPP_

#include <optional>
#include <vector>

#include "complexity_lab/core.hpp"

namespace clab {

// Tolerance on the smallest eigenvalue when checking positive
// semidefiniteness of an assembled Gram matrix.
inline constexpr double kPsdTolerance = 1e-8;

// Symmetric matrix of D-weighted inner products over a hypothesis subset.
class GramMatrix {
 public:
  GramMatrix(Matrix g, IdList subset, DistributionOverX d);

  const Matrix& matrix() const { return g_; }
  const IdList& subset() const { return subset_; }
  const DistributionOverX& distribution() const { return dist_; }
  int size() const { return static_cast<int>(g_.rows()); }
  double min_eigenvalue() const;

 private:
  Matrix g_;
  IdList subset_;
  DistributionOverX dist_;
};

// M(h, x) = sqrt(D(x)) h(x), so that M M^T is the Gram matrix. Singular
// values are computed once, sorted in decreasing order.
class WeightedClassMatrix {
 public:
  WeightedClassMatrix(const FiniteHypothesisClass& h,
                      const DistributionOverX& d);

  const Matrix& matrix() const { return m_; }
  const Vector& singular_values() const { return sigma_; }

 private:
  Matrix m_;
  Vector sigma_;
};

enum class SearchMode { kExact, kGreedy };

struct DimSearchMode {
  SearchMode mode = SearchMode::kExact;
  int exact_cap = 20;
};

struct SqDimOptions {
  // Compare the signed inner product instead of its magnitude.
  bool signed_bound = false;
  // Fixed correlation threshold. When unset the threshold is 1/(2t).
  std::optional<double> gamma;
};

struct DimResult {
  int value = 0;
  std::vector<int> witness;  // row indices, increasing
  IdList witness_ids;
  bool exact = true;  // false when only the greedy lower bound ran
};

// Smallest eigenvalue of a symmetric matrix via Eigen's self-adjoint solver
// (Householder tridiagonalization followed by implicit QL; deterministic).
double min_eigenvalue(const Matrix& symmetric);

GramMatrix gram_matrix(const NormalizedClass& h, const IdList& subset);
GramMatrix gram_matrix(const NormalizedClass& h,
                       const std::vector<int>& subset);
// Gram matrix of an arbitrary class; no unit-diagonal requirement.
Matrix raw_gram(const FiniteHypothesisClass& h, const DistributionOverX& d);

double gershgorin_bound(const GramMatrix& g);
double gershgorin_bound(const Matrix& g);

DimResult sq_dimension(const NormalizedClass& h, const DimSearchMode& mode = {},
                       const SqDimOptions& options = {});

DimResult min_ev_dimension(const NormalizedClass& h, double lambda,
                           const DimSearchMode& mode = {});

// Half the tail energy of the weighted class matrix past rank d, averaged
// over hypotheses: the least mean squared loss any rank-d linear predictor
// family can reach.
double avg_rank_error_oracle(const NormalizedClass& h, int d);
double avg_rank_error_oracle(const FiniteHypothesisClass& h,
                             const DistributionOverX& d, int rank);

}  // namespace clab

#endif  // COMPLEXITY_LAB_SPECTRAL_HPP_
