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

#ifndef COMPLEXITY_LAB_EMBEDDINGS_HPP_
#define COMPLEXITY_LAB_EMBEDDINGS_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "complexity_lab/core.hpp"

namespace clab {

// A feature map into R^d. Tabular embeddings store one feature column per
// domain point (a d x |X| matrix); functional embeddings wrap a procedure
// from an input vector to a d-vector.
class Embedding {
 public:
  using Function = std::function<Vector(const Vector&)>;

  static Embedding tabular(Matrix features);
  static Embedding functional(int dimension, Function fn);

  int dimension() const { return dimension_; }
  bool is_tabular() const { return !fn_; }
  int num_points() const;

  // Tabular flavor only.
  const Matrix& features() const;
  // Sample design matrix: row i is phi(points[i]).
  Matrix design(const std::vector<int>& points) const;
  double sup_norm() const;

  // Functional flavor only; tabular features are read through features().
  Vector evaluate(const Vector& x) const;

  // Evaluates a functional embedding at the columns of points.
  Embedding tabulate(const Matrix& points) const;

 private:
  Embedding(int dimension, Matrix features, Function fn)
      : dimension_(dimension), features_(std::move(features)),
        fn_(std::move(fn)) {}

  int dimension_;
  Matrix features_;
  Function fn_;
};

// An embedding paired with one weight vector per hypothesis.
class EmbeddingWeightPair {
 public:
  EmbeddingWeightPair(Embedding embedding, IdList hypotheses, Matrix weights);

  const Embedding& embedding() const { return embedding_; }
  const IdList& hypotheses() const { return hypotheses_; }
  // |hypotheses| x d.
  const Matrix& weights() const { return weights_; }
  // Predictions of every hypothesis at every point, |H| x |X| (tabular).
  Matrix predictions() const;

 private:
  Embedding embedding_;
  IdList hypotheses_;
  Matrix weights_;
};

// Dense Gaussian projection with i.i.d. N(0, 1/d_target) entries.
Matrix jl_matrix(int d_in, int d_target, std::uint64_t seed);

Embedding jl_project(const Embedding& phi, int d_target, std::uint64_t seed);
EmbeddingWeightPair jl_project(const EmbeddingWeightPair& pair, int d_target,
                               std::uint64_t seed);

struct CoverResult {
  std::vector<int> cover;  // row indices in selection order
  IdList cover_ids;
  std::vector<int> assignment;  // cover position chosen for each hypothesis
  Vector distances;             // disagreement mass to the assigned element
  EmbeddingWeightPair pair;
};

// Pr_D[h_i != h_j] for every pair of rows of a binary class.
Matrix disagreement_matrix(const FiniteHypothesisClass& h,
                           const DistributionOverX& d);

CoverResult greedy_cover(const FiniteHypothesisClass& h,
                         const DistributionOverX& d, double eps);

struct RepresenterReduction {
  Embedding reduced;
  Matrix basis;  // r x d with orthonormal rows spanning the sample features

  Vector project(const Vector& w) const { return basis * w; }
};

RepresenterReduction representer_reduce(const Embedding& phi,
                                        const std::vector<int>& sample_points);

enum class FamilyKind { kIdentity, kZero, kJlGaussian, kSvd, kFixed, kMixture };

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view text);

// One embedding in the support of a family, optionally with per-hypothesis
// weights (rows aligned with EmbeddingFamily::weight_ids()).
struct FamilyMember {
  Embedding embedding;
  std::optional<Matrix> weights;
  double probability = 1.0;
};

// A distribution over embeddings. Finite families expose their support and
// are evaluated exactly; random families are sampled by index through the
// seed derivation in rng.hpp.
class EmbeddingFamily {
 public:
  static EmbeddingFamily identity(int num_points);
  static EmbeddingFamily zero(int num_points, int d);
  static EmbeddingFamily jl_gaussian(Embedding base, int d_target,
                                     std::uint64_t seed);
  static EmbeddingFamily jl_gaussian(EmbeddingWeightPair base, int d_target,
                                     std::uint64_t seed);
  // Rank-d truncated SVD of the weighted class matrix. When the d-th
  // singular value is tied with the next one the family mixes uniformly
  // over cyclic windows of the tied block, which gives every hypothesis
  // the same expected error as the hypothesis average.
  static EmbeddingFamily svd(const FiniteHypothesisClass& h,
                             const DistributionOverX& d, int dimension);
  static EmbeddingFamily fixed(Embedding embedding);
  static EmbeddingFamily fixed(EmbeddingWeightPair pair);
  static EmbeddingFamily mixture(std::vector<FamilyMember> members,
                                 IdList weight_ids = {});

  FamilyKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  std::uint64_t seed() const { return seed_; }
  bool is_finite() const { return kind_ != FamilyKind::kJlGaussian; }
  const std::vector<FamilyMember>& support() const;
  const IdList& weight_ids() const { return weight_ids_; }

  // Deterministic per (seed, index). Finite families pick a support member
  // with the member probabilities.
  FamilyMember draw(std::uint64_t index) const;

 private:
  EmbeddingFamily() = default;

  FamilyKind kind_ = FamilyKind::kIdentity;
  int dimension_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<FamilyMember> support_;
  IdList weight_ids_;
  std::shared_ptr<const Embedding> base_;
  std::shared_ptr<const EmbeddingWeightPair> base_pair_;
};

Embedding sample_embedding(const EmbeddingFamily& family, std::uint64_t index);

}  // namespace clab

#endif  // COMPLEXITY_LAB_EMBEDDINGS_HPP_
