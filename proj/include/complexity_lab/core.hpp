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

#ifndef COMPLEXITY_LAB_CORE_HPP_
#define COMPLEXITY_LAB_CORE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "complexity_lab/error.hpp"

namespace clab {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using IdList = std::vector<std::string>;

// Absolute tolerance used for probability sums, norms and equality checks.
inline constexpr double kTolerance = 1e-9;

enum class LabelKind { kBinary, kReal };

std::string_view to_string(LabelKind kind);
LabelKind parse_label_kind(std::string_view text);

// A finite class viewed as a matrix: rows are hypotheses, columns are domain
// points. Immutable once built; the constructor enforces shape, finiteness,
// the label set and id uniqueness.
class FiniteHypothesisClass {
 public:
  FiniteHypothesisClass(IdList domain, IdList hypotheses, Matrix values,
                        LabelKind kind);

  const IdList& domain() const { return domain_; }
  const IdList& hypotheses() const { return hypotheses_; }
  const Matrix& values() const { return values_; }
  LabelKind label_kind() const { return kind_; }

  int num_hypotheses() const { return static_cast<int>(hypotheses_.size()); }
  int num_points() const { return static_cast<int>(domain_.size()); }

  // Throws InputError for an id that is not present.
  int hypothesis_index(std::string_view id) const;
  int point_index(std::string_view id) const;
  std::vector<int> hypothesis_indices(const IdList& ids) const;

  // Rows in the given order, duplicates allowed. Label kind is preserved.
  FiniteHypothesisClass select(const std::vector<int>& rows) const;

 private:
  IdList domain_;
  IdList hypotheses_;
  Matrix values_;
  LabelKind kind_;
  std::unordered_map<std::string, int> hypothesis_lookup_;
  std::unordered_map<std::string, int> point_lookup_;
};

// A probability vector aligned with a domain. Domain ids are optional; when
// present they are checked against the class they are paired with.
class DistributionOverX {
 public:
  explicit DistributionOverX(Vector probabilities, IdList domain = {});

  static DistributionOverX uniform(int n, IdList domain = {});

  const Vector& probabilities() const { return p_; }
  const IdList& domain() const { return domain_; }
  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[i]; }

  // Throws InputError unless this distribution can weight the columns of H.
  void check_aligned(const FiniteHypothesisClass& h) const;

 private:
  Vector p_;
  IdList domain_;
};

enum class LossKind { kZeroOne, kMargin, kHinge, kSquared };

std::string_view to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view text);

// Loss together with the calibration constants of the generalization terms.
// The zero-one and margin losses have no Lipschitz constant.
class LossSpec {
 public:
  static LossSpec zero_one();
  static LossSpec margin();
  static LossSpec hinge();
  // Squared loss with a user-chosen Lipschitz constant on the prediction
  // range of interest. Defaults give c_dc = L and c_mc = 2L.
  static LossSpec squared(double lipschitz = 1.0);
  static LossSpec of_kind(LossKind kind);

  LossKind kind() const { return kind_; }
  std::optional<double> lipschitz() const { return lipschitz_; }
  double c_dc() const { return c_dc_; }
  double c_mc() const { return c_mc_; }
  bool binary_only() const { return kind_ != LossKind::kSquared; }

  LossSpec with_c_dc(double c) const;
  LossSpec with_c_mc(double c) const;

 private:
  LossSpec(LossKind kind, std::optional<double> lipschitz, double c_dc,
           double c_mc);

  LossKind kind_;
  std::optional<double> lipschitz_;
  double c_dc_;
  double c_mc_;
};

// A class whose rows all have unit norm under the attached distribution.
class NormalizedClass {
 public:
  // Validates an already normalized class; throws InputError otherwise.
  static NormalizedClass from_normalized(FiniteHypothesisClass h,
                                         DistributionOverX d);

  const FiniteHypothesisClass& hypotheses() const { return class_; }
  const DistributionOverX& distribution() const { return dist_; }
  const Matrix& values() const { return class_.values(); }
  int size() const { return class_.num_hypotheses(); }

  NormalizedClass select(const std::vector<int>& rows) const;

 private:
  friend NormalizedClass normalize_class(const FiniteHypothesisClass&,
                                         const DistributionOverX&);
  NormalizedClass(FiniteHypothesisClass h, DistributionOverX d)
      : class_(std::move(h)), dist_(std::move(d)) {}

  FiniteHypothesisClass class_;
  DistributionOverX dist_;
};

struct RealizableSampleSpec {
  std::string target;
  int sample_size = 1;
  std::uint64_t seed = 0;
};

struct RealizableSample {
  std::vector<int> points;  // column indices into the class domain
  Vector labels;
};

double eval_loss(const LossSpec& loss, double yhat, double y);

double expected_loss(const Vector& predictions, const Vector& weights,
                     const Vector& targets, const LossSpec& loss);

// Squared D-norm of every row.
Vector squared_norms(const FiniteHypothesisClass& h,
                     const DistributionOverX& d);

NormalizedClass normalize_class(const FiniteHypothesisClass& h,
                                const DistributionOverX& d);

// Draws x ~ D i.i.d. and labels each draw with the target hypothesis.
RealizableSample draw_realizable_sample(const FiniteHypothesisClass& h,
                                        const DistributionOverX& d,
                                        const RealizableSampleSpec& spec);

}  // namespace clab

#endif  // COMPLEXITY_LAB_CORE_HPP_
