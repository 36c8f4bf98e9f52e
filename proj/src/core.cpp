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

#include "complexity_lab/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "complexity_lab/rng.hpp"

namespace clab {
namespace {

std::unordered_map<std::string, int> build_lookup(const IdList& ids,
                                                  const char* what) {
  std::unordered_map<std::string, int> lookup;
  lookup.reserve(ids.size());
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) {
    if (!lookup.emplace(ids[i], i).second) {
      throw InputError(std::string("duplicate ") + what + " id '" + ids[i] +
                       "'");
    }
  }
  return lookup;
}

bool is_sign(double v) { return v == 1.0 || v == -1.0; }

}  // namespace

std::string_view to_string(LabelKind kind) {
  return kind == LabelKind::kBinary ? "binary" : "real";
}

LabelKind parse_label_kind(std::string_view text) {
  if (text == "binary") return LabelKind::kBinary;
  if (text == "real") return LabelKind::kReal;
  throw InputError("label_kind must be 'binary' or 'real', got '" +
                   std::string(text) + "'");
}

FiniteHypothesisClass::FiniteHypothesisClass(IdList domain, IdList hypotheses,
                                             Matrix values, LabelKind kind)
    : domain_(std::move(domain)),
      hypotheses_(std::move(hypotheses)),
      values_(std::move(values)),
      kind_(kind) {
  if (values_.rows() != static_cast<Eigen::Index>(hypotheses_.size()) ||
      values_.cols() != static_cast<Eigen::Index>(domain_.size())) {
    throw InputError("values is " + std::to_string(values_.rows()) + "x" +
                     std::to_string(values_.cols()) + " but the class has " +
                     std::to_string(hypotheses_.size()) + " hypotheses and " +
                     std::to_string(domain_.size()) + " points");
  }
  for (Eigen::Index r = 0; r < values_.rows(); ++r) {
    for (Eigen::Index c = 0; c < values_.cols(); ++c) {
      const double v = values_(r, c);
      if (!std::isfinite(v)) {
        throw InputError("non-finite value at hypothesis '" +
                         hypotheses_[r] + "', point '" + domain_[c] + "'");
      }
      if (kind_ == LabelKind::kBinary && !is_sign(v)) {
        throw InputError("binary class has value " + std::to_string(v) +
                         " at hypothesis '" + hypotheses_[r] + "', point '" +
                         domain_[c] + "'");
      }
    }
  }
  hypothesis_lookup_ = build_lookup(hypotheses_, "hypothesis");
  point_lookup_ = build_lookup(domain_, "domain");
}

int FiniteHypothesisClass::hypothesis_index(std::string_view id) const {
  auto it = hypothesis_lookup_.find(std::string(id));
  if (it == hypothesis_lookup_.end()) {
    throw InputError("unknown hypothesis id '" + std::string(id) + "'");
  }
  return it->second;
}

int FiniteHypothesisClass::point_index(std::string_view id) const {
  auto it = point_lookup_.find(std::string(id));
  if (it == point_lookup_.end()) {
    throw InputError("unknown domain point id '" + std::string(id) + "'");
  }
  return it->second;
}

std::vector<int> FiniteHypothesisClass::hypothesis_indices(
    const IdList& ids) const {
  std::vector<int> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(hypothesis_index(id));
  return out;
}

FiniteHypothesisClass FiniteHypothesisClass::select(
    const std::vector<int>& rows) const {
  IdList ids;
  Matrix values(static_cast<Eigen::Index>(rows.size()), values_.cols());
  std::unordered_map<std::string, int> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int r = rows[i];
    if (r < 0 || r >= num_hypotheses()) {
      throw InputError("hypothesis row " + std::to_string(r) +
                       " out of range");
    }
    // Repeated rows get a "#k" suffix so ids stay unique.
    const int copy = seen[hypotheses_[r]]++;
    ids.push_back(copy == 0 ? hypotheses_[r]
                            : hypotheses_[r] + "#" + std::to_string(copy));
    values.row(static_cast<Eigen::Index>(i)) = values_.row(r);
  }
  return FiniteHypothesisClass(domain_, std::move(ids), std::move(values),
                               kind_);
}

DistributionOverX::DistributionOverX(Vector probabilities, IdList domain)
    : p_(std::move(probabilities)), domain_(std::move(domain)) {
  if (p_.size() == 0) throw InputError("distribution is empty");
  if (!domain_.empty() && static_cast<Eigen::Index>(domain_.size()) != p_.size()) {
    throw InputError("distribution has " + std::to_string(p_.size()) +
                     " probabilities but " + std::to_string(domain_.size()) +
                     " domain ids");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < p_.size(); ++i) {
    if (!std::isfinite(p_[i]) || p_[i] < 0.0) {
      throw InputError("probability at position " + std::to_string(i) +
                       " is negative or non-finite");
    }
    total += p_[i];
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw InputError("probabilities sum to " + std::to_string(total) +
                     ", expected 1");
  }
}

DistributionOverX DistributionOverX::uniform(int n, IdList domain) {
  if (n < 1) throw InputError("uniform distribution needs at least one point");
  return DistributionOverX(Vector::Constant(n, 1.0 / n), std::move(domain));
}

void DistributionOverX::check_aligned(const FiniteHypothesisClass& h) const {
  if (size() != h.num_points()) {
    throw InputError("distribution has " + std::to_string(size()) +
                     " entries but the class domain has " +
                     std::to_string(h.num_points()) + " points");
  }
  if (!domain_.empty() && domain_ != h.domain()) {
    throw InputError("distribution domain ids do not match the class domain");
  }
}

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::kZeroOne: return "zero_one";
    case LossKind::kMargin: return "margin";
    case LossKind::kHinge: return "hinge";
    case LossKind::kSquared: return "squared";
  }
  return "?";
}

LossKind parse_loss_kind(std::string_view text) {
  if (text == "zero_one" || text == "01" || text == "zero-one") {
    return LossKind::kZeroOne;
  }
  if (text == "margin") return LossKind::kMargin;
  if (text == "hinge") return LossKind::kHinge;
  if (text == "squared" || text == "sq") return LossKind::kSquared;
  throw ConfigError("unknown loss '" + std::string(text) +
                    "' (expected zero_one, margin, hinge or squared)");
}

LossSpec::LossSpec(LossKind kind, std::optional<double> lipschitz, double c_dc,
                   double c_mc)
    : kind_(kind), lipschitz_(lipschitz), c_dc_(c_dc), c_mc_(c_mc) {
  if (!(c_dc_ > 0.0) || !(c_mc_ > 0.0) || !std::isfinite(c_dc_) ||
      !std::isfinite(c_mc_)) {
    throw ConfigError("loss calibration constants must be positive and finite");
  }
  if (lipschitz_ && !(*lipschitz_ > 0.0)) {
    throw ConfigError("Lipschitz constant must be positive");
  }
  if (kind_ == LossKind::kHinge &&
      (!lipschitz_ || *lipschitz_ != 1.0 || c_mc_ != 2.0)) {
    throw ConfigError("hinge loss is 1-Lipschitz with c_mc = 2");
  }
}

LossSpec LossSpec::zero_one() { return LossSpec(LossKind::kZeroOne, {}, 1, 2); }
LossSpec LossSpec::margin() { return LossSpec(LossKind::kMargin, {}, 1, 2); }
LossSpec LossSpec::hinge() { return LossSpec(LossKind::kHinge, 1.0, 1, 2); }
LossSpec LossSpec::squared(double lipschitz) {
  return LossSpec(LossKind::kSquared, lipschitz, lipschitz, 2 * lipschitz);
}

LossSpec LossSpec::of_kind(LossKind kind) {
  switch (kind) {
    case LossKind::kZeroOne: return zero_one();
    case LossKind::kMargin: return margin();
    case LossKind::kHinge: return hinge();
    case LossKind::kSquared: return squared();
  }
  throw ConfigError("unknown loss kind");
}

LossSpec LossSpec::with_c_dc(double c) const {
  return LossSpec(kind_, lipschitz_, c, c_mc_);
}

LossSpec LossSpec::with_c_mc(double c) const {
  return LossSpec(kind_, lipschitz_, c_dc_, c);
}

NormalizedClass NormalizedClass::from_normalized(FiniteHypothesisClass h,
                                                 DistributionOverX d) {
  d.check_aligned(h);
  const Vector norms = squared_norms(h, d);
  for (int i = 0; i < h.num_hypotheses(); ++i) {
    if (std::abs(norms[i] - 1.0) > kTolerance) {
      throw InputError("hypothesis '" + h.hypotheses()[i] +
                       "' is not normalized (squared norm " +
                       std::to_string(norms[i]) + ")");
    }
  }
  return NormalizedClass(std::move(h), std::move(d));
}

NormalizedClass NormalizedClass::select(const std::vector<int>& rows) const {
  return NormalizedClass(class_.select(rows), dist_);
}

double eval_loss(const LossSpec& loss, double yhat, double y) {
  if (!std::isfinite(yhat) || !std::isfinite(y)) {
    throw InputError("loss arguments must be finite");
  }
  if (loss.binary_only() && !is_sign(y)) {
    throw InputError(std::string(to_string(loss.kind())) +
                     " loss needs a label in {+1,-1}, got " +
                     std::to_string(y));
  }
  const double margin = yhat * y;
  switch (loss.kind()) {
    case LossKind::kZeroOne: return margin <= 0.0 ? 1.0 : 0.0;
    case LossKind::kMargin: return margin <= 1.0 ? 1.0 : 0.0;
    case LossKind::kHinge: return std::max(0.0, 1.0 - margin);
    case LossKind::kSquared: return 0.5 * (yhat - y) * (yhat - y);
  }
  return 0.0;
}

double expected_loss(const Vector& predictions, const Vector& weights,
                     const Vector& targets, const LossSpec& loss) {
  if (predictions.size() != weights.size() ||
      predictions.size() != targets.size()) {
    throw InputError("expected_loss: predictions, weights and targets differ "
                     "in length");
  }
  if (std::abs(weights.sum() - 1.0) > kTolerance) {
    throw InputError("expected_loss: weights must sum to 1");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < predictions.size(); ++i) {
    if (weights[i] == 0.0) continue;
    total += weights[i] * eval_loss(loss, predictions[i], targets[i]);
  }
  return total;
}

Vector squared_norms(const FiniteHypothesisClass& h,
                     const DistributionOverX& d) {
  d.check_aligned(h);
  return h.values().array().square().matrix() * d.probabilities();
}

NormalizedClass normalize_class(const FiniteHypothesisClass& h,
                                const DistributionOverX& d) {
  const Vector norms = squared_norms(h, d);
  Matrix values = h.values();
  for (int i = 0; i < h.num_hypotheses(); ++i) {
    if (!(norms[i] > 0.0)) {
      throw DegenerateHypothesisError(h.hypotheses()[i]);
    }
    // Rows that are already normalized are left bit-for-bit untouched.
    if (norms[i] != 1.0) values.row(i) /= std::sqrt(norms[i]);
  }
  const bool unchanged = (norms.array() == 1.0).all();
  LabelKind kind = unchanged ? h.label_kind() : LabelKind::kReal;
  return NormalizedClass(
      FiniteHypothesisClass(h.domain(), h.hypotheses(), std::move(values),
                            kind),
      d);
}

RealizableSample draw_realizable_sample(const FiniteHypothesisClass& h,
                                        const DistributionOverX& d,
                                        const RealizableSampleSpec& spec) {
  d.check_aligned(h);
  if (spec.sample_size < 1) throw InputError("sample size must be at least 1");
  const int target = h.hypothesis_index(spec.target);
  Rng rng = make_rng(spec.seed);
  std::discrete_distribution<int> pick(d.probabilities().data(),
                                       d.probabilities().data() + d.size());
  RealizableSample out;
  out.points.resize(spec.sample_size);
  out.labels.resize(spec.sample_size);
  for (int i = 0; i < spec.sample_size; ++i) {
    out.points[i] = pick(rng);
    out.labels[i] = h.values()(target, out.points[i]);
  }
  return out;
}

}  // namespace clab
