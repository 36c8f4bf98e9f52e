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

#ifndef COMPLEXITY_LAB_CONSTRUCTIONS_HPP_
#define COMPLEXITY_LAB_CONSTRUCTIONS_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "complexity_lab/core.hpp"
#include "complexity_lab/embeddings.hpp"
#include "complexity_lab/rng.hpp"

namespace clab {

// Largest n for the 2^n-point Boolean-cube constructions.
inline constexpr int kMaxCubeDimension = 12;

// Characters chi_S(x) = prod_{i in S} x_i over {+1,-1}^n. Hypothesis S and
// point x are both indexed by bitmasks; bit i of a point set means x_i = -1.
FiniteHypothesisClass parities(int n);

// h_i(x) = x_i for i = 1..n over {+1,-1}^n.
FiniteHypothesisClass one_sparse(int n);

// Hypotheses and points are vectors in {+1,-1}^(k p) cut into k blocks of
// length p. h(x) = -1 iff the largest block index i (1-based) with
// h_i = x_i exists and is odd; otherwise +1.
FiniteHypothesisClass pattern_decision_list(int k, int p);

// Zigzag profile: -1 + [z+a]_+ + sum_{i=1}^{a-1} 2 (-1)^i [z+a-2i]_+ - [z-a]_+
// for odd a >= 1. psi evaluates it in closed form; psi_relu_sum adds the
// a + 2 terms literally and exists as a cross-check.
double psi(int a, double z);
double psi_relu_sum(int a, double z);

// a = 6 n^2 + 1, the zigzag parameter paired with direction norm n.
int zigzag_parameter(int n);

struct ReluNeuron {
  Vector w;
  double b = 0.0;
};

// A class of real functions on R^n, stored by parameters.
//   relu        : x -> [<w, x> + b]_+ with |w| <= W and |b| <= B
//   zigzag      : x -> psi_a(<u, x>) with |u| = n and a = 6 n^2 + 1
//   combination : x -> kappa * sum_j c_j g_j(x) over members g_j of a base
class FunctionalClass {
 public:
  enum class Kind { kRelu, kZigzag, kCombination };

  static FunctionalClass relu(int n, std::vector<ReluNeuron> neurons,
                              double w_bound, double b_bound, IdList ids = {});
  static FunctionalClass zigzag(int n, std::vector<Vector> directions,
                                IdList ids = {});
  static FunctionalClass combination(
      std::shared_ptr<const FunctionalClass> base,
      std::vector<std::vector<std::pair<int, double>>> terms, double kappa,
      IdList ids = {});

  Kind kind() const { return kind_; }
  int input_dim() const { return n_; }
  int size() const { return static_cast<int>(ids_.size()); }
  const IdList& ids() const { return ids_; }
  int index_of(std::string_view id) const;

  double evaluate(int h, const Vector& x) const;

  // relu parameters
  const std::vector<ReluNeuron>& neurons() const { return neurons_; }
  double w_bound() const { return w_bound_; }
  double b_bound() const { return b_bound_; }
  // zigzag parameters
  int a() const { return a_; }
  const std::vector<Vector>& directions() const { return directions_; }
  // combination parameters
  const std::shared_ptr<const FunctionalClass>& base() const { return base_; }
  const std::vector<std::vector<std::pair<int, double>>>& terms() const {
    return terms_;
  }
  double kappa() const { return kappa_; }

  // kappa * F. For relu classes this rescales (w, b) and the bounds, using
  // positive homogeneity of the ReLU; other kinds wrap the class.
  FunctionalClass scaled(double kappa) const;

 private:
  FunctionalClass() = default;

  Kind kind_ = Kind::kRelu;
  int n_ = 0;
  IdList ids_;
  std::vector<ReluNeuron> neurons_;
  double w_bound_ = 0.0;
  double b_bound_ = 0.0;
  int a_ = 0;
  std::vector<Vector> directions_;
  std::shared_ptr<const FunctionalClass> base_;
  std::vector<std::vector<std::pair<int, double>>> terms_;
  double kappa_ = 1.0;
};

// Bounds (W, B) = (14 n^3, 98 n^4) large enough to hold every scaled
// zigzag decomposition below once n >= 2.
std::pair<double, double> default_relu_bounds(int n);

struct ReluDecomposition {
  FunctionalClass pieces;            // relu class with a + 2 neurons
  std::vector<double> coefficients;  // one per neuron, each of size <= 2
};

// psi_a(<u, x>) as a signed sum of ReLU neurons. The constant -1 is the
// neuron w = 0, b = 1 with coefficient -1.
ReluDecomposition zigzag_relu_decomposition(const Vector& u, int a);

FunctionalClass zigzag_class_sample(int n, int t, std::uint64_t seed);

// A uniformly random direction of length radius (Gaussian draw rescaled;
// draws with norm below 1e-12 are rejected).
Vector sample_sphere(int n, double radius, Rng& rng);

using RealFunction = std::function<double(const Vector&)>;

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
  // Upper bound on the systematic error, when the estimator has one.
  double bias_bound = 0.0;
};

// Plain Monte Carlo estimate of E[f(x) g(x)] for x ~ N(0, I_n).
Estimate gaussian_gram_estimate(const RealFunction& f, const RealFunction& g,
                                int n, int samples, std::uint64_t seed);
Estimate gaussian_gram_estimate(const FunctionalClass& cls, int i, int j,
                                int samples, std::uint64_t seed);

// Conditional Monte Carlo for two zigzag ridge functions
// psi_a(<u,x>) psi_a(<v,x>). Only <u,x> is sampled; the conditional mean of
// the second factor is integrated in closed form through the Fourier
// series of the triangle wave that psi_a follows on [-a, a]. Its variance
// shrinks with the correlation itself, so tiny correlations stay resolvable
// where the plain estimator sits on its noise floor. bias_bound covers the
// flat tails beyond +-a that the series ignores.
Estimate zigzag_gram_conditional(const Vector& u, const Vector& v, int a,
                                 int samples, std::uint64_t seed);

struct Combination {
  IdList hypothesis_ids;
  std::vector<double> coefficients;
  std::string id;  // optional; generated when empty
};

struct CombinationSpec {
  std::variant<FiniteHypothesisClass, std::shared_ptr<const FunctionalClass>>
      base;
  std::vector<Combination> combinations;
  double kappa = 1.0;
  // Budget on the sum of squared coefficients of each combination.
  double coefficient_budget = std::numeric_limits<double>::infinity();
  // Maximum number of terms per combination; 0 means unlimited.
  int max_terms = 0;
};

std::variant<FiniteHypothesisClass, FunctionalClass> build_combination(
    const CombinationSpec& spec);

struct Restriction {
  FiniteHypothesisClass hypotheses;
  DistributionOverX distribution;
  Matrix points;  // n x m, one Gaussian input per column
};

Restriction finite_restriction(const FunctionalClass& f, int m_points,
                               std::uint64_t seed);

// Unit features in R^dim and hypothesis weights of norm radius whose signs
// define a binary class; points are kept only when every hypothesis sees
// margin at least 1, so the witness pair certifies margin complexity <=
// radius.
struct PlantedMarginClass {
  FiniteHypothesisClass hypotheses;
  EmbeddingWeightPair witness;
};

PlantedMarginClass planted_margin_class(int num_points, int num_hypotheses,
                                        int dim, double radius,
                                        std::uint64_t seed);

// Random classes used by the property suites.
FiniteHypothesisClass random_class(int num_hypotheses, int num_points,
                                   bool binary, std::uint64_t seed);
// Affine halfplanes in the plane restricted to random points; VC <= 3.
FiniteHypothesisClass random_halfplane_class(int num_points,
                                             int num_hypotheses,
                                             std::uint64_t seed);
DistributionOverX random_distribution(int num_points, std::uint64_t seed);

}  // namespace clab

#endif  // COMPLEXITY_LAB_CONSTRUCTIONS_HPP_
