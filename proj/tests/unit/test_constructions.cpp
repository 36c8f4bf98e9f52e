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

#include <cmath>
#include <memory>
#include <string>
#include <variant>

#include <gtest/gtest.h>

#include "complexity_lab/constructions.hpp"
#include "complexity_lab/spectral.hpp"

namespace clab {
namespace {

// Reads the sign string used for cube points: '-' means the coordinate is -1.
std::vector<int> signs_of(const std::string& id) {
  std::vector<int> s;
  for (char c : id) {
    if (c == '+') s.push_back(1);
    if (c == '-') s.push_back(-1);
  }
  return s;
}

// Parses "chi{1,3}" into 1-based coordinate indices.
std::vector<int> subset_of(const std::string& id) {
  std::vector<int> out;
  std::string inner = id.substr(4, id.size() - 5);
  std::size_t pos = 0;
  while (pos < inner.size()) {
    const std::size_t comma = inner.find(',', pos);
    const std::size_t end = comma == std::string::npos ? inner.size() : comma;
    out.push_back(std::stoi(inner.substr(pos, end - pos)));
    pos = end + 1;
  }
  return out;
}

TEST(Parities, ValuesMatchProductOfCoordinates) {
  for (int n = 1; n <= 4; ++n) {
    const auto h = parities(n);
    ASSERT_EQ(h.num_hypotheses(), 1 << n);
    ASSERT_EQ(h.num_points(), 1 << n);
    for (int r = 0; r < h.num_hypotheses(); ++r) {
      const auto s = subset_of(h.hypotheses()[r]);
      for (int c = 0; c < h.num_points(); ++c) {
        const auto x = signs_of(h.domain()[c]);
        ASSERT_EQ(static_cast<int>(x.size()), n);
        int prod = 1;
        for (int i : s) prod *= x[i - 1];
        EXPECT_EQ(h.values()(r, c), prod);
      }
    }
  }
}

TEST(Parities, EmptySetIsConstantOne) {
  const auto h = parities(3);
  const int r = h.hypothesis_index("chi{}");
  EXPECT_TRUE((h.values().row(r).array() == 1.0).all());
}

TEST(Parities, AllSingularValuesEqual) {
  for (int n = 1; n <= 5; ++n) {
    const auto h = parities(n);
    const WeightedClassMatrix m(h, DistributionOverX::uniform(h.num_points()));
    const Vector s = m.singular_values();
    EXPECT_NEAR(s.maxCoeff(), 1.0, 1e-10);
    EXPECT_NEAR(s.minCoeff(), 1.0, 1e-10);
  }
}

TEST(Parities, RejectsOutOfRangeDimension) {
  EXPECT_THROW(parities(0), InputError);
  EXPECT_THROW(parities(kMaxCubeDimension + 1), InputError);
}

TEST(OneSparse, RowsAreCoordinates) {
  const auto h = one_sparse(3);
  ASSERT_EQ(h.num_hypotheses(), 3);
  for (int c = 0; c < h.num_points(); ++c) {
    const auto x = signs_of(h.domain()[c]);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(h.values()(i, c), x[i]);
  }
}

// Decision list read straight from its rule: scan blocks from the last to the
// first and answer by the parity of the first matching block index.
double decision_list_oracle(const std::string& hid, const std::string& xid,
                            int k, int p) {
  const auto h = signs_of(hid);
  const auto x = signs_of(xid);
  for (int i = k; i >= 1; --i) {
    bool match = true;
    for (int j = 0; j < p; ++j) {
      if (h[(i - 1) * p + j] != x[(i - 1) * p + j]) match = false;
    }
    if (match) return i % 2 == 1 ? -1.0 : 1.0;
  }
  return 1.0;
}

TEST(DecisionList, MatchesRuleOracle) {
  for (auto [k, p] : {std::pair{1, 2}, std::pair{2, 2}, std::pair{3, 1},
                      std::pair{2, 3}}) {
    const auto h = pattern_decision_list(k, p);
    ASSERT_EQ(h.num_hypotheses(), 1 << (k * p));
    for (int r = 0; r < h.num_hypotheses(); ++r) {
      for (int c = 0; c < h.num_points(); ++c) {
        EXPECT_EQ(h.values()(r, c),
                  decision_list_oracle(h.hypotheses()[r], h.domain()[c], k, p))
            << "k=" << k << " p=" << p;
      }
    }
  }
}

TEST(DecisionList, SeparatorInIds) {
  const auto h = pattern_decision_list(2, 2);
  EXPECT_EQ(h.domain()[0], "++|++");
}

TEST(DecisionList, SizeLimit) {
  EXPECT_THROW(pattern_decision_list(4, 4), SizeError);
  EXPECT_THROW(pattern_decision_list(0, 2), InputError);
}

TEST(Psi, ListedValues) {
  EXPECT_DOUBLE_EQ(psi(5, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(psi(5, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(psi(5, -1.0), -1.0);
  EXPECT_DOUBLE_EQ(psi(5, 3.0), -1.0);
  EXPECT_DOUBLE_EQ(psi(5, 2.0), 0.0);
  for (double z : {-9.0, -5.0, -5.5}) EXPECT_DOUBLE_EQ(psi(5, z), -1.0);
  for (double z : {5.0, 6.0, 100.0}) EXPECT_DOUBLE_EQ(psi(5, z), 1.0);
}

TEST(Psi, ShapeOnGrid) {
  for (int a : {1, 3, 5, 7}) {
    double prev = psi(a, -a - 2.0);
    for (int i = 1; i <= 100 * (2 * a + 4); ++i) {
      const double z = -a - 2.0 + 0.01 * i;
      const double v = psi(a, z);
      EXPECT_LE(std::abs(v), 1.0 + 1e-12);
      EXPECT_NEAR(psi(a, -z), -v, 1e-9);
      EXPECT_LE(std::abs(v - prev), 0.01 + 1e-9);
      EXPECT_NEAR(v, psi_relu_sum(a, z), 1e-9) << "a=" << a << " z=" << z;
      prev = v;
    }
  }
}

TEST(Psi, RejectsEvenParameter) {
  EXPECT_THROW(psi(4, 0.0), InputError);
  EXPECT_THROW(psi_relu_sum(0, 0.0), InputError);
}

TEST(Zigzag, ParameterAndNormCheck) {
  EXPECT_EQ(zigzag_parameter(2), 25);
  Vector u = Vector::Zero(2);
  u[0] = 2.0;
  const auto f = FunctionalClass::zigzag(2, {u});
  EXPECT_EQ(f.a(), 25);
  Vector x(2);
  x << 0.25, 7.0;
  EXPECT_DOUBLE_EQ(f.evaluate(0, x), psi(25, 0.5));
  u[0] = 1.0;
  EXPECT_THROW(FunctionalClass::zigzag(2, {u}), InputError);
}

TEST(Zigzag, ReluDecompositionReproducesPsi) {
  for (int n : {1, 2, 3}) {
    const int a = zigzag_parameter(n);
    Vector u = Vector::Zero(n);
    u[0] = n;
    const auto dec = zigzag_relu_decomposition(u, a);
    ASSERT_EQ(dec.pieces.size(), 6 * n * n + 3);
    ASSERT_EQ(dec.coefficients.size(), static_cast<std::size_t>(6 * n * n + 3));
    for (double c : dec.coefficients) EXPECT_LE(std::abs(c), 2.0);
    for (int i = -200; i <= 200; ++i) {
      Vector x = Vector::Zero(n);
      x[0] = 0.01 * i * (a + 2.0) / 2.0 / n;
      double sum = 0.0;
      for (int k = 0; k < dec.pieces.size(); ++k) {
        sum += dec.coefficients[k] * dec.pieces.evaluate(k, x);
      }
      EXPECT_NEAR(sum, psi(a, u.dot(x)), 1e-9);
    }
  }
}

TEST(Relu, BoundsEnforced) {
  const auto [wb, bb] = default_relu_bounds(2);
  EXPECT_DOUBLE_EQ(wb, 112.0);
  EXPECT_DOUBLE_EQ(bb, 1568.0);
  Vector w(2);
  w << 3.0, 4.0;
  EXPECT_THROW(FunctionalClass::relu(2, {{w, 0.0}}, 4.0, 1.0), ConstraintError);
  const auto f = FunctionalClass::relu(2, {{w, -1.0}}, 5.0, 1.0);
  Vector x(2);
  x << 1.0, 1.0;
  EXPECT_DOUBLE_EQ(f.evaluate(0, x), 6.0);
  x << -1.0, 0.0;
  EXPECT_DOUBLE_EQ(f.evaluate(0, x), 0.0);
}

TEST(Relu, ScalingUsesHomogeneity) {
  Vector w(1);
  w << 2.0;
  const auto f = FunctionalClass::relu(1, {{w, -1.0}}, 2.0, 1.0);
  const auto g = f.scaled(3.0);
  EXPECT_EQ(g.kind(), FunctionalClass::Kind::kRelu);
  EXPECT_DOUBLE_EQ(g.w_bound(), 6.0);
  for (double t : {-1.0, 0.2, 0.7, 3.0}) {
    Vector x(1);
    x << t;
    EXPECT_NEAR(g.evaluate(0, x), 3.0 * f.evaluate(0, x), 1e-12);
  }
}

TEST(Combination, FiniteBaseIsLinear) {
  const auto base = parities(2);
  CombinationSpec spec{base, {}};
  spec.kappa = 0.5;
  spec.combinations.push_back({{"chi{1}", "chi{2}"}, {1.0, -1.0}, "diff"});
  const auto out = std::get<FiniteHypothesisClass>(build_combination(spec));
  EXPECT_EQ(out.label_kind(), LabelKind::kReal);
  EXPECT_EQ(out.hypotheses()[0], "diff");
  const Vector want = 0.5 * (base.values().row(1) - base.values().row(2)).transpose();
  EXPECT_LE((out.values().row(0).transpose() - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Combination, BudgetAndTermLimits) {
  CombinationSpec spec{parities(2), {}};
  spec.combinations.push_back({{"chi{1}", "chi{2}", "chi{}"}, {1.0, 1.0, 1.0}, ""});
  spec.coefficient_budget = 2.0;
  EXPECT_THROW(build_combination(spec), ConstraintError);
  spec.coefficient_budget = 3.0;
  spec.max_terms = 2;
  EXPECT_THROW(build_combination(spec), ConstraintError);
  spec.max_terms = 3;
  const auto out = std::get<FiniteHypothesisClass>(build_combination(spec));
  EXPECT_EQ(out.hypotheses()[0], "comb0");
}

TEST(Combination, FunctionalBaseEvaluatesPointwise) {
  const auto base = std::make_shared<const FunctionalClass>(zigzag_class_sample(2, 3, 11));
  CombinationSpec spec{base, {}};
  spec.kappa = 2.0;
  spec.combinations.push_back({{base->ids()[0], base->ids()[2]}, {0.5, -1.5}, ""});
  const auto f = std::get<FunctionalClass>(build_combination(spec));
  Rng rng = make_rng(5);
  for (int t = 0; t < 20; ++t) {
    const Vector x = sample_sphere(2, 1.3, rng);
    EXPECT_NEAR(f.evaluate(0, x),
                2.0 * (0.5 * base->evaluate(0, x) - 1.5 * base->evaluate(2, x)), 1e-12);
  }
}

TEST(Restriction, TabulatesTheClass) {
  const auto f = zigzag_class_sample(3, 4, 2);
  const auto r = finite_restriction(f, 10, 9);
  ASSERT_EQ(r.hypotheses.num_points(), 10);
  ASSERT_EQ(r.hypotheses.num_hypotheses(), 4);
  for (int j = 0; j < 10; ++j) {
    for (int h = 0; h < 4; ++h) {
      EXPECT_DOUBLE_EQ(r.hypotheses.values()(h, j), f.evaluate(h, r.points.col(j)));
    }
  }
}

TEST(GaussianGram, ConstantFunctionsAreExact) {
  const auto one = [](const Vector&) { return 1.0; };
  const Estimate e = gaussian_gram_estimate(one, one, 3, 1000, 4);
  EXPECT_NEAR(e.value, 1.0, 1e-12);
  EXPECT_NEAR(e.standard_error, 0.0, 1e-12);
}

TEST(GaussianGram, CoordinateSquareHasUnitMean) {
  const auto x0 = [](const Vector& x) { return x[0]; };
  const Estimate e = gaussian_gram_estimate(x0, x0, 2, 200000, 7);
  EXPECT_NEAR(e.value, 1.0, 5.0 * e.standard_error);
}

TEST(GaussianGram, ConditionalAgreesWithPlainEstimator) {
  const auto f = zigzag_class_sample(2, 2, 21);
  const int a = f.a();
  const Estimate plain = gaussian_gram_estimate(f, 0, 1, 200000, 3);
  const Estimate cond =
      zigzag_gram_conditional(f.directions()[0], f.directions()[1], a, 20000, 3);
  const double tol = 5.0 * std::hypot(plain.standard_error, cond.standard_error) +
                     cond.bias_bound;
  EXPECT_NEAR(plain.value, cond.value, tol);
}

TEST(Planted, WitnessSeparatesWithMargin) {
  const auto pm = planted_margin_class(64, 5, 6, 3.0, 17);
  const Matrix pred = pm.witness.predictions();
  const Matrix& y = pm.hypotheses.values();
  EXPECT_GE((pred.array() * y.array()).minCoeff(), 1.0 - 1e-12);
  for (int r = 0; r < pm.witness.weights().rows(); ++r) {
    EXPECT_NEAR(pm.witness.weights().row(r).norm(), 3.0, 1e-12);
  }
  const Matrix& phi = pm.witness.embedding().features();
  for (int c = 0; c < phi.cols(); ++c) EXPECT_NEAR(phi.col(c).norm(), 1.0, 1e-12);
}

TEST(RandomConstructions, DeterministicPerSeed) {
  const auto a = random_class(4, 6, true, 3);
  const auto b = random_class(4, 6, true, 3);
  EXPECT_EQ(a.values(), b.values());
  const auto d = random_distribution(6, 3);
  EXPECT_NEAR(d.probabilities().sum(), 1.0, 1e-12);
  EXPECT_GT(d.probabilities().minCoeff(), 0.0);
  const auto hp = random_halfplane_class(20, 8, 1);
  EXPECT_EQ(hp.label_kind(), LabelKind::kBinary);
}

}  // namespace
}  // namespace clab
