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
#include <numeric>

#include <gtest/gtest.h>

#include "complexity_lab/constructions.hpp"
#include "complexity_lab/embeddings.hpp"
#include "complexity_lab/spectral.hpp"
#include "oracles.hpp"

namespace clab {
namespace {

Matrix weighted(const FiniteHypothesisClass& h, const DistributionOverX& d) {
  return h.values() * d.probabilities().cwiseSqrt().asDiagonal();
}

TEST(Embedding, TabularDesignAndSupNorm) {
  Matrix f(2, 3);
  f << 1, 0, 3,
       0, 2, 4;
  const Embedding e = Embedding::tabular(f);
  EXPECT_EQ(e.dimension(), 2);
  EXPECT_EQ(e.num_points(), 3);
  EXPECT_DOUBLE_EQ(e.sup_norm(), 5.0);
  const Matrix x = e.design({2, 0});
  EXPECT_EQ(x.rows(), 2);
  EXPECT_DOUBLE_EQ(x(0, 1), 4.0);
  EXPECT_DOUBLE_EQ(x(1, 0), 1.0);
  EXPECT_THROW(e.design({3}), InputError);
  EXPECT_THROW(e.evaluate(Vector::Zero(2)), InputError);
}

TEST(Embedding, FunctionalTabulates) {
  const Embedding e = Embedding::functional(2, [](const Vector& x) {
    Vector out(2);
    out << x.sum(), x[0] * x[0];
    return out;
  });
  Matrix pts(2, 2);
  pts << 1, 2,
         3, 4;
  const Embedding t = e.tabulate(pts);
  EXPECT_DOUBLE_EQ(t.features()(0, 1), 6.0);
  EXPECT_DOUBLE_EQ(t.features()(1, 1), 4.0);
  EXPECT_THROW(e.features(), InputError);
}

TEST(Embedding, PairShapeChecked) {
  EXPECT_THROW(EmbeddingWeightPair(Embedding::tabular(Matrix::Ones(2, 3)),
                                   {"a"}, Matrix::Ones(1, 3)),
               InputError);
  const EmbeddingWeightPair p(Embedding::tabular(Matrix::Ones(2, 3)), {"a"},
                              Matrix::Ones(1, 2));
  EXPECT_TRUE((p.predictions().array() == 2.0).all());
}

TEST(Jl, EntryVarianceAndDeterminism) {
  const Matrix a = jl_matrix(50, 40, 9);
  EXPECT_EQ(a, jl_matrix(50, 40, 9));
  const double var = a.squaredNorm() / a.size();
  EXPECT_NEAR(var, 1.0 / 40, 0.15 / 40);
}

TEST(Jl, InnerProductsAreUnbiased) {
  Rng rng = make_rng(4);
  Matrix phi(6, 5);
  for (int c = 0; c < 5; ++c) phi.col(c) = sample_sphere(6, 1.0, rng);
  Matrix w(3, 6);
  for (int r = 0; r < 3; ++r) w.row(r) = sample_sphere(6, 2.0, rng).transpose();
  const EmbeddingWeightPair base(Embedding::tabular(phi), {"a", "b", "c"}, w);
  const Matrix target = base.predictions();
  const int draws = 4000;
  Matrix mean = Matrix::Zero(3, 5);
  for (int i = 0; i < draws; ++i) mean += jl_project(base, 4, derive_seed(1, i)).predictions();
  mean /= draws;
  // Each projected inner product has variance at most 2 |w|^2 |phi|^2 / d = 2.
  const double tol = 5.0 * std::sqrt(2.0 / draws);
  EXPECT_LE((mean - target).cwiseAbs().maxCoeff(), tol);
}

TEST(Cover, EveryHypothesisWithinEps) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const auto h = random_halfplane_class(30, 25, s);
    const auto d = random_distribution(30, s + 100);
    const double eps = 0.05 + 0.01 * static_cast<double>(s % 10);
    const CoverResult c = greedy_cover(h, d, eps);
    const Vector& p = d.probabilities();
    for (int j = 0; j < h.num_hypotheses(); ++j) {
      const int row = c.cover[c.assignment[j]];
      double mass = 0.0;
      for (int x = 0; x < h.num_points(); ++x) {
        if (h.values()(row, x) != h.values()(j, x)) mass += p[x];
      }
      EXPECT_LE(mass, eps + 1e-9);
      EXPECT_NEAR(mass, c.distances[j], 1e-9);
    }
    const Matrix pred = c.pair.predictions();
    for (int j = 0; j < h.num_hypotheses(); ++j) {
      EXPECT_EQ(pred.row(j), h.values().row(c.cover[c.assignment[j]]));
    }
  }
}

TEST(Cover, ParitiesNeedEveryElement) {
  const auto h = parities(3);
  const CoverResult c = greedy_cover(h, DistributionOverX::uniform(8), 0.25);
  EXPECT_EQ(c.cover.size(), 8u);
}

TEST(Cover, RejectsBadInputs) {
  const auto h = parities(2);
  EXPECT_THROW(greedy_cover(h, DistributionOverX::uniform(4), 0.0), InputError);
  const auto real = random_class(3, 4, false, 1);
  EXPECT_THROW(disagreement_matrix(real, DistributionOverX::uniform(4)), InputError);
}

TEST(Representer, PreservesSampleInnerProducts) {
  for (std::uint64_t s = 1; s <= 30; ++s) {
    Rng rng = make_rng(s);
    const int d = 3 + static_cast<int>(s % 5);
    const int nx = 12;
    Matrix phi(d, nx);
    for (int c = 0; c < nx; ++c) phi.col(c) = sample_sphere(d, 1.0 + c % 3, rng);
    const Embedding e = Embedding::tabular(phi);
    std::vector<int> sample;
    std::uniform_int_distribution<int> pick(0, nx - 1);
    for (int i = 0; i < 1 + static_cast<int>(s % 6); ++i) sample.push_back(pick(rng));
    sample.push_back(sample.front());  // duplicates must be harmless
    const RepresenterReduction r = representer_reduce(e, sample);
    EXPECT_LE((r.basis * r.basis.transpose() -
               Matrix::Identity(r.basis.rows(), r.basis.rows())).cwiseAbs().maxCoeff(),
              1e-9);
    for (int t = 0; t < 5; ++t) {
      const Vector w = sample_sphere(d, 3.0, rng);
      for (int x : sample) {
        EXPECT_NEAR(w.dot(phi.col(x)), r.project(w).dot(r.reduced.features().col(x)), 1e-9);
      }
    }
  }
}

TEST(Representer, ZeroSampleSpansNothing) {
  const Embedding e = Embedding::tabular(Matrix::Zero(3, 2));
  const RepresenterReduction r = representer_reduce(e, {0, 1});
  EXPECT_EQ(r.reduced.dimension(), 1);
  EXPECT_TRUE((r.reduced.features().array() == 0.0).all());
}

TEST(Family, IdentityAndZero) {
  const auto id = EmbeddingFamily::identity(4);
  EXPECT_EQ(id.dimension(), 4);
  EXPECT_EQ(id.draw(7).embedding.features(), Matrix::Identity(4, 4));
  const auto z = EmbeddingFamily::zero(4, 2);
  EXPECT_TRUE((z.draw(0).embedding.features().array() == 0.0).all());
  EXPECT_EQ(parse_family_kind(to_string(FamilyKind::kSvd)), FamilyKind::kSvd);
  EXPECT_THROW(parse_family_kind("bogus"), ConfigError);
}

TEST(Family, SvdResidualMatchesEigenvalueTail) {
  for (std::uint64_t s = 1; s <= 15; ++s) {
    const auto h = random_class(6, 9, s % 2 == 0, s);
    const auto d = random_distribution(9, s + 50);
    const Matrix m = weighted(h, d);
    std::vector<double> ev = oracle::jacobi_eigenvalues(m * m.transpose());
    std::sort(ev.rbegin(), ev.rend());
    for (int dim = 1; dim <= 6; ++dim) {
      const auto fam = EmbeddingFamily::svd(h, d, dim);
      ASSERT_EQ(fam.support().size(), 1u);
      const Matrix basis = fam.support()[0].embedding.features() *
                           d.probabilities().cwiseSqrt().asDiagonal();
      double tail = 0.0;
      for (std::size_t i = dim; i < ev.size(); ++i) tail += std::max(ev[i], 0.0);
      EXPECT_NEAR(oracle::projection_error(m, basis), 0.5 * tail / 6.0, 1e-8);
    }
  }
}

TEST(Family, SvdTiesGiveEqualPerHypothesisError) {
  const auto h = parities(2);
  const auto d = DistributionOverX::uniform(4);
  const Matrix m = weighted(h, d);
  for (int dim = 1; dim <= 3; ++dim) {
    const auto fam = EmbeddingFamily::svd(h, d, dim);
    double total_p = 0.0;
    Vector per = Vector::Zero(4);
    for (const auto& member : fam.support()) {
      total_p += member.probability;
      const Matrix basis = member.embedding.features() * 0.5;
      for (int r = 0; r < 4; ++r) {
        per[r] += member.probability * oracle::projection_error(m.row(r), basis);
      }
    }
    EXPECT_NEAR(total_p, 1.0, 1e-12);
    for (int r = 0; r < 4; ++r) EXPECT_NEAR(per[r], 0.5 * (1.0 - dim / 4.0), 1e-9);
  }
}

TEST(Family, MixtureDrawFollowsProbabilities) {
  std::vector<FamilyMember> members;
  members.push_back({Embedding::tabular(Matrix::Zero(1, 2)), {}, 0.25});
  members.push_back({Embedding::tabular(Matrix::Ones(1, 2)), {}, 0.75});
  const auto fam = EmbeddingFamily::mixture(members);
  int ones = 0;
  for (int i = 0; i < 4000; ++i) ones += fam.draw(i).embedding.features()(0, 0) == 1.0;
  EXPECT_NEAR(ones / 4000.0, 0.75, 0.03);
  members[0].probability = 0.5;
  EXPECT_THROW(EmbeddingFamily::mixture(members), InputError);
}

TEST(Family, JlDrawsAreDeterministic) {
  const auto fam = EmbeddingFamily::jl_gaussian(Embedding::tabular(Matrix::Identity(5, 5)), 3, 42);
  EXPECT_FALSE(fam.is_finite());
  EXPECT_EQ(fam.draw(3).embedding.features(), fam.draw(3).embedding.features());
  EXPECT_NE(fam.draw(3).embedding.features(), fam.draw(4).embedding.features());
  EXPECT_THROW(fam.support(), InputError);
}

}  // namespace
}  // namespace clab
