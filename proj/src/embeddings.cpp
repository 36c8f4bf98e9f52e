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

#include "complexity_lab/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "complexity_lab/rng.hpp"
#include "complexity_lab/spectral.hpp"

namespace clab {
namespace {

constexpr double kDropTolerance = 1e-10;
constexpr double kTieTolerance = 1e-9;

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
}

}  // namespace

Embedding Embedding::tabular(Matrix features) {
  if (features.rows() < 1) throw InputError("embedding dimension must be >= 1");
  require_finite(features, "embedding");
  const int d = static_cast<int>(features.rows());
  return Embedding(d, std::move(features), nullptr);
}

Embedding Embedding::functional(int dimension, Function fn) {
  if (dimension < 1) throw InputError("embedding dimension must be >= 1");
  if (!fn) throw InputError("functional embedding needs a procedure");
  return Embedding(dimension, Matrix(), std::move(fn));
}

int Embedding::num_points() const {
  if (!is_tabular()) throw InputError("functional embedding has no point set");
  return static_cast<int>(features_.cols());
}

const Matrix& Embedding::features() const {
  if (!is_tabular()) {
    throw InputError("functional embedding must be tabulated first");
  }
  return features_;
}

Matrix Embedding::design(const std::vector<int>& points) const {
  const Matrix& f = features();
  Matrix out(static_cast<Eigen::Index>(points.size()), f.rows());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] < 0 || points[i] >= f.cols()) {
      throw InputError("sample point " + std::to_string(points[i]) +
                       " outside the embedding domain");
    }
    out.row(static_cast<Eigen::Index>(i)) = f.col(points[i]).transpose();
  }
  return out;
}

double Embedding::sup_norm() const {
  const Matrix& f = features();
  return f.cols() == 0 ? 0.0 : f.colwise().norm().maxCoeff();
}

Vector Embedding::evaluate(const Vector& x) const {
  if (is_tabular()) {
    throw InputError("tabular embedding is read through features()");
  }
  Vector out = fn_(x);
  if (out.size() != dimension_) {
    throw InputError("functional embedding returned the wrong dimension");
  }
  return out;
}

Embedding Embedding::tabulate(const Matrix& points) const {
  if (is_tabular()) return *this;
  Matrix f(dimension_, points.cols());
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    f.col(j) = evaluate(points.col(j));
  }
  return tabular(std::move(f));
}

EmbeddingWeightPair::EmbeddingWeightPair(Embedding embedding,
                                         IdList hypotheses, Matrix weights)
    : embedding_(std::move(embedding)),
      hypotheses_(std::move(hypotheses)),
      weights_(std::move(weights)) {
  if (weights_.rows() != static_cast<Eigen::Index>(hypotheses_.size()) ||
      weights_.cols() != embedding_.dimension()) {
    throw InputError("weight map must hold one length-" +
                     std::to_string(embedding_.dimension()) +
                     " vector per hypothesis");
  }
  require_finite(weights_, "weight map");
}

Matrix EmbeddingWeightPair::predictions() const {
  return weights_ * embedding_.features();
}

Matrix jl_matrix(int d_in, int d_target, std::uint64_t seed) {
  if (d_target < 1) throw InputError("d_target must be at least 1");
  if (d_in < 1) throw InputError("input dimension must be at least 1");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(d_target));
  Matrix g(d_target, d_in);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = normal(rng);
  }
  return g;
}

Embedding jl_project(const Embedding& phi, int d_target, std::uint64_t seed) {
  Matrix g = jl_matrix(phi.dimension(), d_target, seed);
  if (phi.is_tabular()) return Embedding::tabular(g * phi.features());
  return Embedding::functional(
      d_target, [g = std::move(g), phi](const Vector& x) -> Vector {
        return g * phi.evaluate(x);
      });
}

EmbeddingWeightPair jl_project(const EmbeddingWeightPair& pair, int d_target,
                               std::uint64_t seed) {
  const Matrix g = jl_matrix(pair.embedding().dimension(), d_target, seed);
  return EmbeddingWeightPair(
      Embedding::tabular(g * pair.embedding().features()), pair.hypotheses(),
      pair.weights() * g.transpose());
}

Matrix disagreement_matrix(const FiniteHypothesisClass& h,
                           const DistributionOverX& d) {
  if (h.label_kind() != LabelKind::kBinary) {
    throw InputError("disagreement needs a binary class");
  }
  // For +-1 rows, Pr[h != g] = (1 - <h, g>_D) / 2 with the D-weighted inner
  // product; computing it this way keeps the cost at one matrix product.
  Matrix dis = (1.0 - raw_gram(h, d).array()) * 0.5;
  dis = dis.cwiseMax(0.0);
  dis.diagonal().setZero();
  return dis;
}

CoverResult greedy_cover(const FiniteHypothesisClass& h,
                         const DistributionOverX& d, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  const Matrix dis = disagreement_matrix(h, d);
  const int n = h.num_hypotheses();
  const double slack = 1e-12;
  std::vector<char> covered(n, 0);
  int remaining = n;
  CoverResult out{{}, {}, std::vector<int>(n, -1), Vector::Zero(n),
                  EmbeddingWeightPair(Embedding::tabular(Matrix::Zero(1, 1)),
                                      {"_"}, Matrix::Zero(1, 1))};
  while (remaining > 0) {
    int best = -1;
    int best_gain = -1;
    for (int c = 0; c < n; ++c) {
      int gain = 0;
      for (int j = 0; j < n; ++j) {
        if (!covered[j] && dis(c, j) <= eps + slack) ++gain;
      }
      if (gain > best_gain) {
        best = c;
        best_gain = gain;
      }
    }
    out.cover.push_back(best);
    for (int j = 0; j < n; ++j) {
      if (!covered[j] && dis(best, j) <= eps + slack) {
        covered[j] = 1;
        --remaining;
      }
    }
  }
  // Assign each hypothesis to its nearest cover element (first on ties).
  const int k = static_cast<int>(out.cover.size());
  Matrix features(k, h.num_points());
  Matrix weights = Matrix::Zero(n, k);
  for (int c = 0; c < k; ++c) {
    features.row(c) = h.values().row(out.cover[c]);
    out.cover_ids.push_back(h.hypotheses()[out.cover[c]]);
  }
  for (int j = 0; j < n; ++j) {
    int arg = 0;
    for (int c = 1; c < k; ++c) {
      if (dis(out.cover[c], j) < dis(out.cover[arg], j)) arg = c;
    }
    out.assignment[j] = arg;
    out.distances[j] = dis(out.cover[arg], j);
    weights(j, arg) = 1.0;
  }
  out.pair = EmbeddingWeightPair(Embedding::tabular(std::move(features)),
                                 h.hypotheses(), std::move(weights));
  return out;
}

RepresenterReduction representer_reduce(
    const Embedding& phi, const std::vector<int>& sample_points) {
  if (sample_points.empty()) throw InputError("sample must be nonempty");
  const Matrix& f = phi.features();
  const Matrix sample = phi.design(sample_points);  // m x d
  const double scale = std::max(1.0, sample.rowwise().norm().maxCoeff());
  // Modified Gram-Schmidt, applied twice per vector for stability.
  std::vector<Vector> basis;
  for (Eigen::Index i = 0; i < sample.rows(); ++i) {
    Vector v = sample.row(i).transpose();
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : basis) v -= q.dot(v) * q;
    }
    const double norm = v.norm();
    if (norm > kDropTolerance * scale) basis.push_back(v / norm);
  }
  Matrix q(std::max<std::size_t>(basis.size(), 1), f.rows());
  q.setZero();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    q.row(static_cast<Eigen::Index>(i)) = basis[i].transpose();
  }
  // An all-zero sample spans {0}; a single zero coordinate represents it.
  return RepresenterReduction{Embedding::tabular(q * f), q};
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kIdentity: return "identity";
    case FamilyKind::kZero: return "zero";
    case FamilyKind::kJlGaussian: return "jl-gaussian";
    case FamilyKind::kSvd: return "svd";
    case FamilyKind::kFixed: return "fixed";
    case FamilyKind::kMixture: return "mixture";
  }
  return "?";
}

FamilyKind parse_family_kind(std::string_view text) {
  for (FamilyKind k : {FamilyKind::kIdentity, FamilyKind::kZero,
                       FamilyKind::kJlGaussian, FamilyKind::kSvd,
                       FamilyKind::kFixed, FamilyKind::kMixture}) {
    if (to_string(k) == text) return k;
  }
  throw ConfigError("unknown embedding family kind '" + std::string(text) +
                    "'");
}

EmbeddingFamily EmbeddingFamily::identity(int num_points) {
  if (num_points < 1) throw InputError("identity family needs points");
  EmbeddingFamily f;
  f.kind_ = FamilyKind::kIdentity;
  f.dimension_ = num_points;
  f.support_.push_back(
      {Embedding::tabular(Matrix::Identity(num_points, num_points)), {}, 1.0});
  return f;
}

EmbeddingFamily EmbeddingFamily::zero(int num_points, int d) {
  if (num_points < 1 || d < 1) throw InputError("zero family needs d >= 1");
  EmbeddingFamily f;
  f.kind_ = FamilyKind::kZero;
  f.dimension_ = d;
  f.support_.push_back({Embedding::tabular(Matrix::Zero(d, num_points)), {}, 1.0});
  return f;
}

EmbeddingFamily EmbeddingFamily::jl_gaussian(Embedding base, int d_target,
                                             std::uint64_t seed) {
  if (d_target < 1) throw InputError("d_target must be at least 1");
  EmbeddingFamily f;
  f.kind_ = FamilyKind::kJlGaussian;
  f.dimension_ = d_target;
  f.seed_ = seed;
  f.base_ = std::make_shared<const Embedding>(std::move(base));
  return f;
}

EmbeddingFamily EmbeddingFamily::jl_gaussian(EmbeddingWeightPair base,
                                             int d_target, std::uint64_t seed) {
  EmbeddingFamily f = jl_gaussian(base.embedding(), d_target, seed);
  f.weight_ids_ = base.hypotheses();
  f.base_pair_ = std::make_shared<const EmbeddingWeightPair>(std::move(base));
  return f;
}

EmbeddingFamily EmbeddingFamily::svd(const FiniteHypothesisClass& h,
                                     const DistributionOverX& d,
                                     int dimension) {
  d.check_aligned(h);
  const int limit = std::min(h.num_hypotheses(), h.num_points());
  if (dimension < 1 || dimension > h.num_points()) {
    throw InputError("svd family dimension must lie in [1, |X|]");
  }
  const Matrix m = WeightedClassMatrix(h, d).matrix();
  Eigen::BDCSVD<Eigen::MatrixXd> solver(Eigen::MatrixXd(m),
                                        Eigen::ComputeThinV);
  const Vector sigma = solver.singularValues();
  const Eigen::MatrixXd v = solver.matrixV();  // |X| x limit
  const Vector& p = d.probabilities();

  auto features_for = [&](const std::vector<int>& columns) {
    Matrix f = Matrix::Zero(dimension, h.num_points());
    for (std::size_t r = 0; r < columns.size(); ++r) {
      for (int x = 0; x < h.num_points(); ++x) {
        if (p[x] > 0.0) {
          f(static_cast<Eigen::Index>(r), x) = v(x, columns[r]) / std::sqrt(p[x]);
        }
      }
    }
    return Embedding::tabular(std::move(f));
  };

  EmbeddingFamily f;
  f.kind_ = FamilyKind::kSvd;
  f.dimension_ = dimension;
  const int used = std::min(dimension, limit);
  // Tied block [a, b) around the cut between positions used-1 and used.
  int a = used, b = used;
  if (used < limit && used > 0 &&
      std::abs(sigma[used - 1] - sigma[used]) <= kTieTolerance) {
    a = used - 1;
    while (a > 0 && std::abs(sigma[a - 1] - sigma[used]) <= kTieTolerance) --a;
    b = used + 1;
    while (b < limit && std::abs(sigma[b] - sigma[used]) <= kTieTolerance) ++b;
  }
  if (a == b) {
    std::vector<int> columns(used);
    for (int i = 0; i < used; ++i) columns[i] = i;
    f.support_.push_back({features_for(columns), {}, 1.0});
    return f;
  }
  const int s = b - a;
  const int k = used - a;
  for (int j = 0; j < s; ++j) {
    std::vector<int> columns;
    for (int i = 0; i < a; ++i) columns.push_back(i);
    for (int i = 0; i < k; ++i) columns.push_back(a + (j + i) % s);
    f.support_.push_back({features_for(columns), {}, 1.0 / s});
  }
  return f;
}

EmbeddingFamily EmbeddingFamily::fixed(Embedding embedding) {
  EmbeddingFamily f;
  f.kind_ = FamilyKind::kFixed;
  f.dimension_ = embedding.dimension();
  f.support_.push_back({std::move(embedding), {}, 1.0});
  return f;
}

EmbeddingFamily EmbeddingFamily::fixed(EmbeddingWeightPair pair) {
  EmbeddingFamily f;
  f.kind_ = FamilyKind::kFixed;
  f.dimension_ = pair.embedding().dimension();
  f.weight_ids_ = pair.hypotheses();
  f.support_.push_back({pair.embedding(), pair.weights(), 1.0});
  return f;
}

EmbeddingFamily EmbeddingFamily::mixture(std::vector<FamilyMember> members,
                                         IdList weight_ids) {
  if (members.empty()) throw InputError("mixture needs at least one member");
  double total = 0.0;
  for (const auto& m : members) {
    if (!(m.probability >= 0.0)) throw InputError("negative member probability");
    if (m.embedding.dimension() != members.front().embedding.dimension()) {
      throw InputError("mixture members differ in dimension");
    }
    if (m.weights && (m.weights->rows() !=
                          static_cast<Eigen::Index>(weight_ids.size()) ||
                      m.weights->cols() != m.embedding.dimension())) {
      throw InputError("mixture member weights do not match the weight ids");
    }
    total += m.probability;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw InputError("mixture probabilities must sum to 1");
  }
  EmbeddingFamily f;
  f.kind_ = FamilyKind::kMixture;
  f.dimension_ = members.front().embedding.dimension();
  f.support_ = std::move(members);
  f.weight_ids_ = std::move(weight_ids);
  return f;
}

const std::vector<FamilyMember>& EmbeddingFamily::support() const {
  if (!is_finite()) throw InputError("random family has no finite support");
  return support_;
}

FamilyMember EmbeddingFamily::draw(std::uint64_t index) const {
  const std::uint64_t child = derive_seed(seed_, index);
  if (kind_ == FamilyKind::kJlGaussian) {
    if (base_pair_) {
      EmbeddingWeightPair p = jl_project(*base_pair_, dimension_, child);
      return {p.embedding(), p.weights(), 1.0};
    }
    return {jl_project(*base_, dimension_, child), {}, 1.0};
  }
  if (support_.size() == 1) return support_.front();
  Rng rng = make_rng(child);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  for (const auto& m : support_) {
    acc += m.probability;
    if (u < acc) return m;
  }
  return support_.back();
}

Embedding sample_embedding(const EmbeddingFamily& family, std::uint64_t index) {
  return family.draw(index).embedding;
}

}  // namespace clab
