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

#include "complexity_lab/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "complexity_lab/parallel.hpp"

namespace clab {
namespace {

void check_cube(int n) {
  if (n < 1 || n > kMaxCubeDimension) {
    throw InputError("cube dimension must lie in [1, " +
                     std::to_string(kMaxCubeDimension) + "], got " +
                     std::to_string(n));
  }
}

// "+-+" style label of a cube point; character i is the sign of x_{i+1}.
std::string sign_string(unsigned mask, int n, int block = 0) {
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (block > 0 && i > 0 && i % block == 0) s.push_back('|');
    s.push_back((mask >> i) & 1U ? '-' : '+');
  }
  return s;
}

IdList cube_points(int n, int block = 0) {
  IdList ids;
  ids.reserve(std::size_t{1} << n);
  for (unsigned m = 0; m < (1U << n); ++m) ids.push_back(sign_string(m, n, block));
  return ids;
}

double positive_part(double v) { return v > 0.0 ? v : 0.0; }

IdList default_ids(const char* prefix, int count) {
  IdList ids;
  for (int i = 0; i < count; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

double normal_cdf_upper(double t) { return 0.5 * std::erfc(t / std::sqrt(2.0)); }

}  // namespace

FiniteHypothesisClass parities(int n) {
  check_cube(n);
  const unsigned size = 1U << n;
  IdList hyps;
  Matrix values(size, size);
  for (unsigned s = 0; s < size; ++s) {
    std::string id = "chi{";
    bool first = true;
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1U) {
        id += (first ? "" : ",") + std::to_string(i + 1);
        first = false;
      }
    }
    hyps.push_back(id + "}");
    for (unsigned x = 0; x < size; ++x) {
      values(s, x) = (std::popcount(s & x) % 2) ? -1.0 : 1.0;
    }
  }
  return FiniteHypothesisClass(cube_points(n), std::move(hyps),
                               std::move(values), LabelKind::kBinary);
}

FiniteHypothesisClass one_sparse(int n) {
  check_cube(n);
  const unsigned size = 1U << n;
  Matrix values(n, size);
  for (int i = 0; i < n; ++i) {
    for (unsigned x = 0; x < size; ++x) {
      values(i, x) = ((x >> i) & 1U) ? -1.0 : 1.0;
    }
  }
  IdList hyps;
  for (int i = 1; i <= n; ++i) hyps.push_back("x" + std::to_string(i));
  return FiniteHypothesisClass(cube_points(n), std::move(hyps),
                               std::move(values), LabelKind::kBinary);
}

FiniteHypothesisClass pattern_decision_list(int k, int p) {
  if (k < 1 || p < 1) throw InputError("k and p must be positive");
  if (k * p > kMaxCubeDimension) {
    throw SizeError("k*p = " + std::to_string(k * p) + " exceeds " +
                    std::to_string(kMaxCubeDimension));
  }
  const int n = k * p;
  const unsigned size = 1U << n;
  const unsigned block_mask = (1U << p) - 1U;
  Matrix values(size, size);
  for (unsigned h = 0; h < size; ++h) {
    for (unsigned x = 0; x < size; ++x) {
      double v = 1.0;
      for (int i = k; i >= 1; --i) {
        if ((((h ^ x) >> ((i - 1) * p)) & block_mask) == 0U) {
          v = (i % 2 == 1) ? -1.0 : 1.0;
          break;
        }
      }
      values(h, x) = v;
    }
  }
  IdList ids = cube_points(n, p);
  return FiniteHypothesisClass(ids, ids, std::move(values), LabelKind::kBinary);
}

double psi(int a, double z) {
  if (a < 1 || a % 2 == 0) {
    throw InputError("psi needs an odd a >= 1, got " + std::to_string(a));
  }
  // The alternating ReLU sum is a triangle wave of period 4 that equals -1
  // at z = -a and is clamped to +-1 outside [-a, a]; evaluate it in O(1).
  if (z <= -a) return -1.0;
  if (z >= a) return 1.0;
  const double r = std::fmod(z + a, 4.0);
  return r <= 2.0 ? r - 1.0 : 3.0 - r;
}

double psi_relu_sum(int a, double z) {
  if (a < 1 || a % 2 == 0) {
    throw InputError("psi needs an odd a >= 1, got " + std::to_string(a));
  }
  double v = -1.0 + positive_part(z + a) - positive_part(z - a);
  for (int i = 1; i <= a - 1; ++i) {
    v += 2.0 * ((i % 2) ? -1.0 : 1.0) * positive_part(z + a - 2.0 * i);
  }
  return v;
}

int zigzag_parameter(int n) { return 6 * n * n + 1; }

FunctionalClass FunctionalClass::relu(int n, std::vector<ReluNeuron> neurons,
                                      double w_bound, double b_bound,
                                      IdList ids) {
  if (n < 1) throw InputError("input dimension must be positive");
  FunctionalClass f;
  f.kind_ = Kind::kRelu;
  f.n_ = n;
  f.w_bound_ = w_bound;
  f.b_bound_ = b_bound;
  for (std::size_t i = 0; i < neurons.size(); ++i) {
    const ReluNeuron& r = neurons[i];
    if (r.w.size() != n) throw InputError("neuron weight has the wrong size");
    if (r.w.norm() > w_bound + kTolerance || std::abs(r.b) > b_bound + kTolerance) {
      throw ConstraintError("neuron " + std::to_string(i) +
                            " exceeds the (W, B) bounds");
    }
  }
  f.neurons_ = std::move(neurons);
  f.ids_ = ids.empty() ? default_ids("relu", static_cast<int>(f.neurons_.size()))
                       : std::move(ids);
  if (f.ids_.size() != f.neurons_.size()) throw InputError("id count mismatch");
  return f;
}

FunctionalClass FunctionalClass::zigzag(int n, std::vector<Vector> directions,
                                        IdList ids) {
  if (n < 1) throw InputError("input dimension must be positive");
  for (const Vector& u : directions) {
    if (u.size() != n) throw InputError("zigzag direction has the wrong size");
    if (std::abs(u.norm() - n) > kTolerance) {
      throw InputError("zigzag direction must have norm n");
    }
  }
  FunctionalClass f;
  f.kind_ = Kind::kZigzag;
  f.n_ = n;
  f.a_ = zigzag_parameter(n);
  f.directions_ = std::move(directions);
  f.ids_ = ids.empty() ? default_ids("zz", static_cast<int>(f.directions_.size()))
                       : std::move(ids);
  if (f.ids_.size() != f.directions_.size()) throw InputError("id count mismatch");
  return f;
}

FunctionalClass FunctionalClass::combination(
    std::shared_ptr<const FunctionalClass> base,
    std::vector<std::vector<std::pair<int, double>>> terms, double kappa,
    IdList ids) {
  if (!base) throw InputError("combination needs a base class");
  for (const auto& combo : terms) {
    for (const auto& [index, coef] : combo) {
      if (index < 0 || index >= base->size()) {
        throw InputError("combination refers to a missing base hypothesis");
      }
      if (!std::isfinite(coef)) throw InputError("non-finite coefficient");
    }
  }
  FunctionalClass f;
  f.kind_ = Kind::kCombination;
  f.n_ = base->input_dim();
  f.base_ = std::move(base);
  f.terms_ = std::move(terms);
  f.kappa_ = kappa;
  f.ids_ = ids.empty() ? default_ids("comb", static_cast<int>(f.terms_.size()))
                       : std::move(ids);
  if (f.ids_.size() != f.terms_.size()) throw InputError("id count mismatch");
  return f;
}

int FunctionalClass::index_of(std::string_view id) const {
  for (int i = 0; i < size(); ++i) {
    if (ids_[i] == id) return i;
  }
  throw InputError("unknown hypothesis id '" + std::string(id) + "'");
}

double FunctionalClass::evaluate(int h, const Vector& x) const {
  if (h < 0 || h >= size()) throw InputError("hypothesis index out of range");
  if (x.size() != n_) throw InputError("input has the wrong dimension");
  switch (kind_) {
    case Kind::kRelu:
      return positive_part(neurons_[h].w.dot(x) + neurons_[h].b);
    case Kind::kZigzag:
      return psi(a_, directions_[h].dot(x));
    case Kind::kCombination: {
      double v = 0.0;
      for (const auto& [index, coef] : terms_[h]) {
        v += coef * base_->evaluate(index, x);
      }
      return kappa_ * v;
    }
  }
  return 0.0;
}

FunctionalClass FunctionalClass::scaled(double kappa) const {
  if (!(kappa > 0.0)) throw InputError("scale must be positive");
  if (kind_ == Kind::kRelu) {
    std::vector<ReluNeuron> neurons = neurons_;
    for (auto& r : neurons) {
      r.w *= kappa;
      r.b *= kappa;
    }
    return relu(n_, std::move(neurons), kappa * w_bound_, kappa * b_bound_, ids_);
  }
  if (kind_ == Kind::kCombination) {
    FunctionalClass f = *this;
    f.kappa_ *= kappa;
    return f;
  }
  std::vector<std::vector<std::pair<int, double>>> terms;
  for (int i = 0; i < size(); ++i) terms.push_back({{i, 1.0}});
  return combination(std::make_shared<const FunctionalClass>(*this),
                     std::move(terms), kappa, ids_);
}

std::pair<double, double> default_relu_bounds(int n) {
  const double nn = n;
  return {14.0 * nn * nn * nn, 98.0 * nn * nn * nn * nn};
}

ReluDecomposition zigzag_relu_decomposition(const Vector& u, int a) {
  if (a < 1 || a % 2 == 0) throw InputError("a must be odd and positive");
  const int n = static_cast<int>(u.size());
  std::vector<ReluNeuron> neurons;
  std::vector<double> coefs;
  neurons.push_back({u, static_cast<double>(a)});
  coefs.push_back(1.0);
  for (int i = 1; i <= a - 1; ++i) {
    neurons.push_back({u, static_cast<double>(a - 2 * i)});
    coefs.push_back(i % 2 ? -2.0 : 2.0);
  }
  neurons.push_back({u, -static_cast<double>(a)});
  coefs.push_back(-1.0);
  neurons.push_back({Vector::Zero(n), 1.0});
  coefs.push_back(-1.0);
  const double w_bound = u.norm();
  return {FunctionalClass::relu(n, std::move(neurons), w_bound,
                                static_cast<double>(a)),
          std::move(coefs)};
}

Vector sample_sphere(int n, double radius, Rng& rng) {
  std::normal_distribution<double> normal;
  while (true) {
    Vector g(n);
    for (int i = 0; i < n; ++i) g[i] = normal(rng);
    const double norm = g.norm();
    if (norm >= 1e-12) return g * (radius / norm);
  }
}

FunctionalClass zigzag_class_sample(int n, int t, std::uint64_t seed) {
  if (n < 1 || t < 1) throw InputError("n and t must be positive");
  Rng rng = make_rng(seed);
  std::vector<Vector> directions;
  for (int i = 0; i < t; ++i) directions.push_back(sample_sphere(n, n, rng));
  return FunctionalClass::zigzag(n, std::move(directions));
}

Estimate gaussian_gram_estimate(const RealFunction& f, const RealFunction& g,
                                int n, int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("samples must be at least 1");
  if (n < 1) throw InputError("input dimension must be positive");
  constexpr int kBlock = 8192;
  const int blocks = (samples + kBlock - 1) / kBlock;
  std::vector<double> sums(blocks, 0.0), squares(blocks, 0.0);
  parallel_for(blocks, [&](int b) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    std::normal_distribution<double> normal;
    const int count = std::min(kBlock, samples - b * kBlock);
    Vector x(n);
    for (int s = 0; s < count; ++s) {
      for (int i = 0; i < n; ++i) x[i] = normal(rng);
      const double v = f(x) * g(x);
      sums[b] += v;
      squares[b] += v * v;
    }
  });
  double sum = 0.0, sq = 0.0;
  for (int b = 0; b < blocks; ++b) {
    sum += sums[b];
    sq += squares[b];
  }
  const double mean = sum / samples;
  const double var =
      samples > 1 ? std::max(0.0, (sq - samples * mean * mean) / (samples - 1))
                  : 0.0;
  return {mean, std::sqrt(var / samples), 0.0};
}

Estimate gaussian_gram_estimate(const FunctionalClass& cls, int i, int j,
                                int samples, std::uint64_t seed) {
  return gaussian_gram_estimate(
      [&cls, i](const Vector& x) { return cls.evaluate(i, x); },
      [&cls, j](const Vector& x) { return cls.evaluate(j, x); },
      cls.input_dim(), samples, seed);
}

Estimate zigzag_gram_conditional(const Vector& u, const Vector& v, int a,
                                 int samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("samples must be at least 1");
  if (u.size() != v.size()) throw InputError("directions differ in size");
  if (a < 1 || a % 2 == 0) throw InputError("a must be odd and positive");
  const double su2 = u.squaredNorm();
  if (!(su2 > 0.0)) throw InputError("direction u must be nonzero");
  const double su = std::sqrt(su2);
  const double slope = u.dot(v) / su2;  // E[<v,x> | <u,x> = z] = slope * z
  const double s2 = std::max(0.0, v.squaredNorm() - u.dot(v) * slope);
  const double s = std::sqrt(s2);
  const double pi = std::numbers::pi;
  const double sign_a = ((a - 1) / 2) % 2 ? -1.0 : 1.0;
  constexpr int kMaxHarmonic = 4001;
  const bool degenerate = s <= 1e-9 * std::sqrt(v.squaredNorm());

  // Damping of each odd harmonic by the conditional spread.
  std::vector<double> damp;
  for (int k = 1; k <= kMaxHarmonic; k += 2) {
    const double w = k * pi / 2.0;
    const double e = std::exp(-0.5 * w * w * s2);
    if (e == 0.0) break;
    damp.push_back(e);
  }
  const int harmonics = static_cast<int>(damp.size());
  const int last_k = 2 * harmonics - 1;
  // Bound on the dropped harmonics: each term is at most 8/(pi^2 k^2)
  // times the first neglected damping factor.
  const double next_w = (last_k + 2) * pi / 2.0;
  const double series_tail =
      degenerate ? 0.0
                 : 8.0 / (pi * pi) * std::exp(-0.5 * next_w * next_w * s2) /
                       (2.0 * (last_k + 1));

  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  double sum = 0.0, sq = 0.0, bias = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double z1 = su * normal(rng);
    const double mu = slope * z1;
    double conditional;
    if (degenerate) {
      conditional = psi(a, mu);
    } else {
      double series = 0.0;
      for (int h = 0; h < harmonics; ++h) {
        const int k = 2 * h + 1;
        const double sign = (h % 2) ? -1.0 : 1.0;
        series += sign * std::sin(k * pi * mu / 2.0) * damp[h] / (double(k) * k);
      }
      conditional = sign_a * 8.0 / (pi * pi) * series;
      bias += 2.0 * (normal_cdf_upper((a - mu) / s) +
                     normal_cdf_upper((a + mu) / s)) + series_tail;
    }
    const double value = psi(a, z1) * conditional;
    sum += value;
    sq += value * value;
  }
  const double mean = sum / samples;
  const double var =
      samples > 1 ? std::max(0.0, (sq - samples * mean * mean) / (samples - 1))
                  : 0.0;
  return {mean, std::sqrt(var / samples), bias / samples};
}

std::variant<FiniteHypothesisClass, FunctionalClass> build_combination(
    const CombinationSpec& spec) {
  if (!std::isfinite(spec.kappa) || spec.kappa == 0.0) {
    throw InputError("kappa must be finite and nonzero");
  }
  for (std::size_t c = 0; c < spec.combinations.size(); ++c) {
    const Combination& combo = spec.combinations[c];
    if (combo.coefficients.size() != combo.hypothesis_ids.size()) {
      throw InputError("combination " + std::to_string(c) +
                       " has mismatched coefficient and id lists");
    }
    if (spec.max_terms > 0 &&
        static_cast<int>(combo.coefficients.size()) > spec.max_terms) {
      throw ConstraintError("combination " + std::to_string(c) + " has " +
                            std::to_string(combo.coefficients.size()) +
                            " terms, above the limit " +
                            std::to_string(spec.max_terms));
    }
    double energy = 0.0;
    for (double a : combo.coefficients) energy += a * a;
    if (energy > spec.coefficient_budget * (1.0 + 1e-12)) {
      throw ConstraintError("combination " + std::to_string(c) +
                            " has sum of squared coefficients " +
                            std::to_string(energy) + " above the budget " +
                            std::to_string(spec.coefficient_budget));
    }
  }
  auto id_of = [&](std::size_t c) {
    return spec.combinations[c].id.empty() ? "comb" + std::to_string(c)
                                           : spec.combinations[c].id;
  };
  if (const auto* finite = std::get_if<FiniteHypothesisClass>(&spec.base)) {
    Matrix values =
        Matrix::Zero(static_cast<Eigen::Index>(spec.combinations.size()),
                     finite->num_points());
    IdList ids;
    for (std::size_t c = 0; c < spec.combinations.size(); ++c) {
      const Combination& combo = spec.combinations[c];
      for (std::size_t t = 0; t < combo.coefficients.size(); ++t) {
        values.row(static_cast<Eigen::Index>(c)) +=
            combo.coefficients[t] *
            finite->values().row(finite->hypothesis_index(combo.hypothesis_ids[t]));
      }
      ids.push_back(id_of(c));
    }
    values *= spec.kappa;
    return FiniteHypothesisClass(finite->domain(), std::move(ids),
                                 std::move(values), LabelKind::kReal);
  }
  const auto& base = std::get<std::shared_ptr<const FunctionalClass>>(spec.base);
  if (!base) throw InputError("combination base is empty");
  std::vector<std::vector<std::pair<int, double>>> terms;
  IdList ids;
  for (std::size_t c = 0; c < spec.combinations.size(); ++c) {
    const Combination& combo = spec.combinations[c];
    std::vector<std::pair<int, double>> t;
    for (std::size_t k = 0; k < combo.coefficients.size(); ++k) {
      t.emplace_back(base->index_of(combo.hypothesis_ids[k]),
                     combo.coefficients[k]);
    }
    terms.push_back(std::move(t));
    ids.push_back(id_of(c));
  }
  return FunctionalClass::combination(base, std::move(terms), spec.kappa,
                                      std::move(ids));
}

Restriction finite_restriction(const FunctionalClass& f, int m_points,
                               std::uint64_t seed) {
  if (m_points < 1) throw InputError("m_points must be at least 1");
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  Matrix points(f.input_dim(), m_points);
  for (int j = 0; j < m_points; ++j) {
    for (int i = 0; i < f.input_dim(); ++i) points(i, j) = normal(rng);
  }
  Matrix values(f.size(), m_points);
  for (int j = 0; j < m_points; ++j) {
    const Vector x = points.col(j);
    for (int h = 0; h < f.size(); ++h) values(h, j) = f.evaluate(h, x);
  }
  FiniteHypothesisClass cls(default_ids("g", m_points), f.ids(),
                            std::move(values), LabelKind::kReal);
  return {std::move(cls), DistributionOverX::uniform(m_points), std::move(points)};
}

PlantedMarginClass planted_margin_class(int num_points, int num_hypotheses,
                                        int dim, double radius,
                                        std::uint64_t seed) {
  if (num_points < 1 || num_hypotheses < 1 || dim < 1) {
    throw InputError("planted class sizes must be positive");
  }
  if (!(radius >= 1.0)) throw InputError("margin radius must be at least 1");
  Rng rng = make_rng(seed);
  Matrix directions(num_hypotheses, dim);
  for (int h = 0; h < num_hypotheses; ++h) {
    directions.row(h) = sample_sphere(dim, 1.0, rng).transpose();
  }
  Matrix features(dim, num_points);
  Matrix values(num_hypotheses, num_points);
  const double min_cos = 1.0 / radius;
  long attempts = 0;
  for (int x = 0; x < num_points;) {
    if (++attempts > 1000000L * num_points) {
      throw InputError("planted class: acceptance rate too low");
    }
    const Vector phi = sample_sphere(dim, 1.0, rng);
    const Vector cosines = directions * phi;
    if (cosines.cwiseAbs().minCoeff() < min_cos) continue;
    features.col(x) = phi;
    for (int h = 0; h < num_hypotheses; ++h) {
      values(h, x) = cosines[h] > 0.0 ? 1.0 : -1.0;
    }
    ++x;
  }
  IdList hyps = default_ids("w", num_hypotheses);
  FiniteHypothesisClass cls(default_ids("p", num_points), hyps, values,
                            LabelKind::kBinary);
  EmbeddingWeightPair witness(Embedding::tabular(std::move(features)), hyps,
                              directions * radius);
  return {std::move(cls), std::move(witness)};
}

FiniteHypothesisClass random_class(int num_hypotheses, int num_points,
                                   bool binary, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  Matrix values(num_hypotheses, num_points);
  for (int h = 0; h < num_hypotheses; ++h) {
    for (int x = 0; x < num_points; ++x) {
      const double g = normal(rng);
      values(h, x) = binary ? (g >= 0.0 ? 1.0 : -1.0) : g;
    }
  }
  return FiniteHypothesisClass(default_ids("x", num_points),
                               default_ids("h", num_hypotheses),
                               std::move(values),
                               binary ? LabelKind::kBinary : LabelKind::kReal);
}

FiniteHypothesisClass random_halfplane_class(int num_points,
                                             int num_hypotheses,
                                             std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix pts(2, num_points);
  for (int x = 0; x < num_points; ++x) {
    pts(0, x) = unit(rng);
    pts(1, x) = unit(rng);
  }
  Matrix values(num_hypotheses, num_points);
  for (int h = 0; h < num_hypotheses; ++h) {
    const Vector w = sample_sphere(2, 1.0, rng);
    const double b = unit(rng);
    for (int x = 0; x < num_points; ++x) {
      values(h, x) = w.dot(pts.col(x)) + b >= 0.0 ? 1.0 : -1.0;
    }
  }
  return FiniteHypothesisClass(default_ids("x", num_points),
                               default_ids("h", num_hypotheses),
                               std::move(values), LabelKind::kBinary);
}

DistributionOverX random_distribution(int num_points, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::exponential_distribution<double> expo(1.0);
  Vector p(num_points);
  for (int i = 0; i < num_points; ++i) p[i] = expo(rng);
  p /= p.sum();
  return DistributionOverX(p);
}

}  // namespace clab
