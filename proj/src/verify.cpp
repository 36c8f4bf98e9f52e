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

#include "complexity_lab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "complexity_lab/constructions.hpp"
#include "complexity_lab/core.hpp"
#include "complexity_lab/embeddings.hpp"
#include "complexity_lab/io.hpp"
#include "complexity_lab/learners.hpp"
#include "complexity_lab/measures.hpp"
#include "complexity_lab/rng.hpp"
#include "complexity_lab/spectral.hpp"
#include "complexity_lab/version.hpp"

namespace clab {
namespace {

class Property {
 public:
  Property(std::string suite, std::string name)
      : result_{std::move(suite), std::move(name), 0, 0, {}} {}

  void check(bool ok, const std::function<std::string()>& what) {
    ++result_.checks;
    if (!ok) {
      if (result_.failures == 0) result_.detail = what();
      ++result_.failures;
    }
  }

  PropertyResult finish() {
    if (result_.failures == 0) {
      result_.detail = std::to_string(result_.checks) + " checks";
    }
    return result_;
  }

 private:
  PropertyResult result_;
};

std::string fmt(double v) { return format_double(v); }

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

NormalizedClass random_normalized(std::uint64_t seed, int max_h, int max_x) {
  Rng rng = make_rng(seed);
  const int nh = uniform_int(rng, 2, max_h);
  const int nx = uniform_int(rng, 2, max_x);
  const bool binary = uniform_int(rng, 0, 1) == 1;
  const FiniteHypothesisClass h =
      random_class(nh, nx, binary, derive_seed(seed, "class"));
  return normalize_class(h, random_distribution(nx, derive_seed(seed, "dist")));
}

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

using Suite = std::function<void(std::uint64_t, Fault, std::vector<PropertyResult>&)>;

// ---------------------------------------------------------------- core

void core_suite(std::uint64_t seed, Fault, std::vector<PropertyResult>& out) {
  Rng rng = make_rng(derive_seed(seed, "core"));
  std::normal_distribution<double> normal;
  const LossSpec zo = LossSpec::zero_one();
  const LossSpec sq = LossSpec::squared();

  Property scale("core", "zero_one_scale_invariance");
  for (int i = 0; i < 1000; ++i) {
    const double yhat = normal(rng);
    const double y = normal(rng) >= 0 ? 1.0 : -1.0;
    const double c = std::exp(normal(rng) * 3.0);
    scale.check(eval_loss(zo, yhat, y) == eval_loss(zo, c * yhat, y),
                [&] { return "yhat=" + fmt(yhat) + " c=" + fmt(c); });
  }
  scale.check(eval_loss(zo, 0.0, 1.0) == 1.0, [] { return "zero prediction"; });
  out.push_back(scale.finish());

  Property twice("core", "squared_is_twice_zero_one_on_signs");
  for (double a : {-1.0, 1.0}) {
    for (double b : {-1.0, 1.0}) {
      twice.check(std::abs(eval_loss(sq, a, b) - 2.0 * eval_loss(zo, a, b)) <= kTolerance,
                  [&] { return "yhat=" + fmt(a) + " y=" + fmt(b); });
    }
  }
  out.push_back(twice.finish());

  Property idem("core", "normalize_idempotent");
  for (int i = 0; i < 20; ++i) {
    const auto s = derive_seed(seed, 1000 + i);
    const NormalizedClass once = random_normalized(s, 8, 12);
    const NormalizedClass again = normalize_class(once.hypotheses(), once.distribution());
    const double diff = (once.values() - again.values()).cwiseAbs().maxCoeff();
    idem.check(diff <= 1e-12, [&] { return "difference " + fmt(diff); });
  }
  out.push_back(idem.finish());

  Property mass("core", "point_mass_expected_loss");
  for (int i = 0; i < 50; ++i) {
    const int n = uniform_int(rng, 1, 10);
    const int at = uniform_int(rng, 0, n - 1);
    Vector pred(n), target(n), w = Vector::Zero(n);
    for (int j = 0; j < n; ++j) {
      pred[j] = normal(rng);
      target[j] = normal(rng) >= 0 ? 1.0 : -1.0;
    }
    w[at] = 1.0;
    for (LossKind k : {LossKind::kZeroOne, LossKind::kMargin, LossKind::kHinge,
                       LossKind::kSquared}) {
      const LossSpec l = LossSpec::of_kind(k);
      const double lhs = expected_loss(pred, w, target, l);
      const double rhs = eval_loss(l, pred[at], target[at]);
      mass.check(std::abs(lhs - rhs) <= kTolerance, [&] {
        return std::string(to_string(k)) + ": " + fmt(lhs) + " vs " + fmt(rhs);
      });
    }
  }
  out.push_back(mass.finish());
}

// ------------------------------------------------------------ spectral

// Gershgorin with the off-diagonal sign flipped; only reachable through
// fault injection.
double flipped_gershgorin(const Matrix& g) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (j != i) off += std::abs(g(i, j));
    }
    best = std::min(best, g(i, i) + off);
  }
  return best;
}

void spectral_suite(std::uint64_t seed, Fault fault, std::vector<PropertyResult>& out) {
  Property gersh("spectral", "gershgorin_soundness");
  for (int i = 0; i < 100; ++i) {
    const NormalizedClass h = random_normalized(derive_seed(seed, 2000 + i), 8, 12);
    std::vector<int> all(h.size());
    for (int k = 0; k < h.size(); ++k) all[k] = k;
    const GramMatrix g = gram_matrix(h, all);
    const double lmin = g.min_eigenvalue();
    const double bound = fault == Fault::kGershgorinSign
                             ? flipped_gershgorin(g.matrix())
                             : gershgorin_bound(g);
    gersh.check(bound <= lmin + 1e-8, [&] {
      return "class " + std::to_string(i) + ": bound " + fmt(bound) +
             " > lambda_min " + fmt(lmin);
    });
  }
  out.push_back(gersh.finish());

  Property prop1("spectral", "sq_dim_implies_min_ev_half");
  for (int i = 0; i < 60; ++i) {
    const NormalizedClass h = random_normalized(derive_seed(seed, 3000 + i), 8, 12);
    const int t = sq_dimension(h).value;
    const int mev = min_ev_dimension(h, 0.5).value;
    prop1.check(mev >= t, [&] {
      return "class " + std::to_string(i) + ": sq " + std::to_string(t) +
             " minev " + std::to_string(mev);
    });
  }
  out.push_back(prop1.finish());

  Property interlace("spectral", "principal_submatrix_interlacing");
  Rng rng = make_rng(derive_seed(seed, "interlacing"));
  for (int i = 0; i < 40; ++i) {
    const NormalizedClass h = random_normalized(derive_seed(seed, 4000 + i), 8, 12);
    std::vector<int> all(h.size()), sub;
    for (int k = 0; k < h.size(); ++k) all[k] = k;
    for (int k = 0; k < h.size(); ++k) {
      if (uniform_int(rng, 0, 1)) sub.push_back(k);
    }
    if (sub.empty()) sub.push_back(0);
    const double full = gram_matrix(h, all).min_eigenvalue();
    const double part = gram_matrix(h, sub).min_eigenvalue();
    interlace.check(part >= full - kTolerance,
                    [&] { return fmt(part) + " < " + fmt(full); });
  }
  out.push_back(interlace.finish());

  Property oracle_shape("spectral", "rank_oracle_monotone_convex");
  for (int i = 0; i < 40; ++i) {
    const NormalizedClass h = random_normalized(derive_seed(seed, 5000 + i), 8, 12);
    const int limit = std::min(h.size(), h.hypotheses().num_points());
    std::vector<double> e;
    for (int d = 0; d <= limit; ++d) e.push_back(avg_rank_error_oracle(h, d));
    for (int d = 1; d <= limit; ++d) {
      oracle_shape.check(e[d] <= e[d - 1] + kTolerance,
                         [&] { return "increase at d=" + std::to_string(d); });
    }
    for (int d = 1; d + 1 <= limit; ++d) {
      oracle_shape.check(e[d + 1] - 2 * e[d] + e[d - 1] >= -kTolerance,
                         [&] { return "concavity at d=" + std::to_string(d); });
    }
  }
  out.push_back(oracle_shape.finish());

  Property parity("spectral", "parity_rank_oracle_closed_form");
  for (int n = 1; n <= 4; ++n) {
    const FiniteHypothesisClass p = parities(n);
    const NormalizedClass h = normalize_class(p, DistributionOverX::uniform(p.num_points()));
    const int size = 1 << n;
    for (int d = 0; d <= size; ++d) {
      const double got = avg_rank_error_oracle(h, d);
      const double want = 0.5 * (1.0 - static_cast<double>(d) / size);
      parity.check(std::abs(got - want) <= kTolerance, [&] {
        return "n=" + std::to_string(n) + " d=" + std::to_string(d) + ": " + fmt(got);
      });
    }
  }
  out.push_back(parity.finish());
}

// ---------------------------------------------------------- embeddings

void embeddings_suite(std::uint64_t seed, Fault, std::vector<PropertyResult>& out) {
  Rng rng = make_rng(derive_seed(seed, "embeddings"));
  std::normal_distribution<double> normal;

  Property rep("embeddings", "representer_invariance");
  for (int i = 0; i < 30; ++i) {
    const int d = uniform_int(rng, 1, 32);
    const int m = uniform_int(rng, 1, 16);
    const int nx = uniform_int(rng, m, 24);
    const Embedding phi = Embedding::tabular(gaussian_matrix(d, nx, rng));
    std::vector<int> sample(m);
    for (int& s : sample) s = uniform_int(rng, 0, nx - 1);
    Vector y(m);
    for (int j = 0; j < m; ++j) y[j] = normal(rng) >= 0 ? 1.0 : -1.0;
    const Matrix design = phi.design(sample);
    const RepresenterReduction red = representer_reduce(phi, sample);
    const Matrix reduced = red.reduced.design(sample);
    for (LossKind k : {LossKind::kSquared, LossKind::kHinge}) {
      ErmOptions opts;
      opts.certify = false;
      const ErmResult r = linear_erm(design, y, LossSpec::of_kind(k), opts);
      const Vector before = design * r.w;
      const Vector after = reduced * red.project(r.w);
      const double diff = (before - after).cwiseAbs().maxCoeff();
      const double scale = std::max(1.0, before.cwiseAbs().maxCoeff());
      rep.check(diff <= kTolerance * scale, [&] {
        return "draw " + std::to_string(i) + ": prediction gap " + fmt(diff);
      });
    }
  }
  out.push_back(rep.finish());

  Property cover("embeddings", "cover_validity");
  for (int i = 0; i < 20; ++i) {
    const auto s = derive_seed(seed, 6000 + i);
    const FiniteHypothesisClass h = random_halfplane_class(12, 10, s);
    const DistributionOverX d = random_distribution(12, derive_seed(s, "dist"));
    for (double eps : {0.1, 0.25}) {
      const CoverResult c = greedy_cover(h, d, eps);
      const Matrix dis = disagreement_matrix(h, d);
      for (int j = 0; j < h.num_hypotheses(); ++j) {
        double nearest = 1.0;
        for (int e : c.cover) nearest = std::min(nearest, dis(e, j));
        cover.check(nearest <= eps + 1e-12, [&] {
          return "hypothesis " + h.hypotheses()[j] + " at " + fmt(nearest);
        });
      }
      CriterionOptions opts;
      opts.run_erm = false;
      const CriterionReport r = distributional_dc_criterion(
          EmbeddingFamily::fixed(c.pair), h, d, LossSpec::zero_one(), 1, s, opts);
      cover.check(r.max <= eps + kTolerance,
                  [&] { return "pair criterion " + fmt(r.max) + " > " + fmt(eps); });
    }
  }
  out.push_back(cover.finish());

  Property jl("embeddings", "jl_inner_product_unbiased");
  for (int pair = 0; pair < 3; ++pair) {
    const Vector u = gaussian_matrix(6, 1, rng).col(0);
    const Vector v = gaussian_matrix(6, 1, rng).col(0);
    const int draws = 4000;
    double sum = 0.0, sq = 0.0;
    for (int t = 0; t < draws; ++t) {
      const Matrix g = jl_matrix(6, 3, derive_seed(seed, 7000 + pair * draws + t));
      const double ip = (g * u).dot(g * v);
      sum += ip;
      sq += ip * ip;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sq / draws - mean * mean) / (draws - 1));
    const double target = u.dot(v);
    jl.check(std::abs(mean - target) <= 3.0 * se, [&] {
      return "mean " + fmt(mean) + " vs " + fmt(target) + " (se " + fmt(se) + ")";
    });
  }
  out.push_back(jl.finish());
}

// ------------------------------------------------------------ learners

// Class whose every hypothesis is linear in a fixed unit-norm embedding with
// weight norm at most one, so squared-loss ERM interpolates its sample.
struct LinearWorld {
  FiniteHypothesisClass h;
  EmbeddingFamily family;
};

LinearWorld linear_world(std::uint64_t seed, int d, int nx, int nh) {
  Rng rng = make_rng(seed);
  Matrix phi = gaussian_matrix(d, nx, rng);
  for (int x = 0; x < nx; ++x) phi.col(x).normalize();
  Matrix w = gaussian_matrix(nh, d, rng);
  for (int k = 0; k < nh; ++k) {
    w.row(k) *= std::uniform_real_distribution<double>(0.1, 1.0)(rng) / w.row(k).norm();
  }
  IdList hyps, points;
  for (int k = 0; k < nh; ++k) hyps.push_back("w" + std::to_string(k));
  for (int x = 0; x < nx; ++x) points.push_back("x" + std::to_string(x));
  FiniteHypothesisClass h(points, hyps, w * phi, LabelKind::kReal);
  return {std::move(h), EmbeddingFamily::fixed(Embedding::tabular(std::move(phi)))};
}

void learners_suite(std::uint64_t seed, Fault, std::vector<PropertyResult>& out) {
  Rng rng = make_rng(derive_seed(seed, "learners"));
  std::normal_distribution<double> normal;
  const LossSpec sq = LossSpec::squared();

  Property sup("learners", "min_norm_below_null_space_sup");
  for (int i = 0; i < 20; ++i) {
    const int d = 6, m = 3, nx = 10;
    const Matrix phi = gaussian_matrix(d, nx, rng);
    std::vector<int> sample = {0, 1, 2};
    Vector y(nx);
    for (int x = 0; x < nx; ++x) y[x] = normal(rng);
    const Matrix pop = phi.transpose();
    Matrix design(m, d);
    Vector ys(m);
    for (int j = 0; j < m; ++j) {
      design.row(j) = pop.row(sample[j]);
      ys[j] = y[sample[j]];
    }
    const ErmResult r = linear_erm(design, ys, sq);
    const Vector weights = Vector::Constant(nx, 1.0 / nx);
    const double reported = expected_loss(pop * r.w, weights, y, sq);
    const double probe = null_space_sup_probe(design, pop, y, weights, r.w, sq, 100,
                                              derive_seed(seed, 8000 + i));
    sup.check(reported <= probe + 1e-12,
              [&] { return fmt(reported) + " > " + fmt(probe); });
  }
  out.push_back(sup.finish());

  Property order("learners", "glin_dominates_lin_per_trial");
  for (int i = 0; i < 20; ++i) {
    const auto s = derive_seed(seed, 9000 + i);
    Rng local = make_rng(s);
    const int d = uniform_int(local, 1, 16);
    const int m = uniform_int(local, 1, 16);
    LinearWorld world = linear_world(derive_seed(s, "world"), d, 40, 3);
    const DistributionOverX dist = DistributionOverX::uniform(40);
    auto run = [&](LearnMode mode) {
      LearningSimSpec spec{mode, world.h, dist, sq, world.family, m, 4, 0.0, s,
                           ErmOptions{}, {}, 0};
      spec.erm.certify = false;
      return simulate_learning(spec);
    };
    const SimulationResult lin = run(LearnMode::kLin);
    const SimulationResult glin = run(LearnMode::kGLin);
    for (std::size_t r = 0; r < lin.rows.size(); ++r) {
      const double a = lin.rows[r].population_criterion;
      const double b = glin.rows[r].population_criterion;
      order.check(b >= a - kTolerance, [&] {
        return "draw " + std::to_string(i) + " row " + std::to_string(r) + ": " +
               fmt(b) + " < " + fmt(a);
      });
    }
  }
  out.push_back(order.finish());

  Property reduce("learners", "representer_preserves_erm_predictions");
  for (int i = 0; i < 20; ++i) {
    const int d = uniform_int(rng, 2, 24);
    const int m = uniform_int(rng, 1, 12);
    const Embedding phi = Embedding::tabular(gaussian_matrix(d, 16, rng));
    std::vector<int> sample(m);
    for (int& s : sample) s = uniform_int(rng, 0, 15);
    Vector y(m);
    for (int j = 0; j < m; ++j) y[j] = normal(rng);
    const RepresenterReduction red = representer_reduce(phi, sample);
    const Vector full = phi.design(sample) * linear_erm(phi.design(sample), y, sq).w;
    const Matrix small_design = red.reduced.design(sample);
    const Vector small = small_design * linear_erm(small_design, y, sq).w;
    const double diff = (full - small).cwiseAbs().maxCoeff();
    reduce.check(diff <= 1e-8 * std::max(1.0, full.cwiseAbs().maxCoeff()),
                 [&] { return "prediction gap " + fmt(diff); });
  }
  out.push_back(reduce.finish());

  Property ball("learners", "norm_constrained_within_radius");
  for (int i = 0; i < 20; ++i) {
    const int d = uniform_int(rng, 1, 8);
    const int m = uniform_int(rng, 1, 12);
    const Matrix x = gaussian_matrix(m, d, rng);
    Vector y(m);
    for (int j = 0; j < m; ++j) y[j] = normal(rng) >= 0 ? 1.0 : -1.0;
    const double radius = std::exp(normal(rng));
    ErmOptions opts;
    opts.certify = false;
    for (LossKind k : {LossKind::kSquared, LossKind::kHinge, LossKind::kMargin}) {
      const ErmResult r = norm_constrained_erm(x, y, radius, LossSpec::of_kind(k), opts);
      ball.check(r.w.norm() <= radius + kTolerance, [&] {
        return std::string(to_string(k)) + ": norm " + fmt(r.w.norm()) + " > " + fmt(radius);
      });
    }
  }
  out.push_back(ball.finish());
}

// ------------------------------------------------------------ measures

void measures_suite(std::uint64_t seed, Fault, std::vector<PropertyResult>& out) {
  Rng rng = make_rng(derive_seed(seed, "measures"));

  Property sandwich("measures", "distributional_below_pointwise");
  for (int fam = 0; fam < 3; ++fam) {
    const auto s = derive_seed(seed, 10000 + fam);
    const FiniteHypothesisClass h = random_class(5, 6, true, s);
    std::vector<WeightedPair> pairs;
    const int count = uniform_int(rng, 1, 3);
    Vector probs = random_distribution(count, derive_seed(s, "probs")).probabilities();
    const int d = uniform_int(rng, 1, 4);
    for (int p = 0; p < count; ++p) {
      pairs.push_back({EmbeddingWeightPair(Embedding::tabular(gaussian_matrix(d, 6, rng)),
                                           h.hypotheses(), gaussian_matrix(5, d, rng)),
                       probs[p]});
    }
    const double pointwise = pointwise_dc_criterion(pairs, h).value;
    const EmbeddingFamily family = induced_family(pairs);
    for (int k = 0; k < 50; ++k) {
      const DistributionOverX d = random_distribution(6, derive_seed(s, 100 + k));
      CriterionOptions opts;
      opts.run_erm = false;
      const double dist =
          distributional_dc_criterion(family, h, d, LossSpec::zero_one(), 1, s, opts).max;
      sandwich.check(dist <= pointwise + kTolerance,
                     [&] { return fmt(dist) + " > " + fmt(pointwise); });
    }
  }
  out.push_back(sandwich.finish());

  Property thm9("measures", "thm9_sound_against_rank_oracle");
  Property cor10("measures", "cor10_below_thm9_half");
  const std::vector<double> lambdas = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  const std::vector<double> epss = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45};
  for (int i = 0; i < 20; ++i) {
    const NormalizedClass h = random_normalized(derive_seed(seed, 11000 + i), 8, 16);
    for (double lambda : lambdas) {
      const DimResult w = min_ev_dimension(h, lambda);
      const NormalizedClass sub = h.select(w.witness);
      for (double eps : epss) {
        if (!(lambda > 2 * eps)) continue;
        const double limit = (1.0 - 2.0 * eps / lambda) * w.value;
        for (int d = 0; d < limit && d <= std::min(sub.size(), sub.hypotheses().num_points()); ++d) {
          const double err = avg_rank_error_oracle(sub, d);
          thm9.check(err > eps - kTolerance, [&] {
            return "class " + std::to_string(i) + " lambda " + fmt(lambda) + " eps " +
                   fmt(eps) + " d " + std::to_string(d) + ": " + fmt(err);
          });
        }
      }
    }
    for (double eps : {0.05, 0.1, 0.2}) {
      const DimResult sqd = sq_dimension(h);
      if (!sqd.exact) continue;
      const double c = cor10_lower_bound(h, eps).value;
      const double t = thm9_lower_bound(h, eps, {0.5}).value;
      cor10.check(c <= t + kTolerance, [&] { return fmt(c) + " > " + fmt(t); });
    }
  }
  out.push_back(thm9.finish());
  out.push_back(cor10.finish());

  Property lemma3("measures", "lemma3_lipschitz_scaling");
  for (double r : {0.5, 1.0, 3.0}) {
    for (double l : {1.0, 2.0}) {
      for (double eta : {0.05, 0.2}) {
        const double base = lemma3_dim_transfer(r, 0.0, eta, LossKind::kHinge, l).raw;
        const double want = 8.0 * (l * r / eta) * (l * r / eta);
        lemma3.check(std::abs(base - want) <= 1e-12 * want, [&] { return "raw " + fmt(base); });
        const double dl = lemma3_dim_transfer(r, 0.0, eta, LossKind::kHinge, 2 * l).raw;
        const double dr = lemma3_dim_transfer(2 * r, 0.0, eta, LossKind::kHinge, l).raw;
        const double de = lemma3_dim_transfer(r, 0.0, eta / 2, LossKind::kHinge, l).raw;
        for (double ratio : {dl / base, dr / base, de / base}) {
          lemma3.check(std::abs(ratio - 4.0) <= 1e-12, [&] { return "ratio " + fmt(ratio); });
        }
      }
    }
  }
  out.push_back(lemma3.finish());

  Property mindim("measures", "min_dim_reevaluation");
  for (int i = 0; i < 4; ++i) {
    const auto s = derive_seed(seed, 12000 + i);
    const FiniteHypothesisClass raw = random_class(4, 6, false, s);
    const DistributionOverX d = DistributionOverX::uniform(6);
    const NormalizedClass h = normalize_class(raw, d);
    const double eps = 0.1;
    const MinDimResult r = min_dim_for_criterion(
        jl_family_generator(6, s), h.hypotheses(), d, LossSpec::squared(), eps, 1, 8,
        30, s);
    mindim.check(r.found, [] { return "no dimension found"; });
    if (!r.found) continue;
    const CriterionReport again = distributional_dc_criterion(
        jl_family_generator(6, derive_seed(s, "fresh"))(r.dimension), h.hypotheses(), d,
        LossSpec::squared(), 30, derive_seed(s, "fresh-draws"));
    double se = 0.0;
    for (int k = 0; k < again.values.size(); ++k) {
      if (again.values[k] == again.max) se = again.standard_errors[k];
    }
    mindim.check(again.max <= eps + 2.0 * se + kTolerance, [&] {
      return "d " + std::to_string(r.dimension) + ": " + fmt(again.max);
    });
  }
  out.push_back(mindim.finish());
}

// ------------------------------------------------------- constructions

void constructions_suite(std::uint64_t, Fault, std::vector<PropertyResult>& out) {
  Property shape("constructions", "psi_shape");
  for (int a : {1, 3, 5, 7}) {
    double prev = psi(a, -a - 3.0);
    for (int i = 0; i <= 100 * (2 * a + 6); ++i) {
      const double z = -a - 3.0 + 0.01 * i;
      const double v = psi(a, z);
      shape.check(std::abs(v + psi(a, -z)) <= kTolerance, [&] { return "odd at " + fmt(z); });
      shape.check(std::abs(v) <= 1.0 + kTolerance, [&] { return "bound at " + fmt(z); });
      if (i > 0) {
        shape.check(std::abs(v - prev) <= 0.01 + kTolerance,
                    [&] { return "Lipschitz at " + fmt(z); });
      }
      if (z >= a) shape.check(std::abs(v - 1.0) <= kTolerance, [&] { return "tail at " + fmt(z); });
      if (z <= -a) shape.check(std::abs(v + 1.0) <= kTolerance, [&] { return "tail at " + fmt(z); });
      shape.check(std::abs(v - psi_relu_sum(a, z)) <= kTolerance,
                  [&] { return "closed form differs from the ReLU sum at " + fmt(z); });
      prev = v;
    }
  }
  out.push_back(shape.finish());

  Property orth("constructions", "parity_singular_values_one");
  for (int n = 1; n <= 4; ++n) {
    const FiniteHypothesisClass p = parities(n);
    const WeightedClassMatrix m(p, DistributionOverX::uniform(p.num_points()));
    const double dev = (m.singular_values().array() - 1.0).abs().maxCoeff();
    orth.check(dev <= kTolerance, [&] { return "n=" + std::to_string(n) + ": " + fmt(dev); });
  }
  out.push_back(orth.finish());

  Property dl("constructions", "pattern_decision_list_total_signs");
  for (auto [k, p] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {3, 2}, {2, 3}}) {
    const FiniteHypothesisClass c = pattern_decision_list(k, p);
    const bool signs = (c.values().array().abs() == 1.0).all();
    dl.check(signs && c.num_hypotheses() == (1 << (k * p)) && c.num_points() == (1 << (k * p)),
             [&] { return "k=" + std::to_string(k) + " p=" + std::to_string(p); });
  }
  out.push_back(dl.finish());

  Property relu("constructions", "zigzag_relu_decomposition");
  for (int n : {1, 2}) {
    const int a = zigzag_parameter(n);
    Vector u = Vector::Zero(n);
    u[0] = n;
    const ReluDecomposition dec = zigzag_relu_decomposition(u, a);
    relu.check(dec.pieces.size() == 6 * n * n + 3,
               [&] { return "term count " + std::to_string(dec.pieces.size()); });
    for (double c : dec.coefficients) {
      relu.check(std::abs(c) <= 2.0, [&] { return "coefficient " + fmt(c); });
    }
    for (int i = 0; i <= 200 * (a + 2); ++i) {
      const double z = -(a + 2.0) + 0.01 * i;
      const Vector x = u * (z / u.squaredNorm());
      double sum = 0.0;
      for (int j = 0; j < dec.pieces.size(); ++j) {
        sum += dec.coefficients[j] * dec.pieces.evaluate(j, x);
      }
      relu.check(std::abs(sum - psi(a, z)) <= kTolerance, [&] { return "mismatch at " + fmt(z); });
    }
  }
  out.push_back(relu.finish());
}

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> table = {
      {"core", core_suite},
      {"spectral", spectral_suite},
      {"embeddings", embeddings_suite},
      {"learners", learners_suite},
      {"measures", measures_suite},
      {"constructions", constructions_suite},
  };
  return table;
}

}  // namespace

Fault parse_fault(std::string_view text) {
  if (text.empty() || text == "none") return Fault::kNone;
  if (text == "gershgorin-sign") return Fault::kGershgorinSign;
  throw ConfigError("unknown fault '" + std::string(text) + "'");
}

bool VerifyReport::passed() const {
  return !properties.empty() &&
         std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed(); });
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

VerifyReport run_verify(std::string_view suite, std::uint64_t seed, Fault fault) {
  VerifyReport report;
  report.suite = std::string(suite);
  report.seed = seed;
  bool matched = false;
  for (const auto& [name, fn] : suites()) {
    if (suite == "all" || suite == name) {
      matched = true;
      fn(derive_seed(seed, name), fault, report.properties);
    }
  }
  if (!matched) {
    std::string known;
    for (const auto& n : verify_suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown verify suite '" + std::string(suite) + "' (known: " +
                      known + ")");
  }
  return report;
}

std::string verify_report_json(const VerifyReport& report) {
  Json j;
  j["tool"] = "complexity-lab";
  j["version"] = kVersion;
  j["command"] = "verify";
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  Json props = Json::array();
  for (const PropertyResult& p : report.properties) {
    props.push_back({{"suite", p.suite},
                     {"property", p.name},
                     {"checks", p.checks},
                     {"failures", p.failures},
                     {"passed", p.passed()},
                     {"detail", p.detail}});
  }
  j["properties"] = std::move(props);
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

}  // namespace clab
