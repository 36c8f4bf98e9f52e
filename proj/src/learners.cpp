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

#include "complexity_lab/learners.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "complexity_lab/parallel.hpp"
#include "complexity_lab/rng.hpp"

namespace clab {
namespace {

void validate(const Matrix& x, const Vector& y, const Vector& a,
              const LossSpec& loss) {
  if (x.rows() < 1 || x.cols() < 1) {
    throw InputError("ERM needs at least one sample and one feature");
  }
  if (y.size() != x.rows() || a.size() != x.rows()) {
    throw InputError("ERM labels and weights must have one entry per row");
  }
  if (!x.allFinite()) throw InputError("features contain NaN or Inf");
  if (!y.allFinite()) throw InputError("labels contain NaN or Inf");
  if (std::abs(a.sum() - 1.0) > kTolerance || (a.array() < 0.0).any()) {
    throw InputError("sample weights must be a probability vector");
  }
  if (loss.binary_only()) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y[i] != 1.0 && y[i] != -1.0) {
        throw InputError("loss " + std::string(to_string(loss.kind())) +
                         " needs labels in {+1,-1}");
      }
    }
  }
}

double weighted_loss(const Matrix& x, const Vector& y, const Vector& a,
                     const Vector& w, const LossSpec& loss) {
  const Vector pred = x * w;
  double total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (a[i] != 0.0) total += a[i] * eval_loss(loss, pred[i], y[i]);
  }
  return total;
}

double hinge_objective(const Matrix& z, const Vector& a, const Vector& w) {
  const Vector margins = z * w;
  double total = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    total += a[i] * std::max(0.0, 1.0 - margins[i]);
  }
  return total;
}

// Thin SVD of the weighted design; shared by the least-squares paths.
struct WeightedSvd {
  Eigen::MatrixXd v;
  Vector s;
  Vector c;  // U^T b
};

WeightedSvd weighted_svd(const Matrix& x, const Vector& y, const Vector& a) {
  const Vector root = a.array().sqrt().matrix();
  const Eigen::MatrixXd design = root.asDiagonal() * x;
  const Vector b = root.cwiseProduct(y);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(design,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixV(), svd.singularValues(), svd.matrixU().transpose() * b};
}

Vector min_norm_lstsq(const WeightedSvd& f, double ridge) {
  Vector w = Vector::Zero(f.v.rows());
  if (f.s.size() == 0) return w;
  const double cut = ridge * f.s[0];
  for (Eigen::Index k = 0; k < f.s.size(); ++k) {
    if (f.s[k] > cut && f.s[k] > 0.0) w += (f.c[k] / f.s[k]) * f.v.col(k);
  }
  return w;
}

Vector ridge_solution(const WeightedSvd& f, double mu, double ridge) {
  Vector w = Vector::Zero(f.v.rows());
  const double cut = f.s.size() ? ridge * f.s[0] : 0.0;
  for (Eigen::Index k = 0; k < f.s.size(); ++k) {
    if (f.s[k] > cut && f.s[k] > 0.0) {
      w += (f.s[k] * f.c[k] / (f.s[k] * f.s[k] + mu)) * f.v.col(k);
    }
  }
  return w;
}

// Dual coordinate descent for min_w 0.5|w|^2 + C sum_i a_i hinge(z_i . w),
// sweeping coordinates in index order so runs are reproducible.
class HingeDual {
 public:
  HingeDual(const Matrix& z, const Vector& a)
      : z_(z), a_(a), q_(z.rowwise().squaredNorm()),
        alpha_(Vector::Zero(z.rows())), w_(Vector::Zero(z.cols())) {}

  void solve(double c, int max_epochs) {
    for (Eigen::Index i = 0; i < alpha_.size(); ++i) {
      const double upper = c * a_[i];
      if (alpha_[i] > upper) {
        w_ -= (alpha_[i] - upper) * z_.row(i).transpose();
        alpha_[i] = upper;
      }
    }
    for (int epoch = 0; epoch < max_epochs; ++epoch) {
      double max_pg = -std::numeric_limits<double>::infinity();
      double min_pg = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < alpha_.size(); ++i) {
        const double upper = c * a_[i];
        if (upper == 0.0) continue;
        const double g = z_.row(i).dot(w_) - 1.0;
        double pg = g;
        if (alpha_[i] <= 0.0) {
          pg = std::min(g, 0.0);
        } else if (alpha_[i] >= upper) {
          pg = std::max(g, 0.0);
        }
        max_pg = std::max(max_pg, pg);
        min_pg = std::min(min_pg, pg);
        if (pg == 0.0) continue;
        if (q_[i] == 0.0) {
          // A zero feature vector cannot be helped; its slack is pinned.
          alpha_[i] = upper;
          continue;
        }
        const double next = std::clamp(alpha_[i] - g / q_[i], 0.0, upper);
        w_ += (next - alpha_[i]) * z_.row(i).transpose();
        alpha_[i] = next;
      }
      if (max_pg - min_pg <= 1e-10) break;
    }
  }

  const Vector& w() const { return w_; }

 private:
  const Matrix& z_;
  const Vector& a_;
  Vector q_;
  Vector alpha_;
  Vector w_;
};

Matrix signed_rows(const Matrix& x, const Vector& y) {
  return y.asDiagonal() * x;
}

// Picks the lower hinge value; near ties go to the shorter vector, which
// mirrors the minimum-norm element of the solution set.
bool better(double value, const Vector& w, double best_value,
            const Vector& best_w) {
  const double tie = 1e-9 * std::max(1.0, std::abs(best_value));
  if (value < best_value - tie) return true;
  return value <= best_value + tie && w.norm() < best_w.norm();
}

Vector hinge_unconstrained(const Matrix& z, const Vector& a, int max_epochs) {
  Vector best = Vector::Zero(z.cols());
  double best_value = hinge_objective(z, a, best);
  HingeDual dual(z, a);
  for (double c = 1.0; c <= 1e8; c *= 10.0) {
    dual.solve(c, max_epochs);
    const double value = hinge_objective(z, a, dual.w());
    if (better(value, dual.w(), best_value, best)) {
      best = dual.w();
      best_value = value;
    }
    if (best_value == 0.0) break;
  }
  return best;
}

Vector hinge_in_ball(const Matrix& z, const Vector& a, double radius,
                     int max_epochs) {
  const double zmax = z.rowwise().norm().maxCoeff();
  if (zmax == 0.0) return Vector::Zero(z.cols());
  // |w(C)| <= C * max|z_i| because the weights sum to one.
  double lo = 0.5 * radius / zmax;
  HingeDual dual(z, a);
  dual.solve(lo, max_epochs);
  double hi = lo;
  Vector w_hi = dual.w();
  while (w_hi.norm() < radius) {
    lo = hi;
    hi *= 10.0;
    if (hi > 1e10) return w_hi;  // unconstrained optimum lies inside the ball
    dual.solve(hi, max_epochs);
    w_hi = dual.w();
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = std::sqrt(lo * hi);
    HingeDual probe(z, a);
    probe.solve(mid, max_epochs);
    const double norm = probe.w().norm();
    if (norm >= radius) {
      hi = mid;
      w_hi = probe.w();
    } else {
      lo = mid;
    }
    if (std::abs(norm - radius) <= 1e-9 * radius || hi / lo < 1 + 1e-12) break;
  }
  const double norm = w_hi.norm();
  return norm > radius ? Vector(w_hi * (radius / norm)) : w_hi;
}

// Subgradient restarts used only as an optimality certificate.
double best_restart(const Matrix& z, const Vector& a, double radius,
                    const ErmOptions& opts) {
  const bool ball = radius > 0.0;
  const double gmax = std::max(1e-300, z.rowwise().norm().maxCoeff());
  const double eta0 = (ball ? radius : 1.0) / gmax;
  Rng rng = make_rng(derive_seed(opts.seed, "erm-certificate"));
  std::normal_distribution<double> normal;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(opts.restarts, 1); ++r) {
    Vector w = Vector::Zero(z.cols());
    if (r > 0) {
      for (Eigen::Index j = 0; j < w.size(); ++j) w[j] = normal(rng);
      const double n = w.norm();
      if (n > 0.0) w *= (ball ? radius : 1.0) / n;
    }
    Vector avg = Vector::Zero(z.cols());
    for (int t = 1; t <= opts.max_iterations; ++t) {
      const Vector margins = z * w;
      const double value = hinge_objective(z, a, w);
      best = std::min(best, value);
      if (value == 0.0) break;
      Vector g = Vector::Zero(z.cols());
      for (Eigen::Index i = 0; i < margins.size(); ++i) {
        if (margins[i] < 1.0) g -= a[i] * z.row(i).transpose();
      }
      w -= (eta0 / std::sqrt(static_cast<double>(t))) * g;
      if (ball && w.norm() > radius) w *= radius / w.norm();
      if (opts.averaging) {
        avg += (w - avg) / t;
        best = std::min(best, hinge_objective(z, a, avg));
      }
    }
  }
  return best;
}

// Exact zero-one ERM for few points in low dimension. If some subset S of
// the signed rows z_i admits w with z_i . w >= 1 on S, the minimum-norm such
// w solves z_i . w = 1 on a linearly independent subset of at most d rows.
// Enumerating those candidates therefore reaches the optimum.
Vector exact_zero_one(const Matrix& z, const Vector& a) {
  const int m = static_cast<int>(z.rows());
  const int d = static_cast<int>(z.cols());
  auto error = [&](const Vector& w) {
    const Vector margins = z * w;
    double e = 0.0;
    for (int i = 0; i < m; ++i) {
      if (margins[i] <= 0.0) e += a[i];
    }
    return e;
  };
  Vector best = Vector::Zero(d);
  double best_error = error(best);
  std::vector<int> subset;
  std::function<void(int)> visit = [&](int start) {
    if (!subset.empty()) {
      Matrix za(static_cast<Eigen::Index>(subset.size()), d);
      for (std::size_t k = 0; k < subset.size(); ++k) {
        za.row(static_cast<Eigen::Index>(k)) = z.row(subset[k]);
      }
      const Eigen::MatrixXd dense = za;
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(dense);
      if (cod.rank() == static_cast<Eigen::Index>(subset.size())) {
        const Vector w =
            cod.solve(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(subset.size())));
        const double e = error(w);
        if (e < best_error - 1e-15) {
          best = w;
          best_error = e;
        }
      }
    }
    if (static_cast<int>(subset.size()) == d) return;
    for (int i = start; i < m; ++i) {
      subset.push_back(i);
      visit(i + 1);
      subset.pop_back();
    }
  };
  visit(0);
  return best;
}

// The margin loss is not scale invariant. Among rescalings of the hinge
// solution that stay feasible, keep the one with the smallest margin loss:
// without a ball, stretching until every positive margin exceeds 1 turns
// the zero-one loss of w into its margin loss; inside a ball, pushing w out
// to the boundary can only raise correct margins.
Vector rescale_for_margin(const Matrix& z, const Vector& a, const Vector& w,
                          double radius) {
  const Vector margins = z * w;
  auto margin_loss = [&](double scale) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
      if (scale * margins[i] <= 1.0) e += a[i];
    }
    return e;
  };
  const double norm = w.norm();
  if (norm == 0.0) return w;
  double scale = 1.0;
  if (radius > 0.0) {
    if (margin_loss(radius / norm) < margin_loss(1.0)) scale = radius / norm;
  } else {
    double smallest = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
      if (margins[i] > 0.0) smallest = std::min(smallest, margins[i]);
    }
    if (std::isfinite(smallest) && smallest <= 1.0) scale = 2.0 / smallest;
  }
  return w * scale;
}

ErmResult solve(const Matrix& x, const Vector& y, const Vector& a,
                double radius, const LossSpec& loss, const ErmOptions& opts) {
  validate(x, y, a, loss);
  if (opts.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  const bool ball = radius > 0.0;
  ErmResult out;
  if (loss.kind() == LossKind::kSquared) {
    const WeightedSvd f = weighted_svd(x, y, a);
    out.w = min_norm_lstsq(f, opts.ridge);
    out.method = "min-norm-least-squares";
    out.exact = true;
    if (ball && out.w.norm() > radius) {
      // Secular equation |w(mu)| = R for the ridge path, solved by
      // geometric bisection on mu.
      double lo = 0.0;
      double hi = std::max(1e-300, (f.s.cwiseProduct(f.c)).norm() / radius);
      for (int it = 0; it < 400; ++it) {
        const double mid = lo == 0.0 ? hi * 1e-12 : std::sqrt(lo * hi);
        if (ridge_solution(f, mid, opts.ridge).norm() > radius) {
          lo = mid;
        } else {
          hi = mid;
        }
        if (lo > 0.0 && hi / lo < 1 + 1e-15) break;
      }
      out.w = ridge_solution(f, hi, opts.ridge);
      if (out.w.norm() > radius) out.w *= radius / out.w.norm();
      out.method = "ball-constrained-least-squares";
    }
    out.empirical_loss = weighted_loss(x, y, a, out.w, loss);
    out.surrogate_loss = out.empirical_loss;
    out.certified = true;
    return out;
  }

  const Matrix z = signed_rows(x, y);
  const bool nonconvex = loss.kind() == LossKind::kZeroOne ||
                         loss.kind() == LossKind::kMargin;
  if (nonconvex && !ball && x.rows() <= opts.enumeration_cap &&
      x.cols() <= opts.exact_max_dim) {
    out.w = exact_zero_one(z, a);
    out.surrogate_loss = hinge_objective(z, a, out.w);
    out.exact = true;
    out.method = "exact-enumeration";
  } else {
    out.w = ball ? hinge_in_ball(z, a, radius, opts.max_iterations)
                 : hinge_unconstrained(z, a, opts.max_iterations);
    out.surrogate_loss = hinge_objective(z, a, out.w);
    out.method = ball ? "hinge-dual-cd-ball" : "hinge-dual-cd";
  }
  if (loss.kind() == LossKind::kMargin) {
    out.w = rescale_for_margin(z, a, out.w, radius);
  }
  out.empirical_loss = weighted_loss(x, y, a, out.w, loss);
  if (opts.certify && !out.exact) {
    const double reference = best_restart(z, a, ball ? radius : 0.0, opts);
    out.certificate_gap = out.surrogate_loss - reference;
    out.certified = out.certificate_gap <= 1e-3;
  }
  return out;
}

Vector uniform_weights(Eigen::Index m) {
  return Vector::Constant(m, 1.0 / static_cast<double>(std::max<Eigen::Index>(m, 1)));
}

}  // namespace

ErmResult linear_erm(const Matrix& features, const Vector& labels,
                     const LossSpec& loss, const ErmOptions& opts) {
  return solve(features, labels, uniform_weights(features.rows()), 0.0, loss,
               opts);
}

ErmResult weighted_linear_erm(const Matrix& features, const Vector& labels,
                              const Vector& weights, const LossSpec& loss,
                              const ErmOptions& opts) {
  return solve(features, labels, weights, 0.0, loss, opts);
}

ErmResult norm_constrained_erm(const Matrix& features, const Vector& labels,
                               double radius, const LossSpec& loss,
                               const ErmOptions& opts) {
  return weighted_norm_constrained_erm(features, labels,
                                       uniform_weights(features.rows()),
                                       radius, loss, opts);
}

ErmResult weighted_norm_constrained_erm(const Matrix& features,
                                        const Vector& labels,
                                        const Vector& weights, double radius,
                                        const LossSpec& loss,
                                        const ErmOptions& opts) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InputError("norm radius must be positive and finite");
  }
  return solve(features, labels, weights, radius, loss, opts);
}

double generalization_bound(BoundKind kind, const LossSpec& loss,
                            double d_or_r, int m) {
  if (m < 1) throw InputError("sample size must be at least 1");
  if (!(d_or_r >= 0.0)) throw InputError("d or R must be nonnegative");
  const double root_m = std::sqrt(static_cast<double>(m));
  if (kind == BoundKind::kDimension) {
    return loss.c_dc() * std::sqrt(d_or_r / m);
  }
  return loss.c_mc() * d_or_r / root_m;
}

std::string_view to_string(LearnMode mode) {
  switch (mode) {
    case LearnMode::kLin: return "Lin";
    case LearnMode::kKer: return "Ker";
    case LearnMode::kGLin: return "gLin";
    case LearnMode::kGKer: return "gKer";
  }
  return "?";
}

LearnMode parse_learn_mode(std::string_view text) {
  for (LearnMode m :
       {LearnMode::kLin, LearnMode::kKer, LearnMode::kGLin, LearnMode::kGKer}) {
    if (to_string(m) == text) return m;
  }
  throw ConfigError("unknown learning mode '" + std::string(text) +
                    "' (expected Lin, Ker, gLin or gKer)");
}

double null_space_sup_probe(const Matrix& sample_design,
                            const Matrix& population_design,
                            const Vector& population_targets,
                            const Vector& population_weights, const Vector& w,
                            const LossSpec& loss, int probes,
                            std::uint64_t seed) {
  const Vector base_pred = population_design * w;
  double sup = expected_loss(base_pred, population_weights, population_targets,
                             loss);
  Eigen::FullPivLU<Eigen::MatrixXd> lu{Eigen::MatrixXd(sample_design)};
  const Eigen::MatrixXd kernel = lu.kernel();
  if (lu.rank() == sample_design.cols() || probes <= 0) return sup;
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  const double scale = std::max(1.0, w.norm());
  for (int p = 0; p < probes; ++p) {
    Vector c(kernel.cols());
    for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = normal(rng);
    const Vector shift = kernel * c;
    const double n = shift.norm();
    if (n == 0.0) continue;
    // Radii spread over two orders of magnitude around |w|.
    const double radius = scale * std::pow(10.0, -1.0 + 2.0 * p / std::max(1, probes - 1));
    const Vector alt = w + shift * (radius / n);
    sup = std::max(sup, expected_loss(population_design * alt,
                                      population_weights, population_targets,
                                      loss));
  }
  return sup;
}

SimulationResult simulate_learning(const LearningSimSpec& spec) {
  const FiniteHypothesisClass& h = spec.hypotheses;
  spec.distribution.check_aligned(h);
  if (spec.m < 1) throw InputError("m must be at least 1");
  if (spec.trials < 1) throw InputError("trials must be at least 1");
  if (uses_radius(spec.mode) && !(spec.radius > 0.0)) {
    throw InputError("mode " + std::string(to_string(spec.mode)) +
                     " needs a positive norm radius");
  }
  if (spec.loss.binary_only() && h.label_kind() != LabelKind::kBinary) {
    throw InputError("a binary-label loss needs a binary class");
  }
  const std::vector<int> targets =
      spec.targets.empty()
          ? [&] {
              std::vector<int> all(h.num_hypotheses());
              for (int i = 0; i < h.num_hypotheses(); ++i) all[i] = i;
              return all;
            }()
          : h.hypothesis_indices(spec.targets);

  // Ker and gKer under the margin loss are judged by the zero-one loss.
  const LossSpec population_loss =
      (uses_radius(spec.mode) && spec.loss.kind() == LossKind::kMargin)
          ? LossSpec::zero_one()
          : spec.loss;
  const double bound =
      spec.mode == LearnMode::kGLin
          ? generalization_bound(BoundKind::kDimension, spec.loss,
                                 spec.family.dimension(), spec.m)
      : spec.mode == LearnMode::kGKer
          ? generalization_bound(BoundKind::kNorm, spec.loss, spec.radius,
                                 spec.m)
          : 0.0;
  ErmOptions erm = spec.erm;
  const std::uint64_t sample_root = derive_seed(spec.seed, "sample");

  std::vector<std::vector<SimulationRow>> per_trial(spec.trials);
  parallel_for(spec.trials, [&](int trial) {
    const FamilyMember member =
        spec.family.draw(derive_seed(spec.seed, static_cast<std::uint64_t>(trial)));
    const Matrix& phi = member.embedding.features();
    if (phi.cols() != h.num_points()) {
      throw InputError("embedding does not cover the class domain");
    }
    const Matrix population_design = phi.transpose();
    for (int target : targets) {
      const std::uint64_t seed = derive_seed(
          derive_seed(sample_root, static_cast<std::uint64_t>(trial)),
          static_cast<std::uint64_t>(target));
      const RealizableSample sample = draw_realizable_sample(
          h, spec.distribution,
          {h.hypotheses()[target], spec.m, seed});
      const Matrix design = member.embedding.design(sample.points);
      ErmOptions local = erm;
      local.seed = seed;
      const ErmResult fit =
          uses_radius(spec.mode)
              ? norm_constrained_erm(design, sample.labels, spec.radius,
                                     spec.loss, local)
              : linear_erm(design, sample.labels, spec.loss, local);
      const Vector row = h.values().row(target).transpose();
      const double pop =
          expected_loss(population_design * fit.w,
                        spec.distribution.probabilities(), row,
                        population_loss);
      double sup = pop;
      if (spec.null_space_probes > 0 &&
          spec.loss.kind() == LossKind::kSquared && !uses_radius(spec.mode)) {
        sup = null_space_sup_probe(design, population_design, row,
                                   spec.distribution.probabilities(), fit.w,
                                   population_loss, spec.null_space_probes,
                                   derive_seed(seed, "probe"));
      }
      const bool guaranteed =
          spec.mode == LearnMode::kGLin || spec.mode == LearnMode::kGKer;
      per_trial[trial].push_back(
          {spec.mode, spec.m, trial, h.hypotheses()[target],
           fit.empirical_loss, guaranteed ? fit.empirical_loss + bound : pop,
           bound, seed, pop, sup});
    }
  });

  SimulationResult result;
  for (auto& rows : per_trial) {
    for (auto& r : rows) result.rows.push_back(std::move(r));
  }
  const auto k = static_cast<Eigen::Index>(targets.size());
  SimulationSummary& s = result.summary;
  s.mean = Vector::Zero(k);
  s.standard_error = Vector::Zero(k);
  s.sup_approximation = spec.null_space_probes > 0;
  Vector sq = Vector::Zero(k);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(i % targets.size());
    s.mean[j] += result.rows[i].population_criterion;
    sq[j] += result.rows[i].population_criterion *
             result.rows[i].population_criterion;
  }
  const double t = spec.trials;
  for (Eigen::Index j = 0; j < k; ++j) {
    s.hypotheses.push_back(h.hypotheses()[targets[j]]);
    s.mean[j] /= t;
    const double var = t > 1 ? std::max(0.0, (sq[j] - t * s.mean[j] * s.mean[j]) / (t - 1)) : 0.0;
    s.standard_error[j] = std::sqrt(var / t);
  }
  s.max = k ? s.mean.maxCoeff() : 0.0;
  return result;
}

}  // namespace clab
