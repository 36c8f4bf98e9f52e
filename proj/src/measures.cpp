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

#include "complexity_lab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <unordered_map>

#include "complexity_lab/parallel.hpp"
#include "complexity_lab/rng.hpp"

namespace clab {
namespace {

// Losses of every hypothesis under one embedding draw.
Vector member_losses(const FamilyMember& member, const IdList& weight_ids,
                     const FiniteHypothesisClass& h,
                     const DistributionOverX& d, const LossSpec& loss,
                     const CriterionOptions& opts) {
  const Embedding& phi = member.embedding;
  if (!phi.is_tabular()) {
    throw InputError(
        "criterion needs a tabulated embedding; restrict functional classes "
        "to a finite sample first");
  }
  if (phi.num_points() != h.num_points()) {
    throw InputError("embedding covers " + std::to_string(phi.num_points()) +
                     " points but the class has " +
                     std::to_string(h.num_points()));
  }
  const Matrix design = phi.features().transpose();  // |X| x dim
  const Vector& weights = d.probabilities();
  std::unordered_map<std::string, int> rows;
  if (member.weights && opts.use_pair_weights) {
    for (std::size_t i = 0; i < weight_ids.size(); ++i) {
      rows.emplace(weight_ids[i], static_cast<int>(i));
    }
  }
  Vector out(h.num_hypotheses());
  for (int k = 0; k < h.num_hypotheses(); ++k) {
    const Vector target = h.values().row(k).transpose();
    double best = std::numeric_limits<double>::infinity();
    const auto it = rows.find(h.hypotheses()[k]);
    if (it != rows.end()) {
      Vector w = member.weights->row(it->second).transpose();
      if (opts.radius && w.norm() > *opts.radius) w *= *opts.radius / w.norm();
      best = expected_loss(design * w, weights, target, loss);
    }
    if (opts.run_erm) {
      const ErmResult r =
          opts.radius ? weighted_norm_constrained_erm(design, target, weights,
                                                      *opts.radius, loss,
                                                      opts.erm)
                      : weighted_linear_erm(design, target, weights, loss,
                                            opts.erm);
      best = std::min(best, r.empirical_loss);
    }
    if (!std::isfinite(best)) {
      throw InputError("hypothesis '" + h.hypotheses()[k] +
                       "' has no weight map and ERM is disabled");
    }
    out[k] = std::max(0.0, best);
  }
  return out;
}

void finish_report(CriterionReport& r) {
  r.max = r.values.size() ? r.values.maxCoeff() : 0.0;
  r.mean = r.values.size() ? r.values.mean() : 0.0;
}

}  // namespace

CriterionReport distributional_dc_criterion(const EmbeddingFamily& family,
                                            const FiniteHypothesisClass& h,
                                            const DistributionOverX& d,
                                            const LossSpec& loss, int draws,
                                            std::uint64_t seed,
                                            const CriterionOptions& opts) {
  if (draws < 1) throw InputError("draws must be at least 1");
  d.check_aligned(h);
  if (loss.binary_only() && h.label_kind() != LabelKind::kBinary) {
    throw InputError("loss " + std::string(to_string(loss.kind())) +
                     " needs a binary class");
  }
  if (opts.radius && !(*opts.radius > 0.0)) {
    throw InputError("radius must be positive");
  }
  CriterionReport r;
  r.hypotheses = h.hypotheses();
  r.eps = opts.eps;
  r.loss = std::string(to_string(loss.kind()));
  const int n = h.num_hypotheses();

  if (family.is_finite()) {
    const auto& support = family.support();
    std::vector<Vector> losses(support.size());
    parallel_for(static_cast<int>(support.size()), [&](int i) {
      losses[i] = member_losses(support[i], family.weight_ids(), h, d, loss, opts);
    });
    r.values = Vector::Zero(n);
    for (std::size_t i = 0; i < support.size(); ++i) {
      r.values += support[i].probability * losses[i];
    }
    r.standard_errors = Vector::Zero(n);
    r.draws = static_cast<int>(support.size());
    r.exact_enumeration = true;
  } else {
    std::vector<Vector> losses(draws);
    parallel_for(draws, [&](int i) {
      const FamilyMember m =
          family.draw(derive_seed(seed, static_cast<std::uint64_t>(i)));
      losses[i] = member_losses(m, family.weight_ids(), h, d, loss, opts);
    });
    Vector sum = Vector::Zero(n), sq = Vector::Zero(n);
    for (const Vector& l : losses) {
      sum += l;
      sq += l.cwiseProduct(l);
    }
    r.values = sum / draws;
    r.standard_errors = Vector::Zero(n);
    if (draws > 1) {
      for (int k = 0; k < n; ++k) {
        const double var = std::max(
            0.0, (sq[k] - draws * r.values[k] * r.values[k]) / (draws - 1));
        r.standard_errors[k] = std::sqrt(var / draws);
      }
    }
    r.draws = draws;
  }
  finish_report(r);
  return r;
}

PointwiseReport pointwise_dc_criterion(const std::vector<WeightedPair>& pairs,
                                       const FiniteHypothesisClass& h,
                                       const LossSpec& loss) {
  if (pairs.empty()) throw InputError("pair family is empty");
  double total = 0.0;
  for (const WeightedPair& p : pairs) {
    if (!(p.probability >= 0.0)) throw InputError("negative pair probability");
    total += p.probability;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw InputError("pair probabilities sum to " + std::to_string(total));
  }
  Matrix expected = Matrix::Zero(h.num_hypotheses(), h.num_points());
  for (const WeightedPair& p : pairs) {
    const Embedding& phi = p.pair.embedding();
    if (!phi.is_tabular() || phi.num_points() != h.num_points()) {
      throw InputError("pair embedding does not match the class domain");
    }
    const Matrix pred = p.pair.predictions();
    for (int k = 0; k < h.num_hypotheses(); ++k) {
      const auto& ids = p.pair.hypotheses();
      const auto it = std::find(ids.begin(), ids.end(), h.hypotheses()[k]);
      if (it == ids.end()) {
        throw InputError("pair has no weight map for '" + h.hypotheses()[k] + "'");
      }
      const Eigen::Index row = it - ids.begin();
      for (int x = 0; x < h.num_points(); ++x) {
        expected(k, x) += p.probability * eval_loss(loss, pred(row, x), h.values()(k, x));
      }
    }
  }
  PointwiseReport r;
  Eigen::Index hi = 0, xi = 0;
  r.value = expected.maxCoeff(&hi, &xi);
  r.hypothesis_id = h.hypotheses()[hi];
  r.point_id = h.domain()[xi];
  return r;
}

EmbeddingFamily induced_family(const std::vector<WeightedPair>& pairs) {
  if (pairs.empty()) throw InputError("pair family is empty");
  const IdList ids = pairs.front().pair.hypotheses();
  std::vector<FamilyMember> members;
  for (const WeightedPair& p : pairs) {
    if (p.pair.hypotheses() != ids) {
      throw InputError("pairs must share one hypothesis id list");
    }
    members.push_back({p.pair.embedding(), p.pair.weights(), p.probability});
  }
  return EmbeddingFamily::mixture(std::move(members), ids);
}

MinDimResult min_dim_for_criterion(const FamilyGenerator& generator,
                                   const FiniteHypothesisClass& h,
                                   const DistributionOverX& d,
                                   const LossSpec& loss, double eps, int d_min,
                                   int d_max, int draws, std::uint64_t seed,
                                   const CriterionOptions& opts) {
  if (!(eps > 0.0)) throw InputError("eps must be positive");
  if (d_min < 1 || d_max < d_min) throw InputError("invalid dimension range");
  MinDimResult out;
  CriterionOptions o = opts;
  o.eps = eps;
  for (int dim = d_min; dim <= d_max; ++dim) {
    CriterionReport r = distributional_dc_criterion(
        generator(dim), h, d, loss, draws,
        derive_seed(seed, static_cast<std::uint64_t>(dim)), o);
    out.trace.emplace_back(dim, r.max);
    const bool better = r.max < out.best_max;
    if (better) {
      out.best_max = r.max;
      out.best_dimension = dim;
    }
    if (r.max <= eps + kTolerance) {
      out.found = true;
      out.dimension = dim;
      out.report = std::move(r);
      return out;
    }
    if (better) out.report = std::move(r);
  }
  return out;
}

FamilyGenerator svd_family_generator(const FiniteHypothesisClass& h,
                                     const DistributionOverX& d) {
  return [h, d](int dim) { return EmbeddingFamily::svd(h, d, dim); };
}

FamilyGenerator zero_family_generator(int num_points) {
  return [num_points](int dim) { return EmbeddingFamily::zero(num_points, dim); };
}

FamilyGenerator jl_family_generator(int num_points, std::uint64_t seed) {
  return [num_points, seed](int dim) {
    return EmbeddingFamily::jl_gaussian(
        Embedding::tabular(Matrix::Identity(num_points, num_points)), dim,
        derive_seed(seed, "jl-family"));
  };
}

FamilyGenerator cover_family_generator(const FiniteHypothesisClass& h,
                                       const DistributionOverX& d, double eps) {
  const CoverResult cover = greedy_cover(h, d, eps);
  const Matrix dis = disagreement_matrix(h, d);
  return [h, cover, dis](int dim) {
    const int k = std::min<int>(dim, static_cast<int>(cover.cover.size()));
    const int n = h.num_hypotheses();
    Matrix features = Matrix::Zero(dim, h.num_points());
    for (int c = 0; c < k; ++c) features.row(c) = h.values().row(cover.cover[c]);
    Matrix weights = Matrix::Zero(n, dim);
    for (int j = 0; j < n; ++j) {
      int arg = 0;
      for (int c = 1; c < k; ++c) {
        if (dis(cover.cover[c], j) < dis(cover.cover[arg], j)) arg = c;
      }
      weights(j, arg) = 1.0;
    }
    return EmbeddingFamily::fixed(EmbeddingWeightPair(
        Embedding::tabular(std::move(features)), h.hypotheses(),
        std::move(weights)));
  };
}

BoundReport thm9_lower_bound(const NormalizedClass& h, double eps,
                             const std::vector<double>& lambda_grid,
                             const DimSearchMode& mode) {
  if (!(eps >= 0.0)) throw InputError("eps must be nonnegative");
  BoundReport r;
  r.name = "thm9";
  r.inputs = {{"eps", eps}};
  bool any = false;
  for (double lambda : lambda_grid) {
    if (!(lambda > 2.0 * eps && lambda <= 1.0)) continue;
    any = true;
    const DimResult dim = min_ev_dimension(h, lambda, mode);
    const double value = (1.0 - 2.0 * eps / lambda) * dim.value;
    if (!r.witness_lambda || value > r.value) {
      r.value = value;
      r.witness_lambda = lambda;
      r.witness_ids = dim.witness_ids;
    }
    if (!dim.exact) r.note = "greedy minEV search; value is a lower estimate";
  }
  if (!any) {
    r.value = 0.0;
    r.vacuous = true;
    r.note = "no lambda in (2 eps, 1]";
  }
  return r;
}

BoundReport cor10_lower_bound(const NormalizedClass& h, double eps,
                              const DimSearchMode& mode,
                              const SqDimOptions& sq) {
  BoundReport r;
  r.name = "cor10";
  r.inputs = {{"eps", eps}};
  const DimResult dim = sq_dimension(h, mode, sq);
  r.inputs.emplace_back("sq_dim", dim.value);
  r.witness_ids = dim.witness_ids;
  const double factor = 1.0 - 4.0 * eps;
  if (factor <= 0.0) {
    r.vacuous = true;
    r.value = 0.0;
  } else {
    r.value = factor * dim.value;
  }
  if (!dim.exact) r.note = "greedy SQ search; value is a lower estimate";
  return r;
}

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw InputError("binary entropy needs q in [0, 1]");
  }
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double thm12_coefficient(double eps, LogBase base) {
  if (!(eps >= 0.0)) throw InputError("eps must be nonnegative");
  if (eps >= 0.5) return 0.0;
  const double g = 1.0 - binary_entropy(eps);
  if (g <= 0.0) return 0.0;
  const double arg = 16.0 * std::numbers::e / g;
  const double lg = base == LogBase::kTwo ? std::log2(arg) : std::log(arg);
  return g / (4.0 * lg);
}

BoundReport thm12_lower_bound(int n, double eps, LogBase base) {
  if (n < 1) throw InputError("n must be positive");
  BoundReport r;
  r.name = "thm12";
  r.inputs = {{"n", n}, {"eps", eps}, {"log_base", base == LogBase::kTwo ? 2.0 : std::numbers::e}};
  const double c = thm12_coefficient(eps, base);
  r.inputs.emplace_back("coefficient", c);
  r.value = n * c;
  r.vacuous = c == 0.0;
  r.asymptotic = true;
  r.note = "lower-order term reported as 0";
  return r;
}

double sm_log_count_bound(int n, int d) {
  if (d < 1 || d > n) throw InputError("need 1 <= d <= n");
  return 2.0 * d * n * std::log2(8.0 * std::numbers::e * n / d);
}

Lemma3Result lemma3_dim_transfer(double radius, double eps, double eta,
                                 LossKind loss, double lipschitz,
                                 double calibration) {
  if (!(eta > 0.0)) throw InputError("eta must be positive");
  if (!(calibration > 0.0)) throw InputError("calibration constant must be positive");
  if (!(radius > 0.0)) throw InputError("radius must be positive");
  Lemma3Result r;
  r.calibration = calibration;
  switch (loss) {
    case LossKind::kZeroOne:
    case LossKind::kMargin:
      if (!(eta < 1.0)) throw InputError("eta must be below 1 for the 0/1 transfer");
      r.raw = calibration * radius * radius * std::log(1.0 / eta);
      break;
    case LossKind::kHinge: {
      const double t = lipschitz * radius / eta;
      r.raw = calibration * t * t;
      break;
    }
    case LossKind::kSquared:
      if (!(eps >= 0.0)) throw InputError("eps must be nonnegative");
      r.raw = calibration * radius * radius * (eps + eta) / (eta * eta);
      break;
  }
  r.dimension = std::max(1, static_cast<int>(std::ceil(r.raw - 1e-12)));
  return r;
}

McResult mc_upper_heuristic(const FiniteHypothesisClass& h, int restarts,
                            std::uint64_t seed) {
  if (h.label_kind() != LabelKind::kBinary) {
    throw InputError("margin complexity needs a binary class");
  }
  const Matrix& y = h.values();
  const int nh = h.num_hypotheses();
  const int nx = h.num_points();
  const int k = std::min(nh, nx) + 1;

  // Trivial witness: one coordinate per point (or per hypothesis).
  McResult best;
  best.trivial = true;
  if (nx <= nh) {
    best.features = Matrix::Identity(nx, nx);
    best.weights = y;
    best.radius = std::sqrt(static_cast<double>(nx));
  } else {
    best.features = y.transpose() / std::sqrt(static_cast<double>(nh));
    best.weights = Matrix::Identity(nh, nh) * std::sqrt(static_cast<double>(nh));
    best.radius = std::sqrt(static_cast<double>(nh));
  }
  best.min_margin = 1.0;
  best.verified = true;

  // Unit rows u_h and v_x; maximize the smallest signed margin through a
  // softmin with an increasing temperature, renormalizing after each step.
  auto normalize_rows = [](Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double n = m.row(i).norm();
      if (n > 0.0) m.row(i) /= n;
    }
  };
  const std::vector<double> betas = {4, 16, 64, 256, 1024, 4096};
  for (int r = 0; r < std::max(1, restarts); ++r) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::normal_distribution<double> normal;
    Matrix u(nh, k), v(nx, k);
    for (Eigen::Index i = 0; i < u.size(); ++i) u.data()[i] = normal(rng);
    for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = normal(rng);
    normalize_rows(u);
    normalize_rows(v);
    for (double beta : betas) {
      const double step = 0.5 / std::sqrt(beta);
      for (int it = 0; it < 400; ++it) {
        const Matrix margins = y.cwiseProduct(u * v.transpose());
        const double lo = margins.minCoeff();
        Matrix p = (-beta * (margins.array() - lo)).exp().matrix();
        p /= p.sum();
        const Matrix g = p.cwiseProduct(y);
        const Matrix gu = g * v;
        const Matrix gv = g.transpose() * u;
        u += step * gu;
        v += step * gv;
        normalize_rows(u);
        normalize_rows(v);
      }
    }
    const double gamma = y.cwiseProduct(u * v.transpose()).minCoeff();
    if (gamma > 0.0 && 1.0 / gamma < best.radius) {
      best.radius = 1.0 / gamma;
      best.features = v.transpose();
      best.weights = u / gamma;
      best.trivial = false;
    }
  }
  // Re-verify the chosen witness directly.
  const Matrix margins = y.cwiseProduct(best.weights * best.features);
  best.min_margin = margins.minCoeff();
  double max_feature = 0.0, max_weight = 0.0;
  for (Eigen::Index c = 0; c < best.features.cols(); ++c) {
    max_feature = std::max(max_feature, best.features.col(c).norm());
  }
  for (Eigen::Index i = 0; i < best.weights.rows(); ++i) {
    max_weight = std::max(max_weight, best.weights.row(i).norm());
  }
  best.verified = best.min_margin >= 1.0 - 1e-9 &&
                  max_feature <= 1.0 + 1e-9 &&
                  max_weight <= best.radius * (1.0 + 1e-9);
  return best;
}

namespace {

struct VcSearch {
  const Matrix& y;
  int cap;
  int nx;
  std::vector<int> current;
  std::vector<int> best;
  bool exceeded = false;

  // groups: hypotheses partitioned by their pattern on current; the set is
  // shattered iff there are 2^|current| nonempty groups.
  void dfs(int start, const std::vector<std::vector<int>>& groups) {
    if (current.size() > best.size()) best = current;
    if (static_cast<int>(current.size()) > cap) {
      exceeded = true;
      return;
    }
    for (int x = start; x < nx && !exceeded; ++x) {
      std::vector<std::vector<int>> next;
      next.reserve(groups.size() * 2);
      bool ok = true;
      for (const auto& g : groups) {
        std::vector<int> plus, minus;
        for (int hyp : g) (y(hyp, x) > 0 ? plus : minus).push_back(hyp);
        if (plus.empty() || minus.empty()) {
          ok = false;
          break;
        }
        next.push_back(std::move(plus));
        next.push_back(std::move(minus));
      }
      if (!ok) continue;
      current.push_back(x);
      dfs(x + 1, next);
      current.pop_back();
    }
  }
};

}  // namespace

VcResult vc_dimension(const FiniteHypothesisClass& h, int cap) {
  if (h.label_kind() != LabelKind::kBinary) {
    throw InputError("VC dimension needs a binary class");
  }
  if (cap < 0) throw InputError("cap must be nonnegative");
  VcSearch s{h.values(), cap, h.num_points(), {}, {}, false};
  std::vector<int> all(h.num_hypotheses());
  for (int i = 0; i < h.num_hypotheses(); ++i) all[i] = i;
  s.dfs(0, {all});
  VcResult r;
  r.exceeds_cap = s.exceeded;
  if (s.exceeded) s.best.resize(cap);
  r.value = static_cast<int>(s.best.size());
  for (int x : s.best) r.witness.push_back(h.domain()[x]);
  return r;
}

bool sign_rank_one_test(const Matrix& signs) {
  if (signs.rows() < 1 || signs.cols() < 1) throw InputError("empty sign matrix");
  for (Eigen::Index i = 0; i < signs.size(); ++i) {
    const double v = signs.data()[i];
    if (v != 1.0 && v != -1.0) throw InputError("sign matrix entries must be +1 or -1");
  }
  for (Eigen::Index r = 1; r < signs.rows(); ++r) {
    const double s = signs(r, 0) * signs(0, 0);
    if (signs.row(r) != s * signs.row(0)) return false;
  }
  return true;
}

}  // namespace clab
