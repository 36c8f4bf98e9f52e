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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "complexity_lab/constructions.hpp"
#include "complexity_lab/embeddings.hpp"
#include "complexity_lab/io.hpp"
#include "complexity_lab/learners.hpp"
#include "complexity_lab/measures.hpp"
#include "complexity_lab/rng.hpp"
#include "complexity_lab/spectral.hpp"
#include "complexity_lab/verify.hpp"

#ifndef COMPLEXITY_LAB_FIXTURE_DIR
#define COMPLEXITY_LAB_FIXTURE_DIR "tests/fixtures"
#endif

namespace clab {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records a failed check; keeps the first message only.
  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<int> all_rows(int n) {
  std::vector<int> r(n);
  for (int i = 0; i < n; ++i) r[i] = i;
  return r;
}

NormalizedClass random_normalized(std::uint64_t seed, int max_h, int max_x) {
  Rng rng = make_rng(seed);
  const int nh = std::uniform_int_distribution<int>(2, max_h)(rng);
  const int nx = std::uniform_int_distribution<int>(2, max_x)(rng);
  const bool binary = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  const auto h = random_class(nh, nx, binary, derive_seed(seed, "class"));
  return normalize_class(h, random_distribution(nx, derive_seed(seed, "dist")));
}

Outcome parity_exactness() {
  Outcome o;
  const auto start = Clock::now();
  const auto p = parities(3);
  const auto d = DistributionOverX::uniform(8);
  const auto n = normalize_class(p, d);
  const BoundReport bound = thm9_lower_bound(n, 0.25, {1.0});
  const MinDimResult dim = min_dim_for_criterion(svd_family_generator(p, d), p, d,
                                                 LossSpec::squared(), 0.25, 1, 8, 1, 42);
  const double oracle = avg_rank_error_oracle(n, 4);
  const double elapsed = seconds_since(start);
  o.require(bound.value == 4.0, "thm9 returned " + num(bound.value));
  o.require(dim.found && dim.dimension == 4, "min_dim returned " + std::to_string(dim.dimension));
  o.require(std::abs(oracle - 0.25) <= 1e-9, "oracle(4) = " + num(oracle));
  o.require(elapsed < 1.0, "took " + num(elapsed) + " s");
  if (o.pass) {
    o.detail = "thm9=4, min_dim=4, oracle(4)=" + num(oracle) + ", " + num(elapsed) + " s";
  }
  return o;
}

Outcome sq_minev_exactness() {
  Outcome o;
  const auto n = normalize_class(parities(3), DistributionOverX::uniform(8));
  auto start = Clock::now();
  const int sq = sq_dimension(n).value;
  const double t_sq = seconds_since(start);
  start = Clock::now();
  const int ev = min_ev_dimension(n, 1.0).value;
  const double t_ev = seconds_since(start);
  const double c10 = cor10_lower_bound(n, 0.1).value;
  o.require(sq == 8, "sq_dimension = " + std::to_string(sq));
  o.require(ev == 8, "min_ev_dimension = " + std::to_string(ev));
  o.require(t_sq < 1.0 && t_ev < 1.0, "slow search: " + num(t_sq) + " s, " + num(t_ev) + " s");
  o.require(std::abs(c10 - 4.8) <= 1e-9, "cor10 = " + num(c10));
  if (o.pass) o.detail = "sq=8, minEV=8, cor10=" + num(c10);
  return o;
}

Outcome gershgorin_suite() {
  Outcome o;
  int checks = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto h = random_normalized(derive_seed(3, i), 8, 12);
    const GramMatrix g = gram_matrix(h, all_rows(h.size()));
    const double lmin = g.min_eigenvalue();
    const double gb = gershgorin_bound(g);
    o.require(lmin >= gb - 1e-8,
              "class " + std::to_string(i) + ": lambda_min " + num(lmin) + " < " + num(gb));
    const int t = sq_dimension(h).value;
    const int ev = min_ev_dimension(h, 0.5).value;
    o.require(ev >= t, "class " + std::to_string(i) + ": minEV(1/2) " + std::to_string(ev) +
                           " < sq " + std::to_string(t));
    checks += 2;
  }
  if (o.pass) o.detail = std::to_string(checks) + " checks, 0 failures";
  return o;
}

Outcome minev_bound_soundness() {
  Outcome o;
  int checks = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto h = random_normalized(derive_seed(4, i), 8, 16);
    for (int li = 3; li <= 10; ++li) {
      const double lambda = li / 10.0;
      const DimResult wit = min_ev_dimension(h, lambda);
      if (wit.value == 0) continue;
      const NormalizedClass sub = h.select(wit.witness);
      const int t = wit.value;
      for (int ei = 1; ei <= 9; ++ei) {
        const double eps = 0.05 * ei;
        const double limit = (1.0 - 2.0 * eps / lambda) * t;
        for (int d = 0; d < limit - 1e-12 && d <= std::min(sub.size(), sub.hypotheses().num_points()); ++d) {
          const double err = avg_rank_error_oracle(sub, d);
          ++checks;
          o.require(err > eps - 1e-9, "class " + std::to_string(i) + " lambda " + num(lambda) +
                                          " eps " + num(eps) + " d " + std::to_string(d) +
                                          ": oracle " + num(err));
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " (class, lambda, eps, d) checks, 0 violations";
  return o;
}

Outcome rank_oracle_optimality() {
  Outcome o;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto h = random_class(4, 6, false, derive_seed(5, i));
    const auto d = random_distribution(6, derive_seed(5, 1000 + i));
    const Matrix m = WeightedClassMatrix(h, d).matrix();
    const double oracle = avg_rank_error_oracle(h, d, 2);
    Rng rng = make_rng(derive_seed(5, 2000 + i));
    std::normal_distribution<double> normal;
    double best = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 1000; ++trial) {
      // Random rank-2 factorization M ~ A B with B random and A optimal for B.
      Matrix b(2, 6);
      for (Eigen::Index k = 0; k < b.size(); ++k) b.data()[k] = normal(rng);
      const Eigen::MatrixXd bt = b.transpose();
      const Matrix a = Eigen::MatrixXd(bt.colPivHouseholderQr().solve(Eigen::MatrixXd(m.transpose())))
                           .transpose();
      best = std::min(best, 0.5 * (m - a * b).squaredNorm() / 4.0);
    }
    worst_margin = std::min(worst_margin, best - oracle);
    o.require(best - oracle >= -1e-9,
              "matrix " + std::to_string(i) + ": oracle " + num(oracle) + " > " + num(best));
  }
  if (o.pass) o.detail = "smallest margin " + num(worst_margin);
  return o;
}

Outcome jl_transfer() {
  Outcome o;
  const double radius = 4.0;
  const PlantedMarginClass pm = planted_margin_class(256, 6, 8, radius, 6);
  const int d = lemma3_dim_transfer(radius, 0.0, 0.1, LossKind::kZeroOne).dimension;
  const auto family = EmbeddingFamily::jl_gaussian(pm.witness, d, derive_seed(6, "jl"));
  CriterionOptions opts;
  opts.run_erm = false;
  const CriterionReport r = distributional_dc_criterion(
      family, pm.hypotheses, DistributionOverX::uniform(256), LossSpec::zero_one(), 200,
      derive_seed(6, "draws"), opts);
  o.require(r.max <= 0.1, "max criterion " + num(r.max) + " > 0.1");
  o.detail = "d=" + std::to_string(d) + ", mean " + num(r.mean) + ", max " + num(r.max) +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

// Hypotheses linear in one fixed unit-norm embedding, weight norms in
// [0.1, 1], so the squared-loss ERM can always interpolate its sample.
struct LinearWorld {
  FiniteHypothesisClass h;
  EmbeddingFamily family;
};

LinearWorld linear_world(std::uint64_t seed, int d, int nx, int nh) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  Matrix phi(d, nx), w(nh, d);
  for (Eigen::Index k = 0; k < phi.size(); ++k) phi.data()[k] = normal(rng);
  for (Eigen::Index k = 0; k < w.size(); ++k) w.data()[k] = normal(rng);
  for (int x = 0; x < nx; ++x) phi.col(x).normalize();
  for (int k = 0; k < nh; ++k) {
    w.row(k) *= std::uniform_real_distribution<double>(0.1, 1.0)(rng) / w.row(k).norm();
  }
  IdList hyps, points;
  for (int k = 0; k < nh; ++k) hyps.push_back("w" + std::to_string(k));
  for (int x = 0; x < nx; ++x) points.push_back("x" + std::to_string(x));
  return {FiniteHypothesisClass(points, hyps, w * phi, LabelKind::kReal),
          EmbeddingFamily::fixed(Embedding::tabular(phi))};
}

Outcome representer_invariance() {
  Outcome o;
  int checks = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::uint64_t seed = derive_seed(7, i);
    Rng rng = make_rng(seed);
    const int d = std::uniform_int_distribution<int>(1, 32)(rng);
    const int m = std::uniform_int_distribution<int>(1, 16)(rng);
    const int nx = 40;
    std::normal_distribution<double> normal;
    Matrix phi(d, nx);
    for (Eigen::Index k = 0; k < phi.size(); ++k) phi.data()[k] = normal(rng);
    std::vector<int> sample(m);
    for (int& s : sample) s = std::uniform_int_distribution<int>(0, nx - 1)(rng);
    const RepresenterReduction red = representer_reduce(Embedding::tabular(phi), sample);
    for (int t = 0; t < 5; ++t) {
      Vector w(d);
      for (int k = 0; k < d; ++k) w[k] = normal(rng);
      const Vector pw = red.project(w);
      for (int x : sample) {
        const double gap = std::abs(w.dot(phi.col(x)) - pw.dot(red.reduced.features().col(x)));
        ++checks;
        o.require(gap <= 1e-9, "draw " + std::to_string(i) + ": prediction gap " + num(gap));
      }
    }
    const LinearWorld world = linear_world(derive_seed(seed, "world"), d, nx, 3);
    auto run = [&](LearnMode mode) {
      LearningSimSpec spec{mode, world.h, DistributionOverX::uniform(nx), LossSpec::squared(),
                           world.family, m, 2, 0.0, seed, ErmOptions{}, {}, 0};
      spec.erm.certify = false;
      return simulate_learning(spec);
    };
    const SimulationResult lin = run(LearnMode::kLin);
    const SimulationResult glin = run(LearnMode::kGLin);
    for (std::size_t r = 0; r < lin.rows.size(); ++r) {
      ++checks;
      o.require(glin.rows[r].population_criterion >= lin.rows[r].population_criterion - 1e-9,
                "draw " + std::to_string(i) + ": gLin " + num(glin.rows[r].population_criterion) +
                    " < Lin " + num(lin.rows[r].population_criterion));
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " checks, 0 failures";
  return o;
}

Outcome cover_validity() {
  Outcome o;
  int classes = 0;
  for (std::uint64_t i = 0; classes < 20; ++i) {
    const auto h = random_halfplane_class(30, 40, derive_seed(8, i));
    if (vc_dimension(h).value > 3) continue;
    ++classes;
    const auto d = random_distribution(30, derive_seed(8, 500 + i));
    for (double eps : {0.1, 0.25}) {
      const CoverResult c = greedy_cover(h, d, eps);
      for (int j = 0; j < h.num_hypotheses(); ++j) {
        const int row = c.cover[c.assignment[j]];
        double mass = 0.0;
        for (int x = 0; x < h.num_points(); ++x) {
          if (h.values()(row, x) != h.values()(j, x)) mass += d[x];
        }
        o.require(mass <= eps + 1e-12, "hypothesis " + h.hypotheses()[j] + " at distance " +
                                           num(mass));
      }
      CriterionOptions opts;
      opts.run_erm = false;
      const CriterionReport r = distributional_dc_criterion(
          EmbeddingFamily::fixed(c.pair), h, d, LossSpec::zero_one(), 1, 0, opts);
      o.require(r.max <= eps + 1e-12, "induced criterion " + num(r.max) + " > " + num(eps));
    }
  }
  for (int n = 1; n <= 3; ++n) {
    const auto p = parities(n);
    const auto size = greedy_cover(p, DistributionOverX::uniform(1 << n), 0.25).cover.size();
    o.require(size == (1u << n), "parities(" + std::to_string(n) + ") cover size " +
                                     std::to_string(size));
  }
  if (o.pass) o.detail = "20 classes x 2 radii valid; parity covers of size 2^n";
  return o;
}

Outcome zigzag_shape() {
  Outcome o;
  int points = 0;
  for (int a : {1, 3, 5, 7}) {
    const double lo = -a - 3.0;
    const int steps = static_cast<int>(std::lround((2.0 * a + 6.0) / 0.01));
    double prev = psi(a, lo);
    for (int i = 0; i <= steps; ++i) {
      const double z = lo + 0.01 * i;
      const double v = psi(a, z);
      ++points;
      o.require(std::abs(v + psi(a, -z)) <= 1e-12, "not odd at a=" + std::to_string(a) + " z=" + num(z));
      o.require(std::abs(v) <= 1.0, "unbounded at z=" + num(z));
      o.require(std::abs(v - prev) <= 0.01 + 1e-12, "Lipschitz violation at z=" + num(z));
      if (z <= -a) o.require(v == -1.0, "left tail at z=" + num(z));
      if (z >= a) o.require(v == 1.0, "right tail at z=" + num(z));
      prev = v;
    }
  }
  for (int n : {1, 2}) {
    const int a = zigzag_parameter(n);
    Vector u = Vector::Zero(n);
    u[0] = n;
    const ReluDecomposition dec = zigzag_relu_decomposition(u, a);
    o.require(dec.pieces.size() == 6 * n * n + 3,
              "n=" + std::to_string(n) + ": " + std::to_string(dec.pieces.size()) + " terms");
    for (double c : dec.coefficients) o.require(std::abs(c) <= 2.0, "coefficient " + num(c));
    // Reassemble through the combination builder over the ReLU pieces.
    auto base = std::make_shared<const FunctionalClass>(dec.pieces);
    CombinationSpec spec{base, {Combination{base->ids(), dec.coefficients, "psi"}}};
    const FunctionalClass comb = std::get<FunctionalClass>(build_combination(spec));
    for (int i = 0; i <= 100 * (2 * a + 4); ++i) {
      const double z = -a - 2.0 + 0.01 * i;
      Vector x = Vector::Zero(n);
      x[0] = z / n;
      const double gap = std::abs(comb.evaluate(0, x) - psi(a, z));
      o.require(gap <= 1e-9, "decomposition gap " + num(gap) + " at z=" + num(z));
    }
  }
  if (o.pass) o.detail = std::to_string(points) + " grid points; decompositions exact";
  return o;
}

Outcome zigzag_decay() {
  Outcome o;
  constexpr int kSamples = 100000;
  std::vector<double> medians;
  double smallest_self = std::numeric_limits<double>::infinity();
  for (int n : {2, 4, 6, 8}) {
    const std::uint64_t seed = derive_seed(10, static_cast<std::uint64_t>(n));
    const FunctionalClass f = zigzag_class_sample(n, 40, seed);
    std::vector<double> corr;
    for (int pair = 0; pair < 20; ++pair) {
      const Estimate e = zigzag_gram_conditional(
          f.directions()[2 * pair], f.directions()[2 * pair + 1], f.a(), kSamples,
          derive_seed(seed, 100 + pair));
      corr.push_back(std::abs(e.value));
    }
    for (int k = 0; k < 40; k += 8) {
      const Estimate self = gaussian_gram_estimate(f, k, k, kSamples, derive_seed(seed, 500 + k));
      smallest_self = std::min(smallest_self, self.value);
      o.require(self.value >= 0.05, "n=" + std::to_string(n) + ": self-norm " + num(self.value));
    }
    std::nth_element(corr.begin(), corr.begin() + 10, corr.end());
    const double upper = corr[10];
    std::nth_element(corr.begin(), corr.begin() + 9, corr.end());
    medians.push_back(0.5 * (corr[9] + upper));
  }
  std::string trend;
  for (std::size_t i = 0; i < medians.size(); ++i) trend += (i ? " > " : "") + num(medians[i]);
  for (std::size_t i = 1; i < medians.size(); ++i) {
    o.require(medians[i] < medians[i - 1], "medians not decreasing: " + trend);
  }
  o.detail = "medians " + trend + "; min self-norm " + num(smallest_self) +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome formula_calculators() {
  Outcome o;
  o.require(binary_entropy(0.5) == 1.0, "h(1/2) = " + num(binary_entropy(0.5)));
  // Independent re-derivation with natural logs only.
  const double q = 0.25;
  const double h = -(q * std::log(q) + (1 - q) * std::log(1 - q)) / std::log(2.0);
  const double g = 1.0 - h;
  const double want = g * std::log(2.0) / (4.0 * std::log(16.0 * std::exp(1.0) / g));
  const double got = thm12_coefficient(0.25);
  o.require(std::abs(got - want) <= 1e-6, "coefficient " + num(got) + " vs " + num(want));
  o.require(std::abs(got - 0.006012) <= 1e-6, "coefficient " + num(got) + " vs 0.006012");
  o.require(thm12_lower_bound(10, 0.5).vacuous, "not vacuous at eps = 1/2");
  const double count = sm_log_count_bound(2, 2);
  o.require(std::abs(count - 35.54) <= 1e-2, "counting bound " + num(count));
  if (o.pass) o.detail = "coefficient " + num(got) + ", counting bound " + num(count);
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const std::string a = verify_report_json(run_verify("all", 42));
  const std::string b = verify_report_json(run_verify("all", 42));
  o.require(a == b, "verify reports differ");
  o.require(run_verify("all", 42).passed(), "verify suites fail");

  // Same calls the command line makes for the stored sweeps.
  const auto p = parities(3);
  const auto d = DistributionOverX::uniform(8);
  CriterionOptions opts;
  opts.erm.seed = derive_seed(42, "erm");
  const std::string dir = COMPLEXITY_LAB_FIXTURE_DIR;
  const std::string svd = min_dim_csv(min_dim_for_criterion(
      svd_family_generator(p, d), p, d, LossSpec::squared(), 0.25, 1, 8, 20, 42, opts));
  o.require(svd == read_file(dir + "/svd_min_dim_parities3.csv"), "svd sweep differs from fixture");
  const std::string jl_sweep = min_dim_csv(min_dim_for_criterion(
      jl_family_generator(8, 42), p, d, LossSpec::squared(), 0.3, 1, 8, 50, 42, opts));
  o.require(jl_sweep == read_file(dir + "/jl_min_dim_parities3.csv"), "jl sweep differs from fixture");
  CriterionOptions single = opts;
  single.eps = 0.3;
  const std::string jl = criterion_csv(distributional_dc_criterion(
      EmbeddingFamily::jl_gaussian(Embedding::tabular(Matrix::Identity(8, 8)), 4,
                                   derive_seed(42, "family")),
      p, d, LossSpec::squared(), 50, 42, single));
  o.require(jl == read_file(dir + "/jl_criterion_parities3.csv"), "jl criterion differs from fixture");
  if (o.pass) o.detail = "verify reports identical (" + std::to_string(a.size()) + " bytes); 3 fixtures match";
  return o;
}

}  // namespace
}  // namespace clab

int main() {
  using namespace clab;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "parity exactness", parity_exactness},
      {2, "SQ and minEV exactness", sq_minev_exactness},
      {3, "Gershgorin property suite", gershgorin_suite},
      {4, "minEV lower bound soundness", minev_bound_soundness},
      {5, "rank oracle optimality", rank_oracle_optimality},
      {6, "random projection transfer", jl_transfer},
      {7, "representer invariance", representer_invariance},
      {8, "cover validity", cover_validity},
      {9, "zigzag shape", zigzag_shape},
      {10, "zigzag correlation decay", zigzag_decay},
      {11, "formula calculators", formula_calculators},
      {12, "determinism", determinism},
  };
  int failures = 0;
  const auto start = Clock::now();
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %-30s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failures,
              criteria.size(), seconds_since(start));
  return failures == 0 ? 0 : 1;
}
