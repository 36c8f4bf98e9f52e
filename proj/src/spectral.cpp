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

#include "complexity_lab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace clab {
namespace {

IdList ids_of(const FiniteHypothesisClass& h, const std::vector<int>& rows) {
  IdList out;
  out.reserve(rows.size());
  for (int r : rows) out.push_back(h.hypotheses()[r]);
  return out;
}

Matrix principal(const Matrix& g, const std::vector<int>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = g(rows[i], rows[j]);
  }
  return sub;
}

// Largest clique in the graph given by the "compatible" predicate, asking
// only whether a clique of exactly the requested size exists. Vertices are
// visited in increasing order, so the witness is the lexicographically
// first clique.
class CliqueSearch {
 public:
  CliqueSearch(int n, std::function<bool(int, int)> compatible) : n_(n) {
    adj_.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        adj_[i][j] = (i != j && compatible(i, j)) ? 1 : 0;
      }
    }
  }

  bool find(int size, std::vector<int>* witness) {
    target_ = size;
    current_.clear();
    std::vector<int> all(n_);
    for (int i = 0; i < n_; ++i) all[i] = i;
    if (extend(all)) {
      *witness = current_;
      return true;
    }
    return false;
  }

 private:
  bool extend(const std::vector<int>& candidates) {
    if (static_cast<int>(current_.size()) == target_) return true;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (current_.size() + (candidates.size() - k) <
          static_cast<std::size_t>(target_)) {
        return false;
      }
      const int v = candidates[k];
      std::vector<int> next;
      for (std::size_t l = k + 1; l < candidates.size(); ++l) {
        if (adj_[v][candidates[l]]) next.push_back(candidates[l]);
      }
      current_.push_back(v);
      if (extend(next)) return true;
      current_.pop_back();
    }
    return false;
  }

  int n_;
  int target_ = 0;
  std::vector<std::vector<char>> adj_;
  std::vector<int> current_;
};

double sq_threshold(const SqDimOptions& options, int t) {
  return options.gamma ? *options.gamma : 1.0 / (2.0 * t);
}

bool sq_compatible(const Matrix& g, const SqDimOptions& options, int i, int j,
                   double threshold) {
  const double v = options.signed_bound ? g(i, j) : std::abs(g(i, j));
  // A sliver of slack keeps exact zeros and exact thresholds on the right
  // side of the comparison after rounding.
  return v <= threshold + 1e-12;
}

DimResult sq_exact(const NormalizedClass& h, const Matrix& g,
                   const SqDimOptions& options) {
  const int n = h.size();
  DimResult result;
  for (int t = n; t >= 1; --t) {
    const double threshold = sq_threshold(options, t);
    CliqueSearch search(n, [&](int i, int j) {
      return sq_compatible(g, options, i, j, threshold);
    });
    std::vector<int> witness;
    if (search.find(t, &witness)) {
      result.value = t;
      result.witness = witness;
      break;
    }
  }
  result.witness_ids = ids_of(h.hypotheses(), result.witness);
  return result;
}

DimResult sq_greedy(const NormalizedClass& h, const Matrix& g,
                    const SqDimOptions& options) {
  const int n = h.size();
  std::vector<int> chosen;
  std::vector<char> used(n, 0);
  while (true) {
    const int t = static_cast<int>(chosen.size()) + 1;
    const double threshold = sq_threshold(options, t);
    int best = -1;
    double best_score = 0.0;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool ok = true;
      double score = 0.0;
      // Existing pairs must also survive the tighter threshold.
      for (std::size_t a = 0; a < chosen.size() && ok; ++a) {
        ok = sq_compatible(g, options, chosen[a], c, threshold);
        score = std::max(score, std::abs(g(chosen[a], c)));
        for (std::size_t b = a + 1; b < chosen.size() && ok; ++b) {
          ok = sq_compatible(g, options, chosen[a], chosen[b], threshold);
        }
      }
      if (ok && (best < 0 || score < best_score)) {
        best = c;
        best_score = score;
      }
    }
    if (best < 0) break;
    chosen.push_back(best);
    used[best] = 1;
  }
  std::sort(chosen.begin(), chosen.end());
  DimResult result;
  result.value = static_cast<int>(chosen.size());
  result.witness = chosen;
  result.witness_ids = ids_of(h.hypotheses(), chosen);
  result.exact = false;
  return result;
}

void check_mode(const DimSearchMode& mode) {
  if (mode.exact_cap < 1) throw ConfigError("exact_cap must be at least 1");
}

bool ev_feasible(const Matrix& g, const std::vector<int>& rows,
                 double lambda) {
  return min_eigenvalue(principal(g, rows)) >= lambda - kTolerance;
}

// Depth-first search over index-increasing subsets. Only feasible sets are
// extended: by interlacing every superset of an infeasible set is
// infeasible, and candidates that fail next to the current set are dropped
// for the whole subtree.
class MinEvSearch {
 public:
  MinEvSearch(const Matrix& g, double lambda, int upper)
      : g_(g), lambda_(lambda), upper_(upper) {}

  std::vector<int> run() {
    std::vector<int> candidates;
    for (int i = 0; i < g_.rows(); ++i) {
      if (ev_feasible(g_, {i}, lambda_)) candidates.push_back(i);
    }
    std::vector<int> current;
    descend(&current, candidates);
    return best_;
  }

 private:
  void descend(std::vector<int>* current, const std::vector<int>& candidates) {
    if (current->size() > best_.size()) best_ = *current;
    if (static_cast<int>(best_.size()) >= upper_) return;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (current->size() + (candidates.size() - k) <= best_.size()) return;
      current->push_back(candidates[k]);
      std::vector<int> next;
      for (std::size_t l = k + 1; l < candidates.size(); ++l) {
        current->push_back(candidates[l]);
        if (ev_feasible(g_, *current, lambda_)) next.push_back(candidates[l]);
        current->pop_back();
      }
      descend(current, next);
      current->pop_back();
      if (static_cast<int>(best_.size()) >= upper_) return;
    }
  }

  const Matrix& g_;
  double lambda_;
  int upper_;
  std::vector<int> best_;
};

}  // namespace

GramMatrix::GramMatrix(Matrix g, IdList subset, DistributionOverX d)
    : g_(std::move(g)), subset_(std::move(subset)), dist_(std::move(d)) {
  if (g_.rows() != g_.cols() ||
      g_.rows() != static_cast<Eigen::Index>(subset_.size())) {
    throw InputError("Gram matrix must be square and match its subset");
  }
  if (g_.rows() == 0) throw InputError("Gram matrix over an empty subset");
  if ((g_ - g_.transpose()).cwiseAbs().maxCoeff() > kTolerance) {
    throw InputError("Gram matrix is not symmetric");
  }
  if (min_eigenvalue() < -kPsdTolerance) {
    throw InputError("Gram matrix is not positive semidefinite");
  }
}

double GramMatrix::min_eigenvalue() const { return clab::min_eigenvalue(g_); }

WeightedClassMatrix::WeightedClassMatrix(const FiniteHypothesisClass& h,
                                         const DistributionOverX& d) {
  d.check_aligned(h);
  const Vector root = d.probabilities().array().sqrt().matrix();
  m_ = h.values() * root.asDiagonal();
  Eigen::BDCSVD<Eigen::MatrixXd> svd{Eigen::MatrixXd(m_)};
  sigma_ = svd.singularValues();
}

double min_eigenvalue(const Matrix& symmetric) {
  if (symmetric.rows() == 1) return symmetric(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      Eigen::MatrixXd(symmetric), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()[0];
}

Matrix raw_gram(const FiniteHypothesisClass& h, const DistributionOverX& d) {
  d.check_aligned(h);
  const Matrix& v = h.values();
  Matrix g = v * d.probabilities().asDiagonal() * v.transpose();
  // Symmetrize explicitly so that downstream solvers see an exactly
  // symmetric input.
  return 0.5 * (g + g.transpose());
}

GramMatrix gram_matrix(const NormalizedClass& h, const IdList& subset) {
  return gram_matrix(h, h.hypotheses().hypothesis_indices(subset));
}

GramMatrix gram_matrix(const NormalizedClass& h,
                       const std::vector<int>& subset) {
  if (subset.empty()) throw InputError("Gram matrix needs a nonempty subset");
  const NormalizedClass sub = h.select(subset);
  return GramMatrix(raw_gram(sub.hypotheses(), sub.distribution()),
                    ids_of(h.hypotheses(), subset), h.distribution());
}

double gershgorin_bound(const Matrix& g) {
  double bound = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    const double radius = g.row(i).cwiseAbs().sum() - std::abs(g(i, i));
    const double lower = g(i, i) - radius;
    bound = (i == 0) ? lower : std::min(bound, lower);
  }
  return bound;
}

double gershgorin_bound(const GramMatrix& g) {
  return gershgorin_bound(g.matrix());
}

DimResult sq_dimension(const NormalizedClass& h, const DimSearchMode& mode,
                       const SqDimOptions& options) {
  check_mode(mode);
  if (options.gamma && !(*options.gamma > 0.0)) {
    throw InputError("gamma must be positive");
  }
  const Matrix g = raw_gram(h.hypotheses(), h.distribution());
  if (mode.mode == SearchMode::kExact && h.size() <= mode.exact_cap) {
    return sq_exact(h, g, options);
  }
  return sq_greedy(h, g, options);
}

DimResult min_ev_dimension(const NormalizedClass& h, double lambda,
                           const DimSearchMode& mode) {
  check_mode(mode);
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InputError("lambda must lie in (0, 1], got " +
                     std::to_string(lambda));
  }
  const Matrix g = raw_gram(h.hypotheses(), h.distribution());
  const int n = h.size();
  DimResult result;
  if (mode.mode == SearchMode::kExact && n <= mode.exact_cap) {
    // A positive smallest eigenvalue needs linearly independent rows, so
    // no feasible subset is larger than the number of points.
    const int upper = std::min(n, h.hypotheses().num_points());
    result.witness = MinEvSearch(g, lambda, upper).run();
  } else {
    std::vector<char> used(n, 0);
    while (true) {
      int best = -1;
      double best_value = 0.0;
      for (int c = 0; c < n; ++c) {
        if (used[c]) continue;
        std::vector<int> trial = result.witness;
        trial.push_back(c);
        const double value = min_eigenvalue(principal(g, trial));
        if (value >= lambda - kTolerance && (best < 0 || value > best_value)) {
          best = c;
          best_value = value;
        }
      }
      if (best < 0) break;
      used[best] = 1;
      result.witness.push_back(best);
    }
    std::sort(result.witness.begin(), result.witness.end());
    result.exact = false;
  }
  result.value = static_cast<int>(result.witness.size());
  result.witness_ids = ids_of(h.hypotheses(), result.witness);
  return result;
}

double avg_rank_error_oracle(const FiniteHypothesisClass& h,
                             const DistributionOverX& d, int rank) {
  const int limit = std::min(h.num_hypotheses(), h.num_points());
  if (rank < 0 || rank > limit) {
    throw InputError("rank " + std::to_string(rank) + " outside [0, " +
                     std::to_string(limit) + "]");
  }
  const Vector sigma = WeightedClassMatrix(h, d).singular_values();
  double tail = 0.0;
  // Smallest singular values first so the sum is as accurate as possible.
  for (Eigen::Index i = sigma.size() - 1; i >= rank; --i) {
    tail += sigma[i] * sigma[i];
  }
  return 0.5 * tail / h.num_hypotheses();
}

double avg_rank_error_oracle(const NormalizedClass& h, int d) {
  return avg_rank_error_oracle(h.hypotheses(), h.distribution(), d);
}

}  // namespace clab
