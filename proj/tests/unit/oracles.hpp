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

// Independent reference implementations used only by the tests. None of
// them call the library code they are compared against.

#ifndef COMPLEXITY_LAB_TESTS_ORACLES_HPP_
#define COMPLEXITY_LAB_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Cyclic Jacobi rotations; slow but unrelated to the library's solver.
inline std::vector<double> jacobi_eigenvalues(Mat a) {
  const int n = static_cast<int>(a.rows());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline double jacobi_min_eigenvalue(const Mat& a) { return jacobi_eigenvalues(a).front(); }

// D-weighted Gram matrix by explicit triple loop.
inline Mat gram(const Mat& values, const Vec& d) {
  const int n = static_cast<int>(values.rows());
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int x = 0; x < values.cols(); ++x) s += d[x] * values(i, x) * values(j, x);
      g(i, j) = s;
    }
  return g;
}

inline std::vector<int> members(std::uint32_t mask, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1U) out.push_back(i);
  return out;
}

inline Mat sub(const Mat& g, const std::vector<int>& idx) {
  Mat s(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = g(idx[i], idx[j]);
  return s;
}

// Largest t such that some t-subset has all |G_ij| <= 1/(2t), over every
// subset of the rows.
inline int brute_sq_dim(const Mat& g) {
  const int n = static_cast<int>(g.rows());
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    const auto idx = members(mask, n);
    const int t = static_cast<int>(idx.size());
    if (t <= best) continue;
    bool ok = true;
    for (int i = 0; i < t && ok; ++i)
      for (int j = i + 1; j < t && ok; ++j)
        if (std::abs(g(idx[i], idx[j])) > 1.0 / (2.0 * t) + 1e-12) ok = false;
    if (ok) best = t;
  }
  return best;
}

inline int brute_min_ev_dim(const Mat& g, double lambda) {
  const int n = static_cast<int>(g.rows());
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    const auto idx = members(mask, n);
    if (static_cast<int>(idx.size()) <= best) continue;
    if (jacobi_min_eigenvalue(sub(g, idx)) >= lambda - 1e-9) best = static_cast<int>(idx.size());
  }
  return best;
}

// Largest shattered point set by trying every subset of columns.
inline int brute_vc(const Mat& signs) {
  const int nx = static_cast<int>(signs.cols());
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1U << nx); ++mask) {
    const auto idx = members(mask, nx);
    const int k = static_cast<int>(idx.size());
    if (k <= best || k > 20) continue;
    std::vector<char> seen(1U << k, 0);
    int distinct = 0;
    for (int h = 0; h < signs.rows(); ++h) {
      std::uint32_t pattern = 0;
      for (int i = 0; i < k; ++i)
        if (signs(h, idx[i]) > 0) pattern |= 1U << i;
      if (!seen[pattern]) {
        seen[pattern] = 1;
        ++distinct;
      }
    }
    if (distinct == (1 << k)) best = k;
  }
  return best;
}

// Half the hypothesis-averaged squared residual of projecting each row of
// the weighted matrix onto the row space of basis (r x |X|).
inline double projection_error(const Mat& weighted, const Mat& basis) {
  const Mat q = basis.transpose().householderQr().householderQ() *
                Mat::Identity(basis.cols(), basis.rows());
  const Mat residual = weighted - weighted * q * q.transpose();
  return 0.5 * residual.squaredNorm() / weighted.rows();
}

inline double binary_entropy(double q) {
  if (q <= 0.0 || q >= 1.0) return 0.0;
  return -(q * std::log(q) + (1 - q) * std::log(1 - q)) / std::log(2.0);
}

}  // namespace oracle

#endif  // COMPLEXITY_LAB_TESTS_ORACLES_HPP_
