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

#ifndef COMPLEXITY_LAB_LEARNERS_HPP_
#define COMPLEXITY_LAB_LEARNERS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "complexity_lab/core.hpp"
#include "complexity_lab/embeddings.hpp"

namespace clab {

struct ErmOptions {
  // Iteration budget of the first-order solvers (subgradient steps for the
  // certificate, epochs for coordinate descent).
  int max_iterations = 10000;
  // Report the running average instead of the best subgradient iterate.
  bool averaging = false;
  // Relative singular value cutoff of the least-squares pseudoinverse.
  double ridge = 1e-10;
  // Exact 0/1 and margin ERM runs when m <= enumeration_cap and
  // d <= exact_max_dim.
  int enumeration_cap = 16;
  int exact_max_dim = 3;
  // Number of subgradient restarts behind the optimality certificate; the
  // first restart starts at zero, the rest at seeded random points.
  int restarts = 5;
  bool certify = true;
  std::uint64_t seed = 0;
};

struct ErmResult {
  Vector w;
  // Loss of the requested kind at w.
  double empirical_loss = 0.0;
  // Objective actually minimized: the hinge for zero-one/margin/hinge runs,
  // the squared loss otherwise.
  double surrogate_loss = 0.0;
  bool exact = false;
  std::string method;
  // Present when a restart certificate ran: reported surrogate minus the
  // best restart surrogate.
  bool certified = false;
  double certificate_gap = 0.0;
};

// Unweighted ERM over the rows of features (m x d).
ErmResult linear_erm(const Matrix& features, const Vector& labels,
                     const LossSpec& loss, const ErmOptions& opts = {});
// Same with per-row weights summing to one (population objectives).
ErmResult weighted_linear_erm(const Matrix& features, const Vector& labels,
                              const Vector& weights, const LossSpec& loss,
                              const ErmOptions& opts = {});

ErmResult norm_constrained_erm(const Matrix& features, const Vector& labels,
                               double radius, const LossSpec& loss,
                               const ErmOptions& opts = {});
ErmResult weighted_norm_constrained_erm(const Matrix& features,
                                        const Vector& labels,
                                        const Vector& weights, double radius,
                                        const LossSpec& loss,
                                        const ErmOptions& opts = {});

enum class BoundKind { kDimension, kNorm };

// Dimension kind: c_dc * sqrt(d / m). Norm kind: c_mc * R / sqrt(m).
double generalization_bound(BoundKind kind, const LossSpec& loss,
                            double d_or_r, int m);

enum class LearnMode { kLin, kKer, kGLin, kGKer };

std::string_view to_string(LearnMode mode);
LearnMode parse_learn_mode(std::string_view text);
inline bool uses_radius(LearnMode m) {
  return m == LearnMode::kKer || m == LearnMode::kGKer;
}

struct LearningSimSpec {
  LearnMode mode = LearnMode::kLin;
  FiniteHypothesisClass hypotheses;
  DistributionOverX distribution;
  LossSpec loss;
  EmbeddingFamily family;
  int m = 1;
  int trials = 1;
  double radius = 0.0;
  std::uint64_t seed = 0;
  ErmOptions erm;
  // Restrict the simulated targets; empty means every hypothesis.
  IdList targets;
  // Random null-space perturbations used to probe the supremum over the
  // ERM solution set (squared loss only); 0 disables probing.
  int null_space_probes = 0;
};

struct SimulationRow {
  LearnMode mode;
  int m;
  int trial;
  std::string hypothesis_id;
  double empirical_loss;
  // Lin/Ker: population error of the ERM output. gLin/gKer: empirical loss
  // plus the generalization term.
  double population_criterion;
  double bound_term;
  std::uint64_t seed;
  double population_error;
  double sup_probe;  // equals population_error when probing is off
};

struct SimulationSummary {
  IdList hypotheses;
  Vector mean;
  Vector standard_error;
  double max = 0.0;
  bool sup_approximation = false;
};

struct SimulationResult {
  std::vector<SimulationRow> rows;
  SimulationSummary summary;
};

SimulationResult simulate_learning(const LearningSimSpec& spec);

// Largest population loss over random perturbations of w inside the null
// space of the sample design matrix. All perturbed vectors fit the sample
// exactly as well as w does.
double null_space_sup_probe(const Matrix& sample_design,
                            const Matrix& population_design,
                            const Vector& population_targets,
                            const Vector& population_weights, const Vector& w,
                            const LossSpec& loss, int probes,
                            std::uint64_t seed);

}  // namespace clab

#endif  // COMPLEXITY_LAB_LEARNERS_HPP_
