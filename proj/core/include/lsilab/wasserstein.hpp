// Copyright 2026 The lsilab Authors.
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

#ifndef LSILAB_WASSERSTEIN_HPP_
#define LSILAB_WASSERSTEIN_HPP_

#include <vector>

#include "lsilab/gauss_quadrature.hpp"
#include "lsilab/log_density.hpp"
#include "lsilab/transport_1d.hpp"
#include "lsilab/types.hpp"

namespace lsilab {

inline constexpr double kWeightSumTolerance = 1e-12;

// Finitely supported probability measure on R^dim.
class DiscreteMeasure {
 public:
  // Throws InvalidMeasureError on negative weights, weights not summing to 1
  // within kWeightSumTolerance, duplicate points or mismatched dimensions.
  DiscreteMeasure(int dim, std::vector<Vec> points, std::vector<double> weights);

  int dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  const std::vector<Vec>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int dim_;
  std::vector<Vec> points_;
  std::vector<double> weights_;
};

// Weights proportional to w_i f(x_i) on the nodes of `rule`, renormalized.
// Nodes whose normalized weight falls below `prune` are dropped.
DiscreteMeasure discretize(const LogDensity& f, const QuadratureRule& rule, double prune = 1e-15);

struct SinkhornConfig {
  // Final regularization (in units of squared distance).
  double reg_epsilon = 1e-3;
  // Strictly decreasing; stages below the effective final reg are skipped.
  std::vector<double> anneal_schedule = {1.0, 0.5, 0.25, 0.1, 0.05, 0.025, 1e-2, 5e-3, 2.5e-3, 1e-3};
  // Total over all stages and all three transport problems.
  int max_iterations = 200000;
  // L1 marginal violation accepted at the final stage.
  double convergence_tol = 1e-8;
  // Raise the final reg to the squared mass-weighted nearest-neighbour
  // spacing of the supports. Below that scale the entropic plan resolves the
  // discretization rather than the continuum coupling.
  bool resolution_floor = true;

  void validate() const;
};

struct SinkhornResult {
  double w2 = 0.0;
  // Debiased divergence S(mu, nu) - (S(mu, mu) + S(nu, nu)) / 2.
  double divergence = 0.0;
  int iterations = 0;
  double marginal_violation = 0.0;
  double effective_reg = 0.0;
  // (reg, w2 estimate) after each annealing stage.
  std::vector<std::pair<double, double>> stages;
};

// Mass-weighted mean distance from each support point to its nearest
// neighbour.
double mean_nearest_spacing(const DiscreteMeasure& m);

// Debiased entropic estimate of W_2 with squared Euclidean cost, solved in
// the log domain with annealing. Throws ConvergenceError if the final stage
// does not reach `convergence_tol`.
SinkhornResult w2_sinkhorn(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           const SinkhornConfig& config = {});

// W_2 between (2a+1)^{n/2} exp(-a|x|^2) dgamma and dgamma.
double w2_gaussian_rescaled(double a, int n);

// Quantile coupling on the real line. Levels q_k = Phi(z_k) with z_k the
// midpoints of `quantile_count` equal cells of [-kProbitSpan, kProbitSpan],
// weighted by the Gaussian mass of each cell.
inline constexpr double kProbitSpan = 8.5;
double w2_quantile_1d(const CdfTable& mu, const CdfTable& nu, int quantile_count);
double w2_quantile_1d(const CdfTable& mu, const DiscreteMeasure& nu, int quantile_count);
// Two atomic measures are coupled exactly.
double w2_quantile_1d(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace lsilab

#endif  // LSILAB_WASSERSTEIN_HPP_
