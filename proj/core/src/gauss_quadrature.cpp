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

#include "lsilab/gauss_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace lsilab {
namespace {

// Orthonormal probabilists' Hermite polynomials p_k, k < n, at x:
//   x p_k = sqrt(k+1) p_{k+1} + sqrt(k) p_{k-1}.
// Returns log(sum_k p_k(x)^2) and the Newton ratio p_n(x) / p_n'(x), using
// p_n' = sqrt(n) p_{n-1}. Values are rescaled on the fly so large |x| does
// not overflow.
struct HermiteEval {
  double log_sum_sq;
  double newton_ratio;
};

HermiteEval evaluate_orthonormal(int n, double x) {
  constexpr double kBig = 1e150;
  double prev = 0.0;   // p_{k-1}
  double cur = 1.0;    // p_k
  double sum_sq = 1.0;
  double log_scale = 0.0;  // true value = stored * exp(log_scale)
  for (int k = 0; k + 1 < n; ++k) {
    const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                        std::sqrt(static_cast<double>(k + 1));
    prev = cur;
    cur = next;
    sum_sq += cur * cur;
    if (std::abs(cur) > kBig) {
      prev /= kBig;
      cur /= kBig;
      sum_sq /= kBig * kBig;
      log_scale += std::log(kBig);
    }
  }
  // cur = p_{n-1}; one more step gives p_n.
  const double pn = (x * cur - std::sqrt(static_cast<double>(n - 1)) * prev) /
                    std::sqrt(static_cast<double>(n));
  return {std::log(sum_sq) + 2.0 * log_scale,
          pn / (std::sqrt(static_cast<double>(n)) * cur)};
}

}  // namespace

QuadratureRule hermite_rule(int order) {
  if (order < 1 || order > kMaxHermiteOrder) {
    throw InvalidArgument("hermite_rule: order " + std::to_string(order) +
                          " outside [1, " + std::to_string(kMaxHermiteOrder) + "]");
  }
  std::vector<double> x(order, 0.0);
  if (order > 1) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order - 1);
    for (int k = 0; k + 1 < order; ++k) sub(k) = std::sqrt(static_cast<double>(k + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    for (int i = 0; i < order; ++i) x[i] = eig.eigenvalues()(i);
  }

  std::vector<double> log_w(order);
  for (int i = 0; i < order; ++i) {
    if (order > 1) {
      for (int it = 0; it < 3; ++it) {
        const double step = evaluate_orthonormal(order, x[i]).newton_ratio;
        if (!std::isfinite(step)) break;
        x[i] -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x[i]))) break;
      }
    }
    log_w[i] = -evaluate_orthonormal(order, x[i]).log_sum_sq;
  }
  std::sort(x.begin(), x.end());
  // The rule is symmetric; enforce it exactly.
  for (int i = 0; i < order / 2; ++i) {
    const double m = 0.5 * (x[order - 1 - i] - x[i]);
    x[i] = -m;
    x[order - 1 - i] = m;
  }
  if (order % 2 == 1) x[order / 2] = 0.0;
  for (int i = 0; i < order; ++i) log_w[i] = -evaluate_orthonormal(order, x[i]).log_sum_sq;

  QuadratureRule rule;
  rule.dim = 1;
  rule.order = order;
  rule.nodes.reserve(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    rule.nodes.push_back(scalar_point(x[i]));
    rule.weights[i] = std::exp(log_w[i]);
  }
  // Sum small weights first.
  std::vector<double> sorted = rule.weights;
  std::sort(sorted.begin(), sorted.end());
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  for (double& w : rule.weights) w /= total;
  return rule;
}

QuadratureRule tensorize(const QuadratureRule& rule, int dim) {
  if (rule.dim != 1) throw InvalidArgument("tensorize: input rule must be one-dimensional");
  if (dim < 1 || dim > kMaxDim) throw UnsupportedDimension(dim);
  if (dim == 1) return rule;

  const std::size_t n = rule.size();
  std::size_t count = 1;
  for (int d = 0; d < dim; ++d) count *= n;

  QuadratureRule out;
  out.dim = dim;
  out.order = rule.order;
  out.nodes.reserve(count);
  out.weights.reserve(count);
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t k = 0; k < count; ++k) {
    Vec p(dim);
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      p(d) = rule.nodes[idx[d]](0);
      w *= rule.weights[idx[d]];
    }
    out.nodes.push_back(p);
    out.weights.push_back(w);
    for (int d = dim - 1; d >= 0; --d) {
      if (++idx[d] < n) break;
      idx[d] = 0;
    }
  }
  return out;
}

MonteCarloSampler::MonteCarloSampler(std::uint64_t seed, std::int64_t sample_count)
    : seed_(seed), sample_count_(sample_count) {
  if (sample_count <= 0) throw InvalidArgument("MonteCarloSampler: sample_count must be positive");
}

}  // namespace lsilab
