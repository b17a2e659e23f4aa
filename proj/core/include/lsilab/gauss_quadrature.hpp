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

#ifndef LSILAB_GAUSS_QUADRATURE_HPP_
#define LSILAB_GAUSS_QUADRATURE_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lsilab/errors.hpp"
#include "lsilab/types.hpp"

namespace lsilab {

inline constexpr int kMaxHermiteOrder = 512;
inline constexpr int kFunctionalOrder = 64;
inline constexpr int kDeficitOrder = 128;

// Nodes and weights for integration against the standard Gaussian
// probability measure (2 pi)^{-n/2} exp(-|x|^2 / 2) dx.
//
// Weights are positive and sum to one. `order` is the number of 1D nodes;
// the 1D rule is exact for polynomials of degree <= 2 * order - 1.
struct QuadratureRule {
  int dim = 1;
  int order = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

// Probabilists' Gauss-Hermite rule, computed from the Jacobi matrix of the
// orthonormal Hermite polynomials (Golub-Welsch), Newton-polished, with
// Christoffel weights evaluated in scaled arithmetic so that tail weights
// keep their relative accuracy.
QuadratureRule hermite_rule(int order);

// Product rule on R^dim, dim in {1, 2, 3}.
QuadratureRule tensorize(const QuadratureRule& rule, int dim);

inline QuadratureRule gaussian_rule(int order, int dim) {
  return tensorize(hermite_rule(order), dim);
}

// Sum of weight * integrand(node). Throws NonFiniteIntegrand on the first
// node where the integrand is NaN or infinite.
template <typename Integrand>
double integrate(const QuadratureRule& rule, Integrand&& integrand) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = integrand(rule.nodes[i]);
    if (!std::isfinite(v)) throw NonFiniteIntegrand(rule.nodes[i], v);
    sum += rule.weights[i] * v;
  }
  return sum;
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Plain Monte Carlo against the standard Gaussian. Identical seed and count
// reproduce identical estimates bit-for-bit (single stream, fixed order).
class MonteCarloSampler {
 public:
  MonteCarloSampler(std::uint64_t seed, std::int64_t sample_count);

  std::uint64_t seed() const { return seed_; }
  std::int64_t sample_count() const { return sample_count_; }

  template <typename Integrand>
  MonteCarloEstimate estimate(int dim, Integrand&& integrand) const {
    if (dim < 1 || dim > kMaxDim) throw UnsupportedDimension(dim);
    std::mt19937_64 engine(seed_);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec x(dim);
    // Welford running moments.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t k = 0; k < sample_count_; ++k) {
      for (int d = 0; d < dim; ++d) x(d) = gauss(engine);
      const double v = integrand(static_cast<const Vec&>(x));
      if (!std::isfinite(v)) throw NonFiniteIntegrand(x, v);
      const double delta = v - mean;
      mean += delta / static_cast<double>(k + 1);
      m2 += delta * (v - mean);
    }
    const double n = static_cast<double>(sample_count_);
    const double variance = sample_count_ > 1 ? m2 / (n - 1.0) : 0.0;
    return {mean, std::sqrt(variance / n)};
  }

 private:
  std::uint64_t seed_;
  std::int64_t sample_count_;
};

}  // namespace lsilab

#endif  // LSILAB_GAUSS_QUADRATURE_HPP_
