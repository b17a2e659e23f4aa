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

#ifndef LSILAB_TRANSPORT_1D_HPP_
#define LSILAB_TRANSPORT_1D_HPP_

#include <functional>
#include <iosfwd>
#include <vector>

#include "lsilab/gauss_quadrature.hpp"
#include "lsilab/log_density.hpp"
#include "lsilab/slack_record.hpp"

namespace lsilab {

struct Window {
  double lo = -8.0;
  double hi = 8.0;
};

inline constexpr int kDefaultResolution = 4096;
// Grid points where the normalized density of f dgamma falls below this are
// excluded from sup-norm checks.
inline constexpr double kRetainedDensity = 1e-12;
inline constexpr double kMaxOutsideMass = 1e-10;

// Distribution function of f dgamma (normalized to a probability measure)
// sampled on a uniform grid. Both the lower (cdf) and upper (sf) tails are
// stored so that either end keeps full relative precision. Between grid
// points the table is a monotone cubic Hermite interpolant whose slopes are
// the exact density.
class CdfTable {
 public:
  CdfTable() = default;
  CdfTable(std::vector<double> grid, std::vector<double> cdf, std::vector<double> sf,
           std::vector<double> density, double mass);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& cdf() const { return cdf_; }
  const std::vector<double>& sf() const { return sf_; }
  // Normalized density of the measure at the grid points.
  const std::vector<double>& density() const { return density_; }
  // Unnormalized mass of f dgamma.
  double mass() const { return mass_; }
  double step() const { return grid_[1] - grid_[0]; }

  double cdf_at(double x) const;
  double sf_at(double x) const;
  // Smallest x with cdf(x) >= q. `q_upper` must equal 1 - q; it is passed
  // separately so upper quantiles do not lose precision. Levels beyond the
  // table's end values clamp to the window.
  double quantile(double q, double q_upper) const;

 private:
  std::vector<double> grid_;
  std::vector<double> cdf_;
  std::vector<double> sf_;
  std::vector<double> density_;
  double mass_ = 1.0;
};

// Tabulates the distribution of f dgamma on `window`. Mass beyond the window
// is integrated separately; throws WindowCoverageError if it exceeds
// kMaxOutsideMass (relative to the total).
CdfTable build_cdf_table(const LogDensity& f, Window window, int resolution = kDefaultResolution);

// The monotone map T = F_gamma^{-1} o F_{f dgamma} sampled on a grid, with
// T' from centered differences (second-order one-sided at the ends) and the
// displacement eigenvalue lambda = T' - 1.
struct TransportMap1D {
  std::vector<double> grid;
  std::vector<double> T;
  std::vector<double> T_prime;
  std::vector<double> lambda;
  CdfTable source;
  double pushforward_error = 0.0;

  double step() const { return grid[1] - grid[0]; }
  // Cubic Hermite interpolation of T; linear extrapolation outside the grid.
  double map_at(double x) const;
  // Cubic interpolation of lambda; constant extrapolation outside the grid.
  double lambda_at(double x) const;
  bool retained(std::size_t i) const { return source.density()[i] >= kRetainedDensity; }
};

// Brenier map pushing f dgamma forward to dgamma. f should have unit mass
// (within 1e-6); the map is built for f / m.
TransportMap1D brenier_map_1d(const LogDensity& f, Window window = {},
                              int resolution = kDefaultResolution);

// sup over retained grid points of
//   |log f(x) - log m - x^2/2 - log T'(x) + T(x)^2/2|.
double monge_ampere_residual(const LogDensity& f, const TransportMap1D& map);

// delta(f) >= int f (lambda - log(1 + lambda)) dgamma.
SlackRecord deficit_lower_bound(const LogDensity& f, const TransportMap1D& map,
                                const QuadratureRule& rule, double tolerance = 1e-7);

struct EigenvalueBoundCheck {
  // sup |lambda| <= max{1, sqrt(M+1) - 1}
  SlackRecord eigenvalue;
  // sup T' <= sqrt(M+1)
  SlackRecord contraction;
  bool pass() const { return eigenvalue.pass && contraction.pass; }
};

EigenvalueBoundCheck eigenvalue_bound_check(const LogDensity& f, const TransportMap1D& map,
                                            double M, double tolerance = 1e-8);

using TestFunction = std::function<double(const Vec&)>;
using TestGradient = std::function<Vec(const Vec&)>;

// Var_mu(u) <= (1/epsilon) int |grad u|^2 dmu with mu = f dgamma / m. When
// `grad_u` is empty the gradient is taken by central differences.
SlackRecord poincare_check(const LogDensity& f, double epsilon, const TestFunction& u,
                           const QuadratureRule& rule, double tolerance = 1e-7,
                           const TestGradient& grad_u = {});

// W_2(f dgamma / m, dgamma) = (int |T(x) - x|^2 f dgamma / m)^{1/2}.
double w2_from_map(const LogDensity& f, const TransportMap1D& map, const QuadratureRule& rule);

// CSV with header "x,T,lambda", one row per grid point, 17 significant digits.
void write_map_csv(const TransportMap1D& map, std::ostream& out);

}  // namespace lsilab

#endif  // LSILAB_TRANSPORT_1D_HPP_
