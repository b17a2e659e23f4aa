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

#include "lsilab/transport_1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "lsilab/errors.hpp"
#include "lsilab/functionals.hpp"
#include "lsilab/normal.hpp"

namespace lsilab {
namespace {

using Legendre = boost::math::quadrature::gauss<double, 10>;

constexpr double kTailSpan = 24.0;
constexpr double kTailPanel = 0.5;

struct HermiteSlopes {
  double m0;
  double m1;
};

// Fritsch-Carlson limiter: keeps the cubic monotone on the cell.
HermiteSlopes limit_slopes(double y0, double y1, double m0, double m1, double h) {
  const double secant = (y1 - y0) / h;
  if (secant == 0.0) return {0.0, 0.0};
  const double alpha = m0 / secant;
  const double beta = m1 / secant;
  if (alpha < 0.0 || beta < 0.0) return {secant, secant};
  const double norm2 = alpha * alpha + beta * beta;
  if (norm2 > 9.0) {
    const double tau = 3.0 / std::sqrt(norm2);
    return {tau * alpha * secant, tau * beta * secant};
  }
  return {m0, m1};
}

double hermite(double t, double h, double y0, double y1, double m0, double m1) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * m1;
}

// Density of f dgamma (unnormalized) at x.
double gaussian_weighted(const LogDensity& f, double x) {
  return normal::kInvSqrt2Pi * std::exp(-f.h(scalar_point(x)) - 0.5 * x * x);
}

double panel_integral(const LogDensity& f, double a, double b) {
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / kTailPanel)));
  const double w = (b - a) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    sum += Legendre::integrate([&](double x) { return gaussian_weighted(f, x); }, a + k * w,
                               a + (k + 1) * w);
  }
  return sum;
}

double eval_interp(const std::vector<double>& grid, const std::vector<double>& y,
                   const std::vector<double>& slope, double x) {
  const double h = grid[1] - grid[0];
  const std::size_t n = grid.size();
  const double pos = (x - grid.front()) / h;
  const std::size_t i = std::min(n - 2, static_cast<std::size_t>(std::max(0.0, std::floor(pos))));
  const HermiteSlopes s = limit_slopes(y[i], y[i + 1], slope[i], slope[i + 1], h);
  return hermite((x - grid[i]) / h, h, y[i], y[i + 1], s.m0, s.m1);
}

void check_window(Window window, int resolution) {
  if (!(window.hi > window.lo)) throw InvalidArgument("transport window must have lo < hi");
  if (resolution < 8) throw InvalidArgument("transport resolution must be at least 8");
}

}  // namespace

CdfTable::CdfTable(std::vector<double> grid, std::vector<double> cdf, std::vector<double> sf,
                   std::vector<double> density, double mass)
    : grid_(std::move(grid)),
      cdf_(std::move(cdf)),
      sf_(std::move(sf)),
      density_(std::move(density)),
      mass_(mass) {
  const std::size_t n = grid_.size();
  if (n < 2 || cdf_.size() != n || sf_.size() != n || density_.size() != n) {
    throw InvalidMeasureError("CdfTable: inconsistent table sizes");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(grid_[i + 1] > grid_[i])) throw InvalidMeasureError("CdfTable: grid not increasing");
    if (cdf_[i + 1] < cdf_[i] || sf_[i + 1] > sf_[i]) {
      throw InvalidMeasureError("CdfTable: distribution function not monotone");
    }
  }
  if (!(cdf_.front() >= 0.0) || !(sf_.back() >= 0.0) || cdf_.back() > 1.0 + 1e-12 ||
      !(cdf_.back() > cdf_.front())) {
    throw InvalidMeasureError("CdfTable: degenerate distribution function");
  }
}

double CdfTable::cdf_at(double x) const {
  if (x <= grid_.front()) return cdf_.front();
  if (x >= grid_.back()) return cdf_.back();
  return eval_interp(grid_, cdf_, density_, x);
}

double CdfTable::sf_at(double x) const {
  if (x <= grid_.front()) return sf_.front();
  if (x >= grid_.back()) return sf_.back();
  const double h = step();
  const std::size_t i =
      std::min(grid_.size() - 2, static_cast<std::size_t>((x - grid_.front()) / h));
  const HermiteSlopes s = limit_slopes(sf_[i], sf_[i + 1], -density_[i], -density_[i + 1], h);
  return hermite((x - grid_[i]) / h, h, sf_[i], sf_[i + 1], s.m0, s.m1);
}

double CdfTable::quantile(double q, double q_upper) const {
  const std::size_t n = grid_.size();
  const double h = step();
  std::size_t cell;
  bool lower = q <= 0.5;
  if (lower) {
    if (q <= cdf_.front()) return grid_.front();
    if (q >= cdf_.back()) return grid_.back();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), q);
    cell = static_cast<std::size_t>(it - cdf_.begin()) - 1;
  } else {
    if (q_upper >= sf_.front()) return grid_.front();
    if (q_upper <= sf_.back()) return grid_.back();
    const auto it = std::lower_bound(sf_.begin(), sf_.end(), q_upper, std::greater<double>());
    cell = static_cast<std::size_t>(it - sf_.begin()) - 1;
  }
  cell = std::min(cell, n - 2);
  const double y0 = lower ? cdf_[cell] : sf_[cell];
  const double y1 = lower ? cdf_[cell + 1] : sf_[cell + 1];
  const double d0 = lower ? density_[cell] : -density_[cell];
  const double d1 = lower ? density_[cell + 1] : -density_[cell + 1];
  const HermiteSlopes s = limit_slopes(y0, y1, d0, d1, h);
  const double target = lower ? q : q_upper;
  // Bisection in the cell's local coordinate t in [0, 1].
  double t_lo = 0.0;
  double t_hi = 1.0;
  for (int it = 0; it < 64 && t_hi - t_lo > 1e-17; ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    const double v = hermite(mid, h, y0, y1, s.m0, s.m1);
    const bool below = lower ? v < target : v > target;
    (below ? t_lo : t_hi) = mid;
  }
  return grid_[cell] + 0.5 * (t_lo + t_hi) * h;
}

CdfTable build_cdf_table(const LogDensity& f, Window window, int resolution) {
  if (f.dim() != 1) throw UnsupportedDimension(f.dim());
  check_window(window, resolution);
  const std::size_t n = static_cast<std::size_t>(resolution);
  const double h = (window.hi - window.lo) / static_cast<double>(n - 1);

  std::vector<double> grid(n), raw_density(n), cell(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = i + 1 == n ? window.hi : window.lo + static_cast<double>(i) * h;
    raw_density[i] = gaussian_weighted(f, grid[i]);
    if (!std::isfinite(raw_density[i])) {
      throw NonFiniteIntegrand(scalar_point(grid[i]), raw_density[i]);
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cell[i] = Legendre::integrate([&](double x) { return gaussian_weighted(f, x); }, grid[i],
                                  grid[i + 1]);
  }
  const double left_tail = panel_integral(f, window.lo - kTailSpan, window.lo);
  const double right_tail = panel_integral(f, window.hi, window.hi + kTailSpan);

  std::vector<double> cdf(n), sf(n);
  double acc = left_tail;
  for (std::size_t i = 0; i < n; ++i) {
    cdf[i] = acc;
    if (i + 1 < n) acc += cell[i];
  }
  const double total = acc + right_tail;
  acc = right_tail;
  for (std::size_t i = n; i-- > 0;) {
    if (i + 1 < n) acc += cell[i];
    sf[i] = acc;
  }
  if (!(total > std::numeric_limits<double>::min()) || !std::isfinite(total)) {
    throw DegenerateMass(total);
  }
  const double outside = (left_tail + right_tail) / total;
  if (outside > kMaxOutsideMass) throw WindowCoverageError(outside);

  for (std::size_t i = 0; i < n; ++i) {
    cdf[i] /= total;
    sf[i] /= total;
    raw_density[i] /= total;
  }
  return CdfTable(std::move(grid), std::move(cdf), std::move(sf), std::move(raw_density), total);
}

double TransportMap1D::map_at(double x) const {
  if (x <= grid.front()) return T.front() + T_prime.front() * (x - grid.front());
  if (x >= grid.back()) return T.back() + T_prime.back() * (x - grid.back());
  const double h = step();
  const std::size_t i = std::min(grid.size() - 2, static_cast<std::size_t>((x - grid.front()) / h));
  return hermite((x - grid[i]) / h, h, T[i], T[i + 1], T_prime[i], T_prime[i + 1]);
}

double TransportMap1D::lambda_at(double x) const {
  if (x <= grid.front()) return lambda.front();
  if (x >= grid.back()) return lambda.back();
  const double h = step();
  const std::size_t n = grid.size();
  const std::size_t i = std::min(n - 2, static_cast<std::size_t>((x - grid.front()) / h));
  const double t = (x - grid[i]) / h;
  if (i == 0 || i + 2 >= n) return lambda[i] + t * (lambda[i + 1] - lambda[i]);
  // Catmull-Rom through lambda[i-1..i+2].
  const double m0 = 0.5 * (lambda[i + 1] - lambda[i - 1]);
  const double m1 = 0.5 * (lambda[i + 2] - lambda[i]);
  return hermite(t, 1.0, lambda[i], lambda[i + 1], m0, m1);
}

TransportMap1D brenier_map_1d(const LogDensity& f, Window window, int resolution) {
  TransportMap1D map;
  map.source = build_cdf_table(f, window, resolution);
  const CdfTable& tab = map.source;
  const std::size_t n = tab.grid().size();
  const double h = tab.step();
  map.grid = tab.grid();
  map.T.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = tab.cdf()[i];
    const double s = tab.sf()[i];
    if (c <= 0.0 || s <= 0.0) {
      throw InternalConsistencyError(
          "distribution function underflows inside the transport window; shrink the window");
    }
    map.T[i] = c <= 0.5 ? normal::quantile(c) : normal::upper_quantile(s);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (map.T[i + 1] < map.T[i]) {
      throw InternalConsistencyError("transport map is not monotone at x = " +
                                     std::to_string(map.grid[i]));
    }
  }
  map.T_prime.resize(n);
  map.T_prime[0] = (-3.0 * map.T[0] + 4.0 * map.T[1] - map.T[2]) / (2.0 * h);
  map.T_prime[n - 1] = (3.0 * map.T[n - 1] - 4.0 * map.T[n - 2] + map.T[n - 3]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    map.T_prime[i] = (map.T[i + 1] - map.T[i - 1]) / (2.0 * h);
  }
  map.lambda.resize(n);
  for (std::size_t i = 0; i < n; ++i) map.lambda[i] = map.T_prime[i] - 1.0;

  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = tab.cdf()[i];
    const double d = c <= 0.5 ? std::abs(normal::cdf(map.T[i]) - c)
                              : std::abs(normal::sf(map.T[i]) - tab.sf()[i]);
    err = std::max(err, d);
  }
  map.pushforward_error = err;
  return map;
}

double monge_ampere_residual(const LogDensity& f, const TransportMap1D& map) {
  const double log_mass = std::log(map.source.mass());
  double sup = 0.0;
  for (std::size_t i = 0; i < map.grid.size(); ++i) {
    if (!map.retained(i)) continue;
    const double x = map.grid[i];
    const double tp = map.T_prime[i];
    if (!(tp > 0.0)) {
      throw DegenerateMapError("T' <= 0 at retained grid point x = " + std::to_string(x));
    }
    const double t = map.T[i];
    const double r = -f.h(scalar_point(x)) - log_mass - 0.5 * x * x - std::log(tp) + 0.5 * t * t;
    sup = std::max(sup, std::abs(r));
  }
  return sup;
}

SlackRecord deficit_lower_bound(const LogDensity& f, const TransportMap1D& map,
                                const QuadratureRule& rule, double tolerance) {
  if (f.dim() != 1 || rule.dim != 1) throw UnsupportedDimension(f.dim());
  const FunctionalSet fs = compute_functionals(f, rule);
  const double bound = integrate(rule, [&](const Vec& x) {
                         const double fx = f.value(x);
                         if (fx == 0.0) return 0.0;
                         const double lam = map.lambda_at(x(0));
                         if (!(lam > -1.0)) {
                           throw InvalidEigenvalueError("lambda <= -1 at x = " +
                                                        std::to_string(x(0)));
                         }
                         return fx * (lam - std::log1p(lam));
                       }) /
                       fs.mass;
  const double deficit = fs.deficit / fs.mass;
  return SlackRecord::inequality("deficit_lower_bound", bound, deficit, tolerance)
      .with("mass", fs.mass);
}

EigenvalueBoundCheck eigenvalue_bound_check(const LogDensity& f, const TransportMap1D& map,
                                            double M, double tolerance) {
  (void)f;
  if (!(M > 0.0)) throw InvalidArgument("eigenvalue_bound_check: M must be positive");
  double sup_abs_lambda = 0.0;
  double sup_tp = 0.0;
  double argmax = map.grid.front();
  for (std::size_t i = 0; i < map.grid.size(); ++i) {
    if (!map.retained(i)) continue;
    if (std::abs(map.lambda[i]) > sup_abs_lambda) {
      sup_abs_lambda = std::abs(map.lambda[i]);
      argmax = map.grid[i];
    }
    sup_tp = std::max(sup_tp, map.T_prime[i]);
  }
  const double contraction = std::sqrt(M + 1.0);
  const double c_m = std::max(1.0, contraction - 1.0);
  EigenvalueBoundCheck out{
      SlackRecord::inequality("eigenvalue_bound", sup_abs_lambda, c_m, tolerance),
      SlackRecord::inequality("contraction_bound", sup_tp, contraction, tolerance)};
  out.eigenvalue.with("M", M).with("argmax_x", argmax);
  out.contraction.with("M", M);
  return out;
}

SlackRecord poincare_check(const LogDensity& f, double epsilon, const TestFunction& u,
                           const QuadratureRule& rule, double tolerance,
                           const TestGradient& grad_u) {
  if (!(epsilon > 0.0)) throw InvalidArgument("poincare_check: epsilon must be positive");
  if (rule.dim != f.dim()) throw InvalidArgument("poincare_check: rule dimension mismatch");
  const int dim = f.dim();
  auto gradient = [&](const Vec& x) -> Vec {
    if (grad_u) return grad_u(x);
    constexpr double kStep = 1e-5;
    Vec g(dim);
    for (int d = 0; d < dim; ++d) {
      Vec xp = x, xm = x;
      xp(d) += kStep;
      xm(d) -= kStep;
      g(d) = (u(xp) - u(xm)) / (2.0 * kStep);
    }
    return g;
  };
  const double mass = integrate(rule, [&](const Vec& x) { return f.value(x); });
  if (!(mass > 0.0)) throw DegenerateMass(mass);
  const double mean = integrate(rule, [&](const Vec& x) { return u(x) * f.value(x); }) / mass;
  const double variance = integrate(rule, [&](const Vec& x) {
                            const double d = u(x) - mean;
                            return d * d * f.value(x);
                          }) /
                          mass;
  const double energy =
      integrate(rule, [&](const Vec& x) { return gradient(x).squaredNorm() * f.value(x); }) /
      mass;
  return SlackRecord::inequality("poincare", variance, energy / epsilon, tolerance)
      .with("epsilon", epsilon)
      .with("mean", mean);
}

double w2_from_map(const LogDensity& f, const TransportMap1D& map, const QuadratureRule& rule) {
  if (f.dim() != 1 || rule.dim != 1) throw UnsupportedDimension(f.dim());
  double mass = 0.0;
  double cost = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i](0);
    const double fx = f.value(rule.nodes[i]);
    if (!std::isfinite(fx)) throw NonFiniteIntegrand(rule.nodes[i], fx);
    if (fx == 0.0) continue;
    const double d = map.map_at(x) - x;
    mass += rule.weights[i] * fx;
    cost += rule.weights[i] * fx * d * d;
  }
  if (!(mass > 0.0)) throw DegenerateMass(mass);
  return std::sqrt(cost / mass);
}

void write_map_csv(const TransportMap1D& map, std::ostream& out) {
  out << "x,T,lambda\n";
  char buf[96];
  for (std::size_t i = 0; i < map.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", map.grid[i], map.T[i], map.lambda[i]);
    out << buf;
  }
}

}  // namespace lsilab
