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

#include "lsilab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "lsilab/errors.hpp"
#include "lsilab/functionals.hpp"

namespace lsilab {
namespace {

constexpr double kUnitMassTolerance = 1e-6;
constexpr int kMinorantScanPoints = 200000;
constexpr int kMinorantCheckPoints = 1000000;
constexpr double kMinorantScanEnd = 50.0;

double minorant_ratio(double t) {
  const double at = std::abs(t);
  return minorant_g(t) / std::min(t * t, at);
}

double scan_point(int k, int count) {
  // Uniform in s on (0, 1), mapped onto (-1, kMinorantScanEnd).
  const double s = (k + 0.5) / count;
  return -1.0 + (kMinorantScanEnd + 1.0) * s;
}

double compute_minorant_constant() {
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kMinorantScanPoints; ++k) {
    const double t = scan_point(k, kMinorantScanPoints);
    if (t == 0.0) continue;
    const double v = minorant_ratio(t);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  // The ratio has a kink at its minimizer, so refine by golden section down
  // to a bracket at rounding level instead of a smooth minimizer.
  double lo = scan_point(std::max(best - 1, 0), kMinorantScanPoints);
  double hi = scan_point(std::min(best + 1, kMinorantScanPoints - 1), kMinorantScanPoints);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double a = hi - phi * (hi - lo);
    const double b = lo + phi * (hi - lo);
    if (minorant_ratio(a) < minorant_ratio(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  const double c = std::min({best_value, minorant_ratio(lo), minorant_ratio(hi)});

  for (int k = 0; k < kMinorantCheckPoints; ++k) {
    const double t = scan_point(k, kMinorantCheckPoints);
    const double bound = c * std::min(t * t, std::abs(t));
    if (minorant_g(t) < bound * (1.0 - 1e-13)) {
      throw InternalConsistencyError("minorant constant violated at t = " + std::to_string(t));
    }
  }
  return c;
}

double compute_t_star() {
  std::uintmax_t max_iter = 200;
  const auto root = boost::math::tools::toms748_solve(
      [](double t) { return minorant_g(t) - 1.0; }, 1.0, 10.0,
      boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 1),
      max_iter);
  return 0.5 * (root.first + root.second);
}

constexpr double kUMax = 0.70710678118654752440;  // 2^{-1/2}

double coeff_a(double u, double C) { return M_SQRT2 * C / (1.0 - M_SQRT2 * u / 2.0); }

double coeff_b(double u, double C) {
  return (M_SQRT2 / (2.0 * u) - 0.5) * C * C / (1.0 - M_SQRT2 * u / 2.0);
}

FunctionalSet checked_functionals(const LogDensity& f, const QuadratureRule& rule) {
  if (rule.dim != f.dim()) throw InvalidArgument("rule dimension does not match density");
  return compute_functionals(f, rule);
}

void require_membership(const LogDensity& f, const FamilyParams& params, const ProbeSpec& probe) {
  const MembershipReport rep = check_membership(f, params, probe);
  if (!rep.is_member) {
    std::string where;
    if (rep.witness_point) {
      where = " near x0 = " + std::to_string((*rep.witness_point)(0));
    }
    throw PreconditionError("membership in F(epsilon, M) not certified: eigenvalues in [" +
                            std::to_string(rep.min_eig_observed) + ", " +
                            std::to_string(rep.max_eig_observed) + "]" + where);
  }
}

}  // namespace

double minorant_g(double t) {
  if (!(t > -1.0)) throw InvalidArgument("minorant_g requires t > -1");
  if (std::abs(t) < 1e-2) {
    // t^2/2 - t^3/3 + t^4/4 - ...
    double term = t * t;
    double sum = 0.0;
    for (int k = 2; k < 20; ++k) {
      sum += (k % 2 == 0 ? 1.0 : -1.0) * term / k;
      term *= t;
    }
    return sum;
  }
  return t - std::log1p(t);
}

double minorant_constant() {
  static const double c = compute_minorant_constant();
  return c;
}

double t_star() {
  static const double t = compute_t_star();
  return t;
}

double beta_exponent(double r) {
  if (!(r > 1.0)) throw InvalidArgument("beta_exponent requires r > 1");
  return (r - 1.0) / (2.0 * (2.0 * r - 1.0));
}

BarConstant c_bar(double C) {
  if (!(C > 0.0)) throw InvalidArgument("c_bar requires C > 0");
  const auto objective = [C](double u) { return coeff_a(u, C) + coeff_b(u, C); };
  const auto res = boost::math::tools::brent_find_minima(objective, 1e-12, kUMax * (1.0 - 1e-12),
                                                         std::numeric_limits<double>::digits);
  return {res.second, std::sqrt(res.first)};
}

BarConstant lemma_constant(double C) {
  if (!(C > 0.0)) throw InvalidArgument("lemma_constant requires C > 0");
  // coeff_a increases and coeff_b decreases in u, so the best u balances them.
  const double u_end = kUMax * (1.0 - 1e-15);
  if (coeff_a(u_end, C) <= coeff_b(u_end, C)) {
    return {coeff_b(kUMax, C), std::sqrt(kUMax)};
  }
  std::uintmax_t max_iter = 200;
  const auto root = boost::math::tools::toms748_solve(
      [C](double u) { return coeff_a(u, C) - coeff_b(u, C); }, 1e-12, u_end,
      boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 1),
      max_iter);
  const double u = 0.5 * (root.first + root.second);
  return {std::max(coeff_a(u, C), coeff_b(u, C)), std::sqrt(u)};
}

double thm14_constant(double epsilon, double M, double r, int n) {
  if (!(epsilon > 0.0) || !(M > 0.0) || n < 1) {
    throw InvalidArgument("thm14_constant requires epsilon > 0, M > 0, n >= 1");
  }
  const double theta = 2.0 * beta_exponent(r);
  const double s = 1.0 / theta;
  const double c_rm = std::pow(2.0, 2.0 * r - 1.0) * (M + 1.0);
  const double c_tilde = std::pow(c_rm, (1.0 - theta) / (r * theta)) * 2.0 * (1.0 + t_star());
  const double factor = std::pow(c_tilde * std::pow(static_cast<double>(n), s - 1.0), 1.0 / s);
  return std::sqrt(factor / epsilon);
}

ConstantsRecord constants(const FamilyParams& params) {
  params.validate();
  ConstantsRecord c;
  c.C_M = std::max(1.0, std::sqrt(1.0 + params.M) - 1.0);
  c.C_thm11 = std::sqrt(c.C_M / params.epsilon);
  c.c_minorant = minorant_constant();
  c.C_thm11_chain = std::sqrt(c.C_M / (c.c_minorant * params.epsilon));
  c.t_star = t_star();
  c.c_thm14 = 1.0 / (2.0 * (1.0 + c.t_star));
  if (params.r) c.beta = beta_exponent(*params.r);
  const BarConstant bar = c_bar(c.C_thm11);
  c.C_bar = bar.value;
  c.eta_opt = bar.eta;
  c.C_improved = c.C_bar / (2.0 * (c.C_bar + 1.0));
  c.C_lemma = lemma_constant(c.C_thm11).value;
  return c;
}

SlackRecord verify_thm11(const LogDensity& f, const FamilyParams& params,
                         const QuadratureRule& rule, const Thm11Options& options) {
  params.validate();
  require_membership(f, params, options.probe);
  const FunctionalSet fs = checked_functionals(f, rule);
  const double delta = fs.deficit / fs.mass;
  const ConstantsRecord k = constants(params);
  const LogDensity fhat = recenter(f, fs);
  const double rhs = k.C_thm11 * std::sqrt(std::max(delta, 0.0));

  if (f.dim() == 1) {
    const TransportMap1D map = brenier_map_1d(fhat, options.window, options.resolution);
    const double w2 = w2_from_map(fhat, map, rule);
    return SlackRecord::inequality("thm11", w2, rhs, options.tolerance)
        .with("epsilon", params.epsilon)
        .with("M", params.M)
        .with("C", k.C_thm11)
        .with("delta", delta)
        .with("pushforward_error", map.pushforward_error);
  }
  const QuadratureRule grid = gaussian_rule(options.grid_order, f.dim());
  const DiscreteMeasure mu = discretize(fhat, grid);
  const DiscreteMeasure nu = discretize(quadratic_family(0.0, f.dim()), grid);
  const SinkhornResult sk = w2_sinkhorn(mu, nu, options.sinkhorn);
  return SlackRecord::inequality("thm11", sk.w2, rhs,
                                 options.tolerance + options.solver_relative_tol * sk.w2)
      .with("epsilon", params.epsilon)
      .with("M", params.M)
      .with("C", k.C_thm11)
      .with("delta", delta)
      .with("marginal_violation", sk.marginal_violation)
      .with("effective_reg", sk.effective_reg)
      .with("iterations", sk.iterations);
}

SlackRecord verify_thm14(const LogDensity& f, const FamilyParams& params,
                         const QuadratureRule& rule, double w2_value, double tolerance) {
  params.validate();
  if (!params.r) throw InvalidArgument("verify_thm14 requires r");
  const FunctionalSet fs = checked_functionals(f, rule);
  if (std::abs(fs.mass - 1.0) > kUnitMassTolerance ||
      fs.barycenter.norm() > kUnitMassTolerance) {
    throw PreconditionError("verify_thm14 requires unit mass and zero barycenter");
  }
  if (fs.deficit > 1.0) {
    throw OutOfRegimeError("deficit " + std::to_string(fs.deficit) + " exceeds 1");
  }
  const MembershipReport rep = check_membership_lr(f, params, rule);
  if (!rep.is_member) throw PreconditionError("L^r membership not certified");
  const double beta = beta_exponent(*params.r);
  const double k = thm14_constant(params.epsilon, params.M, *params.r, f.dim());
  const double rhs = k * std::pow(std::max(fs.deficit, 0.0), beta);
  SlackRecord out = SlackRecord::inequality("thm14", w2_value, rhs, tolerance);
  out.with("epsilon", params.epsilon)
      .with("M", params.M)
      .with("r", *params.r)
      .with("beta", beta)
      .with("C", k)
      .with("delta", fs.deficit);
  if (rep.lr_integral) out.with("lr_integral", *rep.lr_integral);
  return out;
}

std::vector<SharpnessRow> sharpness_sweep(const std::vector<double>& a_values, int n) {
  if (n < 1) throw InvalidArgument("sharpness_sweep requires n >= 1");
  std::vector<SharpnessRow> rows;
  rows.reserve(a_values.size());
  for (double a : a_values) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("sharpness_sweep requires a > 0");
    SharpnessRow row;
    row.a = a;
    row.deficit = 0.5 * n * minorant_g(2.0 * a);
    row.w2 = w2_gaussian_rescaled(a, n);
    row.ratio = std::sqrt(row.deficit) / row.w2;
    rows.push_back(row);
  }
  return rows;
}

SlackRecord hwi_check(const LogDensity& f, const QuadratureRule& rule, double w2_value,
                      double tolerance) {
  const FunctionalSet fs = checked_functionals(f, rule);
  if (std::abs(fs.mass - 1.0) > kUnitMassTolerance) {
    throw PreconditionError("hwi_check requires unit mass, got " + std::to_string(fs.mass));
  }
  const double rhs = w2_value * std::sqrt(fs.fisher) - 0.5 * w2_value * w2_value;
  return SlackRecord::inequality("hwi", fs.entropy, rhs, tolerance)
      .with("W2", w2_value)
      .with("fisher", fs.fisher);
}

double entropy_bound_lemma(double delta, double alpha, double C) {
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw InvalidArgument("entropy_bound_lemma requires alpha in (0, 1/2]");
  }
  if (!(delta >= 0.0)) throw InvalidArgument("entropy_bound_lemma requires delta >= 0");
  if (delta == 0.0) return 0.0;
  const double k = lemma_constant(C).value;
  return k * (std::pow(delta, 0.5 + alpha) + std::pow(delta, 2.0 * alpha));
}

SlackRecord verify_cor42(const LogDensity& f, const FamilyParams& params,
                         const QuadratureRule& rule, double tolerance, const ProbeSpec& probe) {
  params.validate();
  require_membership(f, params, probe);
  const FunctionalSet fs = checked_functionals(f, rule);
  const ConstantsRecord k = constants(params);
  const double ent = fs.entropy / fs.mass;
  const double delta = fs.deficit / fs.mass;
  const double mu2 = fs.barycenter.squaredNorm();
  return SlackRecord::inequality("cor42", ent, k.C_bar * delta + 0.5 * mu2, tolerance)
      .with("C_bar", k.C_bar)
      .with("delta", delta)
      .with("barycenter_sq", mu2);
}

SlackRecord verify_improved_lsi(const LogDensity& f, const FamilyParams& params,
                                const QuadratureRule& rule, double tolerance,
                                const ProbeSpec& probe) {
  params.validate();
  require_membership(f, params, probe);
  const FunctionalSet fs = checked_functionals(f, rule);
  const ConstantsRecord k = constants(params);
  if (!(k.C_improved < 0.5)) {
    throw InternalConsistencyError("improved log-Sobolev constant is not below 1/2");
  }
  const double ent = fs.entropy / fs.mass;
  const double fisher = fs.fisher / fs.mass;
  const double mu2 = fs.barycenter.squaredNorm();
  return SlackRecord::inequality("improved_lsi", ent,
                                 k.C_improved * fisher + (0.5 - k.C_improved) * mu2, tolerance)
      .with("C_improved", k.C_improved)
      .with("barycenter_sq", mu2);
}

}  // namespace lsilab
