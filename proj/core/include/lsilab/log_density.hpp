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

#ifndef LSILAB_LOG_DENSITY_HPP_
#define LSILAB_LOG_DENSITY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "lsilab/gauss_quadrature.hpp"
#include "lsilab/types.hpp"

namespace lsilab {

// Analytic functional values of a density, used to cross-check quadrature.
struct ClosedForm {
  double mass = 1.0;
  Vec barycenter;
  double entropy = 0.0;
  double fisher = 0.0;
};

// Known bounds on the eigenvalues of D^2 h over all of R^n.
struct HessianEnvelope {
  double min_eig = 0.0;
  double max_eig = 0.0;
};

// A positive function f = exp(-h) on R^dim given by oracles for h, grad h
// and D^2 h. Copies are cheap enough to pass by value; the oracles must be
// pure and reentrant.
class LogDensity {
 public:
  using Potential = std::function<double(const Vec&)>;
  using Gradient = std::function<Vec(const Vec&)>;
  using Hessian = std::function<Mat(const Vec&)>;

  LogDensity(int dim, Potential h, Gradient grad_h, Hessian hess_h, std::string label = {});

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }

  double h(const Vec& x) const { return h_(x); }
  double value(const Vec& x) const { return std::exp(-h_(x)); }
  Vec grad_h(const Vec& x) const { return grad_(x); }
  // Symmetrized Hessian; throws EvaluationError if the oracle's asymmetry
  // exceeds 1e-10 or an entry is not finite.
  Mat hess_h(const Vec& x) const;

  const std::optional<ClosedForm>& closed_form() const { return closed_form_; }
  const std::optional<HessianEnvelope>& envelope() const { return envelope_; }

  LogDensity& set_closed_form(std::optional<ClosedForm> cf) {
    closed_form_ = std::move(cf);
    return *this;
  }
  LogDensity& set_envelope(std::optional<HessianEnvelope> env) {
    envelope_ = env;
    return *this;
  }
  LogDensity& set_label(std::string label) {
    label_ = std::move(label);
    return *this;
  }

 private:
  int dim_;
  Potential h_;
  Gradient grad_;
  Hessian hess_;
  std::string label_;
  std::optional<ClosedForm> closed_form_;
  std::optional<HessianEnvelope> envelope_;
};

// f_a(x) = (2a+1)^{n/2} exp(-a|x|^2); requires a > -1/2.
LogDensity quadratic_family(double a, int dim);

// f(x) = exp(b.x - |b|^2/2); dimension is b.size().
LogDensity log_linear(const Vec& b);

// h(x) = a|x|^2 + amplitude * sum_i cos(frequency x_i) + log Z, with Z fixed
// so that f has unit mass. Requires 2a - |amplitude| frequency^2 > -1.
LogDensity perturbed_quadratic(double a, double amplitude, double frequency, int dim);

// f(x) * exp(b.x - |b|^2/2). Leaves the Hessian unchanged.
LogDensity tilt(const LogDensity& f, const Vec& b);

// c * f, c > 0.
LogDensity scale(const LogDensity& f, double c);

// f / ||f||_{L^1(dgamma)}, with the mass computed once on `rule`.
LogDensity normalize(const LogDensity& f, const QuadratureRule& rule);

struct FamilyParams {
  double epsilon = 1.0;
  double M = 1.0;
  std::optional<double> r;

  // Throws InvalidArgument unless epsilon > 0, M > 0 and r > 1 when present.
  void validate() const;
  double lower_bound() const { return -1.0 + epsilon; }
};

// Sampling domain for Hessian certificates: a scrambled Halton sequence on
// the box [lo, hi]^dim.
struct ProbeSpec {
  double lo = -6.0;
  double hi = 6.0;
  int count = 100000;
  std::uint64_t seed = 0;
};

struct MembershipReport {
  bool is_member = false;
  double min_eig_observed = 0.0;
  double max_eig_observed = 0.0;
  std::optional<double> lr_integral;
  std::optional<Vec> witness_point;
  bool envelope_used = false;
  ProbeSpec probe;
};

inline constexpr double kMembershipTolerance = 1e-9;

// Sampled certificate for f in F(epsilon, M): every sampled eigenvalue of
// D^2 h lies in [-1 + epsilon, M] and, when f carries an analytic envelope,
// so does the envelope. The witness is the sampled point whose eigenvalue
// violates the bounds the most (or comes closest to doing so).
MembershipReport check_membership(const LogDensity& f, const FamilyParams& params,
                                  const ProbeSpec& probe = {});

// Certificate for the L^r family: lr_integral = int ||(D^2 h + Id)_+||^r f dgamma
// on `rule`, member iff lr_integral <= M and the sampled lower bound holds.
MembershipReport check_membership_lr(const LogDensity& f, const FamilyParams& params,
                                     const QuadratureRule& rule, const ProbeSpec& probe = {});

// Spectral positive part norm ||(A)_+|| (operator norm after clamping
// eigenvalues at zero).
double positive_part_norm(const Mat& a);

}  // namespace lsilab

#endif  // LSILAB_LOG_DENSITY_HPP_
