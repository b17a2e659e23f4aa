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

#ifndef LSILAB_STABILITY_HPP_
#define LSILAB_STABILITY_HPP_

#include <optional>
#include <vector>

#include "lsilab/gauss_quadrature.hpp"
#include "lsilab/log_density.hpp"
#include "lsilab/slack_record.hpp"
#include "lsilab/transport_1d.hpp"
#include "lsilab/wasserstein.hpp"

namespace lsilab {

struct ConstantsRecord {
  // sqrt(max{1, sqrt(1+M) - 1} / epsilon)
  double C_thm11 = 0.0;
  // sqrt(max{1, sqrt(1+M) - 1} / (c_minorant epsilon)): the bound the proof
  // actually establishes for W_2.
  double C_thm11_chain = 0.0;
  double C_M = 0.0;
  double c_minorant = 0.0;
  double t_star = 0.0;
  double c_thm14 = 0.0;
  std::optional<double> beta;
  // Entropy-deficit constant from the HWI argument with C = C_thm11.
  double C_bar = 0.0;
  double eta_opt = 0.0;
  // C_bar / (2 (C_bar + 1)) < 1/2
  double C_improved = 0.0;
  // Constant of the two-term entropy bound, min over eta of the larger
  // coefficient.
  double C_lemma = 0.0;
};

ConstantsRecord constants(const FamilyParams& params);

// g(t) = t - log(1 + t) on (-1, inf), accurate near 0.
double minorant_g(double t);

// Largest c with g(t) >= c min{t^2, |t|} on (-1, inf).
double minorant_constant();

// Positive root of g(t) = 1.
double t_star();

double beta_exponent(double r);

struct BarConstant {
  double value = 0.0;
  double eta = 0.0;
};

// min over u = eta^2 in (0, 2^{-1/2}) of
//   [sqrt(2) C + (sqrt(2) / (2u) - 1/2) C^2] / (1 - sqrt(2) u / 2).
BarConstant c_bar(double C);

// min over u of the larger of the two coefficients above.
BarConstant lemma_constant(double C);

// W_2 <= thm14_constant * delta^beta for f in the L^r family with unit mass
// and zero barycenter, delta <= 1.
double thm14_constant(double epsilon, double M, double r, int n);

struct Thm11Options {
  Window window;
  int resolution = kDefaultResolution;
  ProbeSpec probe;
  // n >= 2 only.
  int grid_order = 64;
  SinkhornConfig sinkhorn;
  double solver_relative_tol = 0.02;
  double tolerance = 1e-7;
};

// W_2(f^ dgamma, dgamma) <= C_thm11 delta(f/m)^{1/2} with f^ the recentered
// normalized density. Throws PreconditionError unless membership in
// F(epsilon, M) is certified.
SlackRecord verify_thm11(const LogDensity& f, const FamilyParams& params,
                         const QuadratureRule& rule, const Thm11Options& options = {});

// W_2 <= thm14_constant * delta^beta. Throws OutOfRegimeError when
// delta > 1 and PreconditionError unless f has unit mass, zero barycenter
// and certified L^r membership.
SlackRecord verify_thm14(const LogDensity& f, const FamilyParams& params,
                         const QuadratureRule& rule, double w2_value, double tolerance = 1e-7);

struct SharpnessRow {
  double a = 0.0;
  double deficit = 0.0;
  double w2 = 0.0;
  double ratio = 0.0;
};

// Closed forms for f_a: delta = n (a - log(1+2a)/2),
// W_2 = sqrt(n) |1/sqrt(1+2a) - 1|.
std::vector<SharpnessRow> sharpness_sweep(const std::vector<double>& a_values, int n);

// Ent <= W sqrt(I) - W^2 / 2 for unit-mass f.
SlackRecord hwi_check(const LogDensity& f, const QuadratureRule& rule, double w2_value,
                      double tolerance = 1e-9);

// C_lemma (delta^{1/2 + alpha} + delta^{2 alpha}).
double entropy_bound_lemma(double delta, double alpha, double C);

// Ent(f/m) <= C_bar delta(f/m) + |mu|^2 / 2.
SlackRecord verify_cor42(const LogDensity& f, const FamilyParams& params,
                         const QuadratureRule& rule, double tolerance = 1e-9,
                         const ProbeSpec& probe = {});

// Ent(f/m) <= C_improved I(f/m) + (1/2 - C_improved) |mu|^2.
SlackRecord verify_improved_lsi(const LogDensity& f, const FamilyParams& params,
                                const QuadratureRule& rule, double tolerance = 1e-9,
                                const ProbeSpec& probe = {});

}  // namespace lsilab

#endif  // LSILAB_STABILITY_HPP_
