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

#ifndef LSILAB_FUNCTIONALS_HPP_
#define LSILAB_FUNCTIONALS_HPP_

#include <array>

#include "lsilab/gauss_quadrature.hpp"
#include "lsilab/log_density.hpp"
#include "lsilab/slack_record.hpp"

namespace lsilab {

// Gaussian log-Sobolev functionals of one density f = exp(-h):
//   mass       m   = int f dgamma
//   barycenter mu  = (1/m) int x f dgamma
//   entropy    Ent = int f log f dgamma - m log m
//   fisher     I   = int |grad f|^2 / f dgamma = int |grad h|^2 f dgamma
//   deficit    delta = I/2 - Ent
struct FunctionalSet {
  double mass = 0.0;
  Vec barycenter;
  double entropy = 0.0;
  double fisher = 0.0;
  double deficit = 0.0;
};

inline constexpr double kAnalyticTolerance = 1e-9;
inline constexpr double kPerturbedTolerance = 1e-7;

FunctionalSet compute_functionals(const LogDensity& f, const QuadratureRule& rule);

// (f(x + mu) exp(-(mu.x + |mu|^2/2))) / m: unit mass, zero barycenter, same
// deficit as f/m.
LogDensity recenter(const LogDensity& f, const FunctionalSet& fs);

// Identities between f / m and its recentered version f^:
//   delta(f^) = delta(f/m), Ent(f^) = Ent(f/m) - |mu|^2/2, I(f^) = I(f/m) - |mu|^2.
std::array<SlackRecord, 3> verify_recentering_identities(
    const LogDensity& f, const QuadratureRule& rule, double tolerance = kPerturbedTolerance);

// |delta(c f) - c delta(f)|.
SlackRecord verify_homogeneity(const LogDensity& f, double c, const QuadratureRule& rule,
                               double tolerance = 1e-8);

}  // namespace lsilab

#endif  // LSILAB_FUNCTIONALS_HPP_
