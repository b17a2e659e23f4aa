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

#include "lsilab/functionals.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lsilab/errors.hpp"

namespace lsilab {

FunctionalSet compute_functionals(const LogDensity& f, const QuadratureRule& rule) {
  if (rule.dim != f.dim()) throw InvalidArgument("compute_functionals: rule dimension mismatch");
  const int dim = f.dim();
  double mass = 0.0;
  double f_log_f = 0.0;
  double fisher = 0.0;
  Vec first = Vec::Zero(dim);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Vec& x = rule.nodes[i];
    const double w = rule.weights[i];
    const double h = f.h(x);
    if (std::isnan(h) || h == -std::numeric_limits<double>::infinity()) {
      throw NonFiniteIntegrand(x, h);
    }
    const double fx = std::exp(-h);
    if (!std::isfinite(fx)) throw NonFiniteIntegrand(x, fx);
    // 0 log 0 := 0
    if (fx == 0.0) continue;
    const Vec g = f.grad_h(x);
    if (!g.allFinite()) throw NonFiniteIntegrand(x, g.squaredNorm());
    mass += w * fx;
    first += (w * fx) * x;
    f_log_f += w * (-h) * fx;
    fisher += w * g.squaredNorm() * fx;
  }
  if (!(mass > std::numeric_limits<double>::epsilon())) throw DegenerateMass(mass);

  FunctionalSet fs;
  fs.mass = mass;
  fs.barycenter = first / mass;
  fs.entropy = f_log_f - mass * std::log(mass);
  fs.fisher = fisher;
  fs.deficit = 0.5 * fisher - fs.entropy;
  return fs;
}

LogDensity recenter(const LogDensity& f, const FunctionalSet& fs) {
  if (fs.barycenter.size() != f.dim()) throw InvalidArgument("recenter: dimension mismatch");
  if (!(fs.mass > 0.0)) throw DegenerateMass(fs.mass);
  const Vec mu = fs.barycenter;
  const double offset = 0.5 * mu.squaredNorm() + std::log(fs.mass);
  LogDensity out(
      f.dim(), [f, mu, offset](const Vec& x) { return f.h(x + mu) + mu.dot(x) + offset; },
      [f, mu](const Vec& x) -> Vec { return f.grad_h(x + mu) + mu; },
      [f, mu](const Vec& x) -> Mat { return f.hess_h(x + mu); },
      "recenter(" + f.label() + ")");
  out.set_envelope(f.envelope());
  return out;
}

std::array<SlackRecord, 3> verify_recentering_identities(const LogDensity& f,
                                                         const QuadratureRule& rule,
                                                         double tolerance) {
  const FunctionalSet fs = compute_functionals(f, rule);
  const FunctionalSet hat = compute_functionals(recenter(f, fs), rule);
  const double mu2 = fs.barycenter.squaredNorm();
  const double m = fs.mass;

  std::array<SlackRecord, 3> out = {
      SlackRecord::identity("recenter_deficit", hat.deficit, fs.deficit / m, tolerance),
      SlackRecord::identity("recenter_entropy", hat.entropy, fs.entropy / m - 0.5 * mu2, tolerance),
      SlackRecord::identity("recenter_fisher", hat.fisher, fs.fisher / m - mu2, tolerance),
  };
  for (auto& r : out) r.with("mass", fs.mass).with("barycenter_sq", mu2);
  return out;
}

SlackRecord verify_homogeneity(const LogDensity& f, double c, const QuadratureRule& rule,
                               double tolerance) {
  if (!(c > 0.0)) throw InvalidArgument("verify_homogeneity: need c > 0");
  const double base = compute_functionals(f, rule).deficit;
  const double scaled = c == 1.0 ? base : compute_functionals(scale(f, c), rule).deficit;
  return SlackRecord::identity("homogeneity", scaled, c * base, tolerance).with("c", c);
}

}  // namespace lsilab
