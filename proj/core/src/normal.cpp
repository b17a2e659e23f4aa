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

#include "lsilab/normal.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <limits>

#include <boost/math/special_functions/erf.hpp>

#include "lsilab/errors.hpp"
#include "lsilab/slack_record.hpp"

namespace lsilab {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

NonFiniteIntegrand::NonFiniteIntegrand(const Vec& node, double value)
    : EvaluationError("non-finite integrand value at quadrature node"),
      node_(node),
      value_(value) {}

DegenerateMass::DegenerateMass(double mass)
    : std::runtime_error("degenerate mass " + sci(mass)), mass_(mass) {}

WindowCoverageError::WindowCoverageError(double outside_mass)
    : std::runtime_error("transport window misses mass " + sci(outside_mass)),
      outside_mass_(outside_mass) {}

ConvergenceError::ConvergenceError(int iterations, double violation, double reg)
    : std::runtime_error("sinkhorn did not converge after " + std::to_string(iterations) +
                         " iterations (marginal violation " + sci(violation) +
                         " at reg " + sci(reg) + ")"),
      iterations_(iterations),
      violation_(violation),
      reg_(reg) {}

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

SlackRecord SlackRecord::inequality(std::string name, double lhs, double rhs,
                                    double tolerance) {
  SlackRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tolerance = tolerance;
  r.pass = r.slack >= -tolerance;
  return r;
}

SlackRecord SlackRecord::identity(std::string name, double left, double right,
                                  double tolerance) {
  SlackRecord r = inequality(std::move(name), std::abs(left - right), 0.0, tolerance);
  r.with("left", left).with("right", right);
  return r;
}

std::optional<double> SlackRecord::find(const std::string& key) const {
  for (const auto& e : context) {
    if (e.key == key) return e.value;
  }
  return std::nullopt;
}

namespace normal {

double pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double sf(double x) { return 0.5 * std::erfc(x * M_SQRT1_2); }

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw InvalidArgument("normal quantile outside (0, 1)");
  }
  return -M_SQRT2 * boost::math::erfc_inv(2.0 * p);
}

double upper_quantile(double s) { return -quantile(s); }

}  // namespace normal
}  // namespace lsilab
