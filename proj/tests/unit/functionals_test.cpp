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

#include <cmath>

#include "../support/oracles.hpp"
#include "gtest/gtest.h"
#include "lsilab/errors.hpp"
#include "lsilab/functionals.hpp"

namespace lsilab {
namespace {

namespace oracle = lsilab::testing;

TEST(Functionals, HalfQuadraticMatchesFrozenValues) {
  const FunctionalSet fs = compute_functionals(quadratic_family(0.5, 1), hermite_rule(64));
  EXPECT_NEAR(fs.mass, 1.0, 1e-14);
  EXPECT_NEAR(fs.barycenter(0), 0.0, 1e-15);
  EXPECT_NEAR(fs.entropy, oracle::frozen::kEntHalf, kAnalyticTolerance);
  EXPECT_NEAR(fs.fisher, 0.5, kAnalyticTolerance);
  EXPECT_NEAR(fs.deficit, oracle::frozen::kDeficitHalf, kAnalyticTolerance);
}

TEST(Functionals, ClosedFormsAcrossTheFamily) {
  const QuadratureRule rule = hermite_rule(kDeficitOrder);
  for (double a : {0.01, 0.1, 0.5, 2.0}) {
    const FunctionalSet fs = compute_functionals(quadratic_family(a, 1), rule);
    EXPECT_NEAR(fs.entropy, oracle::closed_entropy(a, 1), kAnalyticTolerance) << a;
    EXPECT_NEAR(fs.fisher, oracle::closed_fisher(a, 1), kAnalyticTolerance) << a;
  }
  EXPECT_NEAR(compute_functionals(quadratic_family(0.1, 1), rule).deficit,
              oracle::frozen::kDeficitTenth, kAnalyticTolerance);
}

TEST(Functionals, TwoDimensionalQuadraticIsAdditive) {
  const FunctionalSet fs = compute_functionals(quadratic_family(0.5, 2), gaussian_rule(64, 2));
  EXPECT_NEAR(fs.deficit, 2 * oracle::frozen::kDeficitHalf, kAnalyticTolerance);
  EXPECT_NEAR(fs.barycenter.norm(), 0.0, 1e-14);
}

TEST(Functionals, ConstantAndLogLinearHaveZeroDeficit) {
  const QuadratureRule rule = gaussian_rule(64, 2);
  const FunctionalSet one = compute_functionals(quadratic_family(0.0, 2), rule);
  EXPECT_NEAR(one.deficit, 0.0, 1e-13);
  EXPECT_NEAR(one.entropy, 0.0, 1e-13);
  Vec b(2);
  b << 0.5, -1.0;
  const FunctionalSet ll = compute_functionals(log_linear(b), rule);
  EXPECT_NEAR(ll.deficit, 0.0, 1e-12);
  EXPECT_NEAR(ll.entropy, 0.625, 1e-12);
  EXPECT_NEAR(ll.barycenter(1), -1.0, 1e-13);
}

TEST(Functionals, PerturbedMatchesTrapezoidAndFrozen) {
  const LogDensity f = perturbed_quadratic(0.3, 0.05, 2.0, 1);
  const FunctionalSet fs = compute_functionals(f, hermite_rule(kFunctionalOrder));
  EXPECT_NEAR(fs.entropy, oracle::frozen::kPertEnt, kPerturbedTolerance);
  EXPECT_NEAR(fs.fisher, oracle::frozen::kPertFisher, kPerturbedTolerance);
  EXPECT_NEAR(fs.deficit, oracle::frozen::kPertDeficit, kPerturbedTolerance);
  const auto t = oracle::trapezoid_functionals(f);
  EXPECT_NEAR(fs.deficit, t.deficit, kPerturbedTolerance);
}

TEST(Functionals, MonteCarloCrossCheckWithinThreeSigma) {
  const LogDensity f = tilt(perturbed_quadratic(0.3, 0.05, 2.0, 2), Vec::Constant(2, 0.3));
  const FunctionalSet fs = compute_functionals(f, gaussian_rule(64, 2));
  double se = 0;
  const double mc = oracle::monte_carlo_deficit(f, 2024, 400000, &se);
  EXPECT_NEAR(fs.deficit, mc, 3 * se + 1e-4);
}

TEST(Functionals, DegenerateMassThrows) {
  const LogDensity zero(
      1, [](const Vec&) { return 800.0; }, [](const Vec& x) -> Vec { return Vec::Zero(x.size()); },
      [](const Vec& x) -> Mat { return Mat::Zero(x.size(), x.size()); });
  EXPECT_THROW(compute_functionals(zero, hermite_rule(8)), DegenerateMass);
}

TEST(Recenter, UnitMassZeroBarycenter) {
  const QuadratureRule rule = hermite_rule(64);
  const LogDensity f = scale(tilt(quadratic_family(0.5, 1), scalar_point(1.2)), 3.0);
  const FunctionalSet fs = compute_functionals(f, rule);
  const FunctionalSet hat = compute_functionals(recenter(f, fs), rule);
  EXPECT_NEAR(hat.mass, 1.0, 1e-13);
  EXPECT_NEAR(hat.barycenter(0), 0.0, 1e-13);
}

TEST(Recenter, IdentitiesHoldForTiltedDensities) {
  const QuadratureRule rule = hermite_rule(64);
  for (double b : {-1.5, -0.3, 0.8, 1.5}) {
    const LogDensity f = scale(tilt(perturbed_quadratic(0.4, 0.05, 1.5, 1), scalar_point(b)), 2.0);
    for (const SlackRecord& r : verify_recentering_identities(f, rule)) {
      EXPECT_TRUE(r.pass) << r.name << " b=" << b << " gap=" << r.lhs;
    }
  }
}

TEST(Recenter, LogLinearBecomesGaussian) {
  const QuadratureRule rule = hermite_rule(64);
  const LogDensity f = log_linear(scalar_point(1.0));
  const LogDensity hat = recenter(f, compute_functionals(f, rule));
  for (double x : {-2.0, 0.0, 1.5}) EXPECT_NEAR(hat.h(scalar_point(x)), 0.0, 1e-13);
}

TEST(Homogeneity, DeficitIsOneHomogeneous) {
  const QuadratureRule rule = hermite_rule(64);
  for (double c : {0.5, 2.0, 10.0}) {
    const SlackRecord r = verify_homogeneity(perturbed_quadratic(0.3, 0.05, 2.0, 1), c, rule);
    EXPECT_TRUE(r.pass) << c << " gap=" << r.lhs;
  }
  EXPECT_THROW(verify_homogeneity(quadratic_family(0.1, 1), 0.0, rule), InvalidArgument);
}

// f(x) = exp(-(x-1)^2/2 + c) with c fixing unit mass; f dgamma is N(1/2, 1/2).
LogDensity shifted_gaussian() {
  const double c = 0.5 * std::log(2.0) + 0.25;
  return LogDensity(
      1, [c](const Vec& x) { return 0.5 * (x(0) - 1) * (x(0) - 1) - c; },
      [](const Vec& x) { return scalar_point(x(0) - 1); },
      [](const Vec&) { return Mat::Identity(1, 1); });
}

TEST(Recenter, ShiftedGaussian) {
  const QuadratureRule rule = hermite_rule(64);
  const LogDensity f = shifted_gaussian();
  const FunctionalSet fs = compute_functionals(f, rule);
  EXPECT_NEAR(fs.mass, 1.0, 1e-12);
  EXPECT_NEAR(fs.barycenter(0), 0.5, 1e-12);
  const FunctionalSet hat = compute_functionals(recenter(f, fs), rule);
  EXPECT_NEAR(hat.mass, 1.0, 1e-9);
  EXPECT_NEAR(hat.barycenter(0), 0.0, 1e-9);
  for (const SlackRecord& r : verify_recentering_identities(f, rule)) {
    EXPECT_LE(r.lhs, 1e-8) << r.name;
  }
}

TEST(Homogeneity, ScaledTranslationHasZeroDeficit) {
  const QuadratureRule rule = hermite_rule(64);
  EXPECT_NEAR(compute_functionals(scale(log_linear(scalar_point(1.0)), 3.0), rule).deficit, 0.0,
              1e-12);
}

TEST(Functionals, OrderRefinementIsConverged) {
  const QuadratureRule r64 = hermite_rule(64), r128 = hermite_rule(128);
  for (const LogDensity& f : {quadratic_family(0.01, 1), quadratic_family(0.5, 1),
                              log_linear(scalar_point(1.0)), tilt(quadratic_family(0.2, 1),
                                                                   scalar_point(-0.7))}) {
    EXPECT_LT(std::abs(compute_functionals(f, r64).deficit - compute_functionals(f, r128).deficit),
              1e-8);
  }
}

TEST(Properties, DeficitNonnegativeAndRecenteringInvariant) {
  const QuadratureRule rule = hermite_rule(128);
  for (const auto& c : oracle::certified_corpus_1d(20, 20, 20)) {
    const FunctionalSet fs = compute_functionals(c.f, rule);
    EXPECT_GE(fs.deficit, -1e-8) << c.id;
    const FunctionalSet hat = compute_functionals(recenter(c.f, fs), rule);
    EXPECT_NEAR(hat.deficit, fs.deficit / fs.mass, 1e-7) << c.id;
  }
}

}  // namespace
}  // namespace lsilab
