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
#include <sstream>

#include "../support/oracles.hpp"
#include "gtest/gtest.h"
#include "lsilab/errors.hpp"
#include "lsilab/functionals.hpp"
#include "lsilab/normal.hpp"
#include "lsilab/transport_1d.hpp"
#include "lsilab/wasserstein.hpp"

namespace lsilab {
namespace {

namespace oracle = lsilab::testing;

TEST(CdfTable, GaussianTableMatchesErfc) {
  const CdfTable t = build_cdf_table(quadratic_family(0.0, 1), {});
  EXPECT_NEAR(t.mass(), 1.0, 1e-14);
  for (double x : {-5.0, -1.3, 0.0, 0.77, 4.2}) {
    EXPECT_NEAR(t.cdf_at(x), normal::cdf(x), 1e-12);
    EXPECT_NEAR(t.sf_at(x) / normal::sf(x), 1.0, 1e-9);
  }
  for (double q : {1e-12, 0.01, 0.3, 0.5, 0.9, 1 - 1e-9}) {
    EXPECT_NEAR(t.quantile(q, 1 - q), normal::quantile(q), 1e-7) << q;
  }
}

TEST(CdfTable, WindowMustCoverTheMass) {
  EXPECT_THROW(build_cdf_table(log_linear(scalar_point(3.0)), {}), WindowCoverageError);
  EXPECT_NO_THROW(build_cdf_table(log_linear(scalar_point(3.0)), {-5.0, 11.0}));
  EXPECT_THROW(build_cdf_table(quadratic_family(0.0, 2), {}), UnsupportedDimension);
  EXPECT_THROW(build_cdf_table(quadratic_family(0.0, 1), {1.0, -1.0}), InvalidArgument);
}

TEST(BrenierMap, PushforwardAndMonotonicity) {
  for (const LogDensity& f : {quadratic_family(0.5, 1), perturbed_quadratic(0.3, 0.05, 2.0, 1),
                              tilt(quadratic_family(2.0, 1), scalar_point(-1.0))}) {
    const TransportMap1D map = brenier_map_1d(f);
    EXPECT_LE(map.pushforward_error, 1e-9);
    for (std::size_t i = 1; i < map.grid.size(); ++i) EXPECT_GE(map.T[i], map.T[i - 1]);
  }
}

TEST(BrenierMap, HalfQuadraticIsLinear) {
  const TransportMap1D map = brenier_map_1d(quadratic_family(0.5, 1));
  for (double x : {-3.0, -0.4, 0.0, 1.1, 2.9}) {
    EXPECT_NEAR(map.map_at(x), std::sqrt(2.0) * x, 1e-10);
    EXPECT_NEAR(map.lambda_at(x), std::sqrt(2.0) - 1.0, 1e-9);
  }
}

TEST(BrenierMap, LogLinearIsTranslation) {
  // f dgamma is N(1, 1); the map back to gamma is x - 1.
  const TransportMap1D map = brenier_map_1d(log_linear(scalar_point(1.0)));
  for (double x : {-3.0, 0.0, 1.0, 4.0}) EXPECT_NEAR(map.map_at(x), x - 1.0, 1e-10);
}

TEST(BrenierMap, NonUnitMassIsNormalized) {
  const TransportMap1D a = brenier_map_1d(quadratic_family(0.3, 1));
  const TransportMap1D b = brenier_map_1d(scale(quadratic_family(0.3, 1), 7.0));
  EXPECT_NEAR(b.source.mass(), 7.0, 1e-12);
  for (std::size_t i = 0; i < a.T.size(); i += 97) EXPECT_NEAR(a.T[i], b.T[i], 1e-12);
}

TEST(MongeAmpere, ResidualSmallOnAnalyticFamilies) {
  for (const LogDensity& f : {quadratic_family(0.5, 1), quadratic_family(2.0, 1),
                              log_linear(scalar_point(-1.0))}) {
    EXPECT_LE(monge_ampere_residual(f, brenier_map_1d(f)), 1e-6);
  }
}

TEST(MongeAmpere, SecondOrderRefinementOnPerturbedDensity) {
  const LogDensity f = perturbed_quadratic(0.3, 0.05, 2.0, 1);
  const double r1 = monge_ampere_residual(f, brenier_map_1d(f, {}, 1024));
  const double r2 = monge_ampere_residual(f, brenier_map_1d(f, {}, 2048));
  const double r3 = monge_ampere_residual(f, brenier_map_1d(f, {}, 4096));
  EXPECT_GT(r1, r2);
  EXPECT_GT(r2, r3);
  EXPECT_GE(std::log2(r2 / r3), 1.5);
}

TEST(DeficitLowerBound, ExamplesAndCorpus) {
  const QuadratureRule rule = hermite_rule(64);
  const LogDensity half = quadratic_family(0.5, 1);
  const SlackRecord r = deficit_lower_bound(half, brenier_map_1d(half), rule);
  EXPECT_NEAR(r.lhs, oracle::frozen::kLowerBoundHalf, 1e-9);
  EXPECT_NEAR(r.rhs, oracle::frozen::kDeficitHalf, 1e-9);
  EXPECT_TRUE(r.pass);

  const LogDensity one = quadratic_family(0.0, 1);
  const SlackRecord z = deficit_lower_bound(one, brenier_map_1d(one), rule);
  EXPECT_NEAR(z.lhs, 0.0, 1e-12);
  EXPECT_NEAR(z.rhs, 0.0, 1e-12);

  const LogDensity ll = log_linear(scalar_point(1.0));
  const SlackRecord e = deficit_lower_bound(ll, brenier_map_1d(ll), rule);
  EXPECT_NEAR(e.lhs, 0.0, 1e-12);
  EXPECT_TRUE(e.pass);

  for (const auto& c : oracle::certified_corpus_1d(10, 10, 10)) {
    EXPECT_TRUE(deficit_lower_bound(c.f, brenier_map_1d(c.f, c.window), rule).pass) << c.id;
  }
}

TEST(EigenvalueBound, Examples) {
  const LogDensity half = quadratic_family(0.5, 1);
  const EigenvalueBoundCheck c = eigenvalue_bound_check(half, brenier_map_1d(half), 1.0);
  EXPECT_NEAR(c.eigenvalue.lhs, std::sqrt(2.0) - 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(c.eigenvalue.rhs, 1.0);
  EXPECT_TRUE(c.pass());

  const LogDensity one = quadratic_family(0.0, 1);
  EXPECT_NEAR(eigenvalue_bound_check(one, brenier_map_1d(one), 5.0).eigenvalue.lhs, 0.0, 1e-9);

  const LogDensity pert = perturbed_quadratic(0.3, 0.05, 2.0, 1);
  const EigenvalueBoundCheck p = eigenvalue_bound_check(pert, brenier_map_1d(pert), 0.9);
  EXPECT_NEAR(p.contraction.rhs, oracle::frozen::kSqrt19, 1e-15);
  EXPECT_TRUE(p.pass());
}

TEST(EigenvalueBound, DetectsTooSmallM) {
  // T' = sqrt(5) for a = 2, so M = 1 violates the contraction bound.
  const LogDensity f = quadratic_family(2.0, 1);
  const EigenvalueBoundCheck c = eigenvalue_bound_check(f, brenier_map_1d(f), 1.0);
  EXPECT_FALSE(c.contraction.pass);
  EXPECT_FALSE(c.eigenvalue.pass);
}

TEST(Poincare, Examples) {
  const QuadratureRule rule = hermite_rule(64);
  const auto identity = [](const Vec& x) { return x(0); };
  const SlackRecord gauss = poincare_check(quadratic_family(0.0, 1), 1.0, identity, rule);
  EXPECT_NEAR(gauss.lhs, 1.0, 1e-12);
  EXPECT_NEAR(gauss.rhs, 1.0, 1e-8);
  EXPECT_TRUE(gauss.pass);

  const SlackRecord half = poincare_check(quadratic_family(0.5, 1), 2.0, identity, rule);
  EXPECT_NEAR(half.lhs, 0.5, 1e-12);
  EXPECT_NEAR(half.rhs, 0.5, 1e-8);

  const SlackRecord flat =
      poincare_check(quadratic_family(0.5, 1), 1.0, [](const Vec&) { return 3.0; }, rule);
  EXPECT_NEAR(flat.lhs, 0.0, 1e-15);
  EXPECT_NEAR(flat.rhs, 0.0, 1e-15);
}

TEST(Poincare, ViolatedWhenEpsilonTooLarge) {
  const QuadratureRule rule = hermite_rule(64);
  const SlackRecord r = poincare_check(quadratic_family(0.5, 1), 3.0,
                                       [](const Vec& x) { return x(0); }, rule);
  EXPECT_FALSE(r.pass);
}

TEST(W2FromMap, Examples) {
  const QuadratureRule rule = hermite_rule(64);
  const LogDensity half = quadratic_family(0.5, 1);
  EXPECT_NEAR(w2_from_map(half, brenier_map_1d(half), rule), oracle::frozen::kW2Half, 1e-12);
  const LogDensity one = quadratic_family(0.0, 1);
  EXPECT_NEAR(w2_from_map(one, brenier_map_1d(one), rule), 0.0, 1e-12);
  const LogDensity ll = log_linear(scalar_point(1.0));
  EXPECT_NEAR(w2_from_map(ll, brenier_map_1d(ll), rule), 1.0, 1e-12);
}

TEST(W2FromMap, AgreesWithQuantileCoupling) {
  const QuadratureRule rule = hermite_rule(64);
  const CdfTable gamma = build_cdf_table(quadratic_family(0.0, 1), {});
  for (const LogDensity& f : {perturbed_quadratic(0.3, 0.05, 2.0, 1),
                              tilt(quadratic_family(0.2, 1), scalar_point(0.6))}) {
    const TransportMap1D map = brenier_map_1d(f);
    EXPECT_NEAR(w2_from_map(f, map, rule), w2_quantile_1d(map.source, gamma, 100000), 1e-8);
  }
}

TEST(MapCsv, HeaderAndPrecision) {
  const TransportMap1D map = brenier_map_1d(quadratic_family(0.5, 1), {}, 16);
  std::ostringstream out;
  write_map_csv(map, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,T,lambda");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (rows == 1) EXPECT_EQ(line.rfind("-8,", 0), 0u);
  }
  EXPECT_EQ(rows, 16);
}

}  // namespace
}  // namespace lsilab
