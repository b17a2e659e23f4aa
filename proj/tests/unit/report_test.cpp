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

#include <sstream>

#include "gtest/gtest.h"
#include "lsilab/errors.hpp"
#include "lsilab/report.hpp"

namespace lsilab::report {
namespace {

SuiteConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_suite_config(in);
}

template <typename F>
ParseError parse_error(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError";
  return ParseError(0, 0, "");
}

TEST(DensitySpec, ParsesFamilies) {
  const DensitySpec q = parse_density_spec("family=quadratic a=0.5 dim=2 id=q epsilon=0.5");
  EXPECT_EQ(q.family, "quadratic");
  EXPECT_EQ(q.dim, 2);
  EXPECT_DOUBLE_EQ(q.a, 0.5);
  EXPECT_EQ(q.id, "q");
  EXPECT_DOUBLE_EQ(*q.epsilon, 0.5);
  EXPECT_FALSE(q.M.has_value());

  const DensitySpec l = parse_density_spec("family=log_linear b=1,-2 dim=2");
  EXPECT_EQ(l.family, "loglinear");
  ASSERT_EQ(l.b.size(), 2u);
  EXPECT_DOUBLE_EQ(l.b[1], -2.0);

  const LogDensity f = build_density(
      parse_density_spec("family=perturbed a=0.3 amplitude=0.05 frequency=2 tilt=0.5 scale=2"));
  const LogDensity g =
      build_density(parse_density_spec("family=perturbed a=0.3 amplitude=0.05 frequency=2"));
  EXPECT_EQ(f.dim(), 1);
  const QuadratureRule rule = hermite_rule(64);
  const LogDensity gt = tilt(g, scalar_point(0.5));
  const double mf = integrate(rule, [&](const Vec& x) { return f.value(x); });
  EXPECT_NEAR(mf, 2.0 * integrate(rule, [&](const Vec& x) { return gt.value(x); }), 1e-12);
  EXPECT_NEAR(integrate(rule, [&](const Vec& x) { return g.value(x); }), 1.0, 1e-12);
}

TEST(DensitySpec, ReportsLineAndColumn) {
  ParseError e = parse_error([] { parse_density_spec("family=quadratic a=abc", 4); });
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(e.column(), 20);

  e = parse_error([] { parse_density_spec("family=cubic a=1"); });
  EXPECT_EQ(e.column(), 8);

  e = parse_error([] { parse_density_spec("family=quadratic  bogus=1"); });
  EXPECT_EQ(e.column(), 19);

  e = parse_error([] { parse_density_spec("a=1"); });
  EXPECT_EQ(e.column(), 1);

  e = parse_error([] { parse_density_spec("family=quadratic a=1 a=2"); });
  EXPECT_EQ(e.column(), 22);

  EXPECT_THROW(parse_density_spec("family=quadratic b=1"), ParseError);
  EXPECT_THROW(parse_density_spec("family=quadratic dim=4"), ParseError);
  EXPECT_THROW(parse_density_spec("family=quadratic a"), ParseError);
}

TEST(DensitySpec, BuildRejectsInvalidParameters) {
  EXPECT_THROW(build_density(parse_density_spec("family=quadratic a=-0.6")), InvalidArgument);
  EXPECT_THROW(build_density(parse_density_spec("family=quadratic a=0.1 scale=-1")),
               InvalidArgument);
}

TEST(SuiteConfig, ParsesSections) {
  const SuiteConfig c = parse(R"(# comment
[suite]
epsilon = 0.5
M = 2
quadrature_order = 32
window_lo = -9
seed = 7

[sinkhorn]
reg = 0.01
schedule = 1, 0.1, 0.01
resolution_floor = false

[output]
csv = a.csv

[corpus]
family=quadratic a=0.5
id=z family=loglinear b=1
)");
  EXPECT_DOUBLE_EQ(c.params.epsilon, 0.5);
  EXPECT_DOUBLE_EQ(c.params.M, 2.0);
  EXPECT_EQ(c.quadrature_order, 32);
  EXPECT_DOUBLE_EQ(c.window.lo, -9.0);
  EXPECT_EQ(c.probe.seed, 7u);
  EXPECT_DOUBLE_EQ(c.sinkhorn.reg_epsilon, 0.01);
  EXPECT_EQ(c.sinkhorn.anneal_schedule.size(), 3u);
  EXPECT_FALSE(c.sinkhorn.resolution_floor);
  EXPECT_EQ(c.output.csv, "a.csv");
  EXPECT_EQ(c.output.json, "report.json");
  ASSERT_EQ(c.corpus.size(), 2u);
  EXPECT_EQ(c.corpus[0].id, "case01");
  EXPECT_EQ(c.corpus[1].id, "z");
  EXPECT_EQ(c.corpus[1].line, 19);
}

TEST(SuiteConfig, Errors) {
  EXPECT_THROW(parse("[suite]\nepsilon = 1\n[corpus]\n"), ConfigError);
  EXPECT_THROW(parse("[suite]\nepsilon = -1\n[corpus]\nfamily=quadratic a=1\n"), ConfigError);

  ParseError e = parse_error([] { parse("[suite]\nepsilon = x\n[corpus]\nfamily=quadratic a=1\n"); });
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 11);

  e = parse_error([] { parse("[corpus]\nfamily=quadratic a=1\nfamily=quadratic a=zz\n"); });
  EXPECT_EQ(e.line(), 3);

  e = parse_error([] { parse("[nope]\n"); });
  EXPECT_EQ(e.line(), 1);

  e = parse_error([] { parse("epsilon = 1\n"); });
  EXPECT_EQ(e.line(), 1);

  EXPECT_THROW(parse("[corpus]\nid=x family=quadratic a=1\nid=x family=quadratic a=2\n"), ParseError);
  EXPECT_THROW(parse("[suite]\nunknown = 1\n"), ParseError);
  EXPECT_THROW(load_suite_config("/nonexistent/suite.cfg"), ConfigError);
}

const char* kSmallSuite = R"([suite]
quadrature_order = 64
probe_count = 20000
[corpus]
id=a family=quadratic a=0.5 M=1
id=b family=perturbed a=0.3 amplitude=0.05 frequency=2 epsilon=0.4 M=0.9
id=c family=quadratic a=0.2 tilt=0.4 M=0.5
id=d family=quadratic a=0.5 dim=2 M=1
)";

TEST(RunSuite, RowsAndVerdicts) {
  SuiteConfig c = parse(kSmallSuite);
  c.grid_order = 24;
  const SuiteResult r = run_suite(c, 1);
  ASSERT_EQ(r.cases.size(), 4u);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.cases[0].records.size(), 7u);
  EXPECT_EQ(r.cases[3].records.size(), 4u);
  EXPECT_EQ(r.cases[0].records.front().name, "thm11");
  for (const CaseResult& cr : r.cases) {
    EXPECT_EQ(cr.wall_seconds.size(), cr.records.size());
    EXPECT_FALSE(cr.error.has_value()) << *cr.error;
  }
}

TEST(RunSuite, MembershipFailureIsASingleRow) {
  const SuiteConfig c = parse("[corpus]\nid=bad family=quadratic a=-0.4 epsilon=0.5\n");
  const SuiteResult r = run_suite(c, 1);
  ASSERT_EQ(r.cases[0].records.size(), 1u);
  EXPECT_EQ(r.cases[0].records[0].name, "membership");
  EXPECT_FALSE(r.pass());
}

TEST(RunSuite, LrCasesAddAThm14Row) {
  const SuiteConfig c = parse("[corpus]\nid=g family=quadratic a=0.5 M=5 r=2\n");
  const SuiteResult r = run_suite(c, 1);
  ASSERT_EQ(r.cases[0].records.size(), 8u);
  EXPECT_EQ(r.cases[0].records.back().name, "thm14");
  EXPECT_TRUE(r.pass());
  std::ostringstream json;
  write_json(r, c, json);
  EXPECT_NE(json.str().find("\"constant_source\": \"proof-assembled\""), std::string::npos);
}

TEST(RunSuite, ParallelRunsAreByteIdentical) {
  SuiteConfig c = parse(kSmallSuite);
  c.grid_order = 24;
  const SuiteResult serial = run_suite(c, 1);
  const SuiteResult parallel = run_suite(c, 3);
  std::ostringstream a, b, ja, jb;
  write_csv(serial, a);
  write_csv(parallel, b);
  write_json(serial, c, ja);
  write_json(parallel, c, jb);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(ja.str(), jb.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "case_id,check,lhs,rhs,slack,tolerance,verdict");
}

TEST(Sharpness, GridAndCsv) {
  const std::vector<double> g = sharpness_grid(1e-3, 0.1, 3);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_DOUBLE_EQ(g[0], 0.1);
  EXPECT_NEAR(g[1], 1e-2, 1e-15);
  EXPECT_NEAR(g[2], 1e-3, 1e-16);
  EXPECT_EQ(sharpness_grid(0.5, 0.5, 1), std::vector<double>{0.5});
  EXPECT_THROW(sharpness_grid(0.5, 0.1, 3), InvalidArgument);
  EXPECT_THROW(sharpness_grid(0.1, 0.5, 0), InvalidArgument);

  std::ostringstream out;
  write_sharpness_csv(sharpness_sweep({0.5}, 1), out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "a,deficit,w2,ratio");
  EXPECT_NE(out.str().find("0.5,"), std::string::npos);
}

TEST(FormatDouble, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-1.0 / 3e300), "-3.333333333333333e-301");
}

TEST(OutDir, Resolution) {
  EXPECT_EQ(resolve_out_dir(std::string("x")), "x");
  setenv(kOutDirEnv, "/tmp/env_out", 1);
  EXPECT_EQ(resolve_out_dir(std::nullopt), "/tmp/env_out");
  unsetenv(kOutDirEnv);
  EXPECT_EQ(resolve_out_dir(std::nullopt), ".");
}

}  // namespace
}  // namespace lsilab::report
