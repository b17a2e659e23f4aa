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

#ifndef LSILAB_REPORT_HPP_
#define LSILAB_REPORT_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsilab/functionals.hpp"
#include "lsilab/gauss_quadrature.hpp"
#include "lsilab/log_density.hpp"
#include "lsilab/slack_record.hpp"
#include "lsilab/stability.hpp"
#include "lsilab/transport_1d.hpp"
#include "lsilab/wasserstein.hpp"

namespace lsilab::report {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr const char* kOutDirEnv = "LSILAB_OUT_DIR";

// One line of whitespace-separated key=value pairs, e.g.
//   family=quadratic a=0.5 dim=1
// Families: quadratic (a), loglinear (b), perturbed (a, amplitude,
// frequency). Any family accepts tilt, scale, id and per-case epsilon, M, r.
// Vector values (b, tilt) are comma lists or a scalar broadcast to all
// coordinates.
struct DensitySpec {
  std::string text;
  std::string id;
  std::string family;
  int dim = 1;
  double a = 0.0;
  std::vector<double> b;
  double amplitude = 0.0;
  double frequency = 1.0;
  std::vector<double> tilt;
  double scale = 1.0;
  std::optional<double> epsilon;
  std::optional<double> M;
  std::optional<double> r;
  int line = 1;
};

// Throws ParseError with 1-based line and column of the offending token.
DensitySpec parse_density_spec(std::string_view text, int line = 1);
// Throws InvalidArgument when the parameters do not define a density.
LogDensity build_density(const DensitySpec& spec);

struct OutputPaths {
  std::string csv = "report.csv";
  std::string json = "report.json";
  std::string timing = "timing.csv";
  // Transport-map dumps (one CSV per 1D case) when nonempty.
  std::string map_dir;
};

struct SuiteConfig {
  std::vector<DensitySpec> corpus;
  FamilyParams params;
  int quadrature_order = kFunctionalOrder;
  Window window;
  int resolution = kDefaultResolution;
  ProbeSpec probe;
  SinkhornConfig sinkhorn;
  int grid_order = 64;
  OutputPaths output;
};

// Sections [suite], [sinkhorn], [output] hold `key = value` lines; [corpus]
// holds one density spec per line. '#' starts a comment line. Throws
// ParseError on malformed input and ConfigError on semantic problems
// (including an empty corpus).
SuiteConfig parse_suite_config(std::istream& in);
SuiteConfig load_suite_config(const std::string& path);

struct CaseResult {
  std::string id;
  std::string spec;
  FamilyParams params;
  MembershipReport membership;
  std::vector<SlackRecord> records;
  // Companion records that gate the exit code but are not report rows.
  std::vector<SlackRecord> extra;
  std::vector<double> wall_seconds;  // parallel to records
  std::optional<std::string> error;

  bool pass() const;
};

struct SuiteResult {
  std::vector<CaseResult> cases;
  bool pass() const;
  std::size_t row_count() const;
};

CaseResult run_case(const DensitySpec& spec, const SuiteConfig& config);
// Cases run on up to `jobs` threads; results keep corpus order.
SuiteResult run_suite(const SuiteConfig& config, int jobs = 1);

// case_id,check,lhs,rhs,slack,tolerance,verdict
void write_csv(const SuiteResult& result, std::ostream& out);
void write_json(const SuiteResult& result, const SuiteConfig& config, std::ostream& out);
// case_id,check,wall_seconds
void write_timing(const SuiteResult& result, std::ostream& out);

// a,deficit,w2,ratio
void write_sharpness_csv(const std::vector<SharpnessRow>& rows, std::ostream& out);
// Logarithmically spaced from a_max down to a_min; steps == 1 gives a_max.
std::vector<double> sharpness_grid(double a_min, double a_max, int steps);

std::string functionals_json(const DensitySpec& spec, const FunctionalSet& fs, int order);

// 17 significant digits.
std::string format_double(double v);

// --out if given, else $LSILAB_OUT_DIR, else ".".
std::string resolve_out_dir(const std::optional<std::string>& flag);

}  // namespace lsilab::report

#endif  // LSILAB_REPORT_HPP_
