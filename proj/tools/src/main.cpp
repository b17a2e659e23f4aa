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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lsilab/errors.hpp"
#include "lsilab/functionals.hpp"
#include "lsilab/report.hpp"
#include "lsilab/stability.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lsilab;

std::string join_out(const std::string& dir, const std::string& name) {
  const fs::path p(name);
  return p.is_absolute() ? name : (fs::path(dir) / p).string();
}

int cmd_functionals(const std::string& spec_text, int order, bool as_json,
                    const std::optional<std::string>& json_path) {
  const report::DensitySpec spec = report::parse_density_spec(spec_text);
  const LogDensity f = report::build_density(spec);
  const FunctionalSet fs = compute_functionals(f, gaussian_rule(order, f.dim()));
  const std::string doc = report::functionals_json(spec, fs, order);
  if (json_path) {
    std::ofstream out(*json_path);
    if (!out) throw ConfigError("cannot write '" + *json_path + "'");
    out << doc << '\n';
  }
  if (as_json) {
    std::cout << doc << '\n';
    return report::kExitPass;
  }
  std::cout << "mass       " << report::format_double(fs.mass) << '\n' << "barycenter";
  for (Eigen::Index k = 0; k < fs.barycenter.size(); ++k) {
    std::cout << ' ' << report::format_double(fs.barycenter(k));
  }
  std::cout << '\n'
            << "entropy    " << report::format_double(fs.entropy) << '\n'
            << "fisher     " << report::format_double(fs.fisher) << '\n'
            << "deficit    " << report::format_double(fs.deficit) << '\n';
  return report::kExitPass;
}

int cmd_verify(const std::string& config_path, int jobs, const std::optional<std::string>& out_flag) {
  report::SuiteConfig cfg = report::load_suite_config(config_path);
  const std::string dir = report::resolve_out_dir(out_flag);
  fs::create_directories(dir);
  if (!cfg.output.map_dir.empty()) cfg.output.map_dir = join_out(dir, cfg.output.map_dir);
  const report::SuiteResult result = report::run_suite(cfg, jobs);

  const auto open = [&](const std::string& name) {
    std::ofstream out(join_out(dir, name), std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + join_out(dir, name) + "'");
    return out;
  };
  {
    std::ofstream csv = open(cfg.output.csv);
    report::write_csv(result, csv);
  }
  {
    std::ofstream json = open(cfg.output.json);
    report::write_json(result, cfg, json);
  }
  {
    std::ofstream timing = open(cfg.output.timing);
    report::write_timing(result, timing);
  }
  std::size_t failed_rows = 0;
  for (const report::CaseResult& c : result.cases) {
    for (const SlackRecord& r : c.records) {
      if (!r.pass) {
        ++failed_rows;
        std::cerr << "FAIL " << c.id << ' ' << r.name << " slack=" << report::format_double(r.slack)
                  << '\n';
      }
    }
    for (const SlackRecord& r : c.extra) {
      if (!r.pass) std::cerr << "FAIL " << c.id << ' ' << r.name << " (companion)\n";
    }
    if (c.membership.witness_point && !c.membership.is_member) {
      std::cerr << "membership failure in " << c.id << '\n';
    }
    if (c.error) std::cerr << "ERROR " << c.id << ": " << *c.error << '\n';
  }
  std::cout << result.cases.size() << " cases, " << result.row_count() << " rows, " << failed_rows
            << " failed rows; reports in " << dir << '\n';
  return result.pass() ? report::kExitPass : report::kExitFail;
}

int cmd_sharpness(double a_min, double a_max, int steps, int dim,
                  const std::optional<std::string>& out_path) {
  const std::vector<SharpnessRow> rows =
      sharpness_sweep(report::sharpness_grid(a_min, a_max, steps), dim);
  const std::string path =
      out_path ? *out_path : join_out(report::resolve_out_dir(std::nullopt), "sharpness.csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  report::write_sharpness_csv(rows, out);
  report::write_sharpness_csv(rows, std::cout);
  return report::kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Gaussian log-Sobolev stability bounds"};
  app.require_subcommand(1);

  std::string spec_text;
  int order = kFunctionalOrder;
  bool as_json = false;
  std::optional<std::string> json_path;
  auto* functionals = app.add_subcommand("functionals", "Mass, barycenter, Ent, I and deficit");
  functionals->add_option("spec", spec_text, "Density spec, e.g. \"family=quadratic a=0.5 dim=1\"")
      ->required();
  functionals->add_option("--order", order, "Gauss-Hermite order per axis")
      ->check(CLI::Range(2, kMaxHermiteOrder));
  functionals->add_flag("--json", as_json, "Print JSON instead of text");
  functionals->add_option("--json-out", json_path, "Also write JSON to this file");

  std::string config_path;
  int jobs = 1;
  std::optional<std::string> out_dir;
  auto* verify = app.add_subcommand("verify", "Run the verification suite of a config");
  verify->add_option("config", config_path, "Suite config file")->required();
  verify->add_option("--jobs", jobs, "Concurrent cases")->check(CLI::PositiveNumber);
  verify->add_option("--out", out_dir, "Output directory (default $LSILAB_OUT_DIR or .)");

  double a_min = 0.0, a_max = 0.0;
  int steps = 20, dim = 1;
  std::optional<std::string> sharp_out;
  auto* sharp = app.add_subcommand("sharpness", "Deficit to W2 ratio on rescaled Gaussians");
  sharp->add_option("--a-min", a_min, "Smallest a")->required();
  sharp->add_option("--a-max", a_max, "Largest a")->required();
  sharp->add_option("--steps", steps, "Number of a values")->check(CLI::PositiveNumber);
  sharp->add_option("--dim", dim, "Dimension")->check(CLI::Range(1, 1 << 20));
  sharp->add_option("--out", sharp_out, "CSV path (default $LSILAB_OUT_DIR/sharpness.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : report::kExitConfig;
  }

  try {
    if (*functionals) return cmd_functionals(spec_text, order, as_json, json_path);
    if (*verify) return cmd_verify(config_path, jobs, out_dir);
    if (*sharp) return cmd_sharpness(a_min, a_max, steps, dim, sharp_out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return report::kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return report::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return report::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return report::kExitFail;
  }
  return report::kExitConfig;
}
