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

#include "lsilab/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "lsilab/errors.hpp"

namespace lsilab::report {
namespace {

using Json = nlohmann::ordered_json;

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> split_ws(std::string_view s, int column_offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) {
      out.push_back({s.substr(start, i - start), static_cast<int>(start) + 1 + column_offset});
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view v, int line, int column) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ParseError(line, column, "expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

int parse_int(std::string_view v, int line, int column) {
  int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ParseError(line, column, "expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view v, int line, int column) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError(line, column, "expected true or false, got '" + std::string(v) + "'");
}

std::vector<double> parse_list(std::string_view v, int line, int column) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = v.find(',', start);
    std::string_view item = v.substr(start, comma == std::string_view::npos ? v.npos : comma - start);
    std::size_t lead = 0;
    while (lead < item.size() && std::isspace(static_cast<unsigned char>(item[lead]))) ++lead;
    item = trim(item);
    out.push_back(parse_double(item, line, column + static_cast<int>(start + lead)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Vec broadcast(const std::vector<double>& v, int dim) {
  Vec out(dim);
  if (v.size() == 1) {
    out.setConstant(v[0]);
  } else if (static_cast<int>(v.size()) == dim) {
    for (int d = 0; d < dim; ++d) out(d) = v[d];
  } else {
    throw InvalidArgument("vector parameter has " + std::to_string(v.size()) +
                          " entries for dimension " + std::to_string(dim));
  }
  return out;
}

FamilyParams merged_params(const DensitySpec& spec, const FamilyParams& defaults) {
  FamilyParams p = defaults;
  if (spec.epsilon) p.epsilon = *spec.epsilon;
  if (spec.M) p.M = *spec.M;
  if (spec.r) p.r = spec.r;
  return p;
}

Json record_json(const SlackRecord& r) {
  Json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["tolerance"] = r.tolerance;
  j["verdict"] = r.pass ? "pass" : "fail";
  // The theorem states no constant; ours is assembled from its proof.
  if (r.name == "thm14") j["constant_source"] = "proof-assembled";
  Json ctx = Json::object();
  for (const auto& e : r.context) ctx[e.key] = e.value;
  j["context"] = std::move(ctx);
  return j;
}

Json vec_json(const Vec& v) {
  Json j = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) j.push_back(v(k));
  return j;
}

SlackRecord membership_record(const MembershipReport& rep, const FamilyParams& p) {
  const double violation =
      std::max(p.lower_bound() - rep.min_eig_observed, rep.max_eig_observed - p.M);
  return SlackRecord::inequality("membership", violation, 0.0, kMembershipTolerance)
      .with("epsilon", p.epsilon)
      .with("M", p.M)
      .with("min_eig", rep.min_eig_observed)
      .with("max_eig", rep.max_eig_observed);
}

void csv_row(std::ostream& out, const std::string& id, const SlackRecord& r) {
  out << id << ',' << r.name << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
      << format_double(r.slack) << ',' << format_double(r.tolerance) << ','
      << (r.pass ? "pass" : "fail") << '\n';
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DensitySpec parse_density_spec(std::string_view text, int line) {
  DensitySpec spec;
  spec.text = std::string(trim(text));
  spec.line = line;
  const std::vector<Token> tokens = split_ws(text, 0);
  std::set<std::string, std::less<>> seen;
  std::optional<std::vector<double>> b, tilt;
  int b_col = 1;
  for (const Token& t : tokens) {
    const std::size_t eq = t.text.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError(line, t.column, "expected key=value, got '" + std::string(t.text) + "'");
    }
    const std::string_view key = t.text.substr(0, eq);
    const std::string_view value = t.text.substr(eq + 1);
    const int vcol = t.column + static_cast<int>(eq) + 1;
    if (value.empty()) throw ParseError(line, vcol, "missing value for '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) {
      throw ParseError(line, t.column, "duplicate key '" + std::string(key) + "'");
    }
    if (key == "family") {
      if (value == "quadratic" || value == "loglinear" || value == "perturbed") {
        spec.family = std::string(value);
      } else if (value == "log_linear") {
        spec.family = "loglinear";
      } else {
        throw ParseError(line, vcol, "unknown family '" + std::string(value) + "'");
      }
    } else if (key == "dim") {
      spec.dim = parse_int(value, line, vcol);
      if (spec.dim < 1 || spec.dim > kMaxDim) {
        throw ParseError(line, vcol, "dim must be 1, 2 or 3");
      }
    } else if (key == "a") {
      spec.a = parse_double(value, line, vcol);
    } else if (key == "b") {
      b = parse_list(value, line, vcol);
      b_col = vcol;
    } else if (key == "amplitude") {
      spec.amplitude = parse_double(value, line, vcol);
    } else if (key == "frequency") {
      spec.frequency = parse_double(value, line, vcol);
    } else if (key == "tilt") {
      tilt = parse_list(value, line, vcol);
    } else if (key == "scale") {
      spec.scale = parse_double(value, line, vcol);
    } else if (key == "id") {
      spec.id = std::string(value);
    } else if (key == "epsilon") {
      spec.epsilon = parse_double(value, line, vcol);
    } else if (key == "M") {
      spec.M = parse_double(value, line, vcol);
    } else if (key == "r") {
      spec.r = parse_double(value, line, vcol);
    } else {
      throw ParseError(line, t.column, "unknown key '" + std::string(key) + "'");
    }
  }
  if (spec.family.empty()) {
    throw ParseError(line, tokens.empty() ? 1 : tokens.front().column, "missing family=");
  }
  if (b) {
    if (spec.family != "loglinear") throw ParseError(line, b_col, "b applies to loglinear only");
    if (!seen.count("dim") && b->size() > 1) spec.dim = static_cast<int>(b->size());
    spec.b = *b;
  }
  if (tilt) spec.tilt = *tilt;
  return spec;
}

LogDensity build_density(const DensitySpec& spec) {
  const int n = spec.dim;
  std::optional<LogDensity> f;
  if (spec.family == "quadratic") {
    f = quadratic_family(spec.a, n);
  } else if (spec.family == "loglinear") {
    f = log_linear(broadcast(spec.b.empty() ? std::vector<double>{0.0} : spec.b, n));
  } else if (spec.family == "perturbed") {
    f = perturbed_quadratic(spec.a, spec.amplitude, spec.frequency, n);
  } else {
    throw InvalidArgument("unknown family '" + spec.family + "'");
  }
  if (!spec.tilt.empty()) f = tilt(*f, broadcast(spec.tilt, n));
  if (spec.scale != 1.0) f = scale(*f, spec.scale);
  f->set_label(spec.id);
  return *f;
}

SuiteConfig parse_suite_config(std::istream& in) {
  SuiteConfig cfg;
  std::string section;
  std::string raw;
  int line = 0;
  std::set<std::string> ids;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view full(raw);
    const std::string_view s = trim(full);
    const int offset = static_cast<int>(s.data() - full.data());
    if (s.empty() || s.front() == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(line, offset + 1, "unterminated section header");
      section = std::string(trim(s.substr(1, s.size() - 2)));
      if (section != "suite" && section != "sinkhorn" && section != "output" &&
          section != "corpus") {
        throw ParseError(line, offset + 2, "unknown section '" + section + "'");
      }
      continue;
    }
    if (section.empty()) throw ParseError(line, offset + 1, "entry outside any section");
    if (section == "corpus") {
      DensitySpec spec = parse_density_spec(raw, line);
      if (spec.id.empty()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "case%02zu", cfg.corpus.size() + 1);
        spec.id = buf;
      }
      if (!ids.insert(spec.id).second) {
        throw ParseError(line, offset + 1, "duplicate case id '" + spec.id + "'");
      }
      try {
        (void)build_density(spec);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line, offset + 1, e.what());
      }
      cfg.corpus.push_back(std::move(spec));
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, offset + 1, "expected key = value");
    const std::string_view key = trim(s.substr(0, eq));
    const std::string_view rest = s.substr(eq + 1);
    const std::string_view value = trim(rest);
    const int kcol = offset + 1;
    const int vcol = offset + static_cast<int>(value.data() - s.data()) + 1;
    if (value.empty()) throw ParseError(line, vcol, "missing value");
    const std::string k(key);
    if (section == "suite") {
      if (k == "epsilon") {
        cfg.params.epsilon = parse_double(value, line, vcol);
      } else if (k == "M") {
        cfg.params.M = parse_double(value, line, vcol);
      } else if (k == "r") {
        cfg.params.r = parse_double(value, line, vcol);
      } else if (k == "quadrature_order") {
        cfg.quadrature_order = parse_int(value, line, vcol);
      } else if (k == "window_lo") {
        cfg.window.lo = parse_double(value, line, vcol);
      } else if (k == "window_hi") {
        cfg.window.hi = parse_double(value, line, vcol);
      } else if (k == "resolution") {
        cfg.resolution = parse_int(value, line, vcol);
      } else if (k == "probe_count") {
        cfg.probe.count = parse_int(value, line, vcol);
      } else if (k == "probe_lo") {
        cfg.probe.lo = parse_double(value, line, vcol);
      } else if (k == "probe_hi") {
        cfg.probe.hi = parse_double(value, line, vcol);
      } else if (k == "seed") {
        cfg.probe.seed = static_cast<std::uint64_t>(parse_int(value, line, vcol));
      } else {
        throw ParseError(line, kcol, "unknown key '" + k + "' in [suite]");
      }
    } else if (section == "sinkhorn") {
      if (k == "reg") {
        cfg.sinkhorn.reg_epsilon = parse_double(value, line, vcol);
      } else if (k == "schedule") {
        cfg.sinkhorn.anneal_schedule = parse_list(value, line, vcol);
      } else if (k == "max_iterations") {
        cfg.sinkhorn.max_iterations = parse_int(value, line, vcol);
      } else if (k == "tolerance") {
        cfg.sinkhorn.convergence_tol = parse_double(value, line, vcol);
      } else if (k == "resolution_floor") {
        cfg.sinkhorn.resolution_floor = parse_bool(value, line, vcol);
      } else if (k == "grid_order") {
        cfg.grid_order = parse_int(value, line, vcol);
      } else {
        throw ParseError(line, kcol, "unknown key '" + k + "' in [sinkhorn]");
      }
    } else {
      if (k == "csv") {
        cfg.output.csv = std::string(value);
      } else if (k == "json") {
        cfg.output.json = std::string(value);
      } else if (k == "timing") {
        cfg.output.timing = std::string(value);
      } else if (k == "map_dir") {
        cfg.output.map_dir = std::string(value);
      } else {
        throw ParseError(line, kcol, "unknown key '" + k + "' in [output]");
      }
    }
  }
  if (cfg.corpus.empty()) throw ConfigError("empty corpus");
  try {
    cfg.params.validate();
    cfg.sinkhorn.validate();
    for (const DensitySpec& spec : cfg.corpus) merged_params(spec, cfg.params).validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.quadrature_order < 2 || cfg.quadrature_order > kMaxHermiteOrder) {
    throw ConfigError("quadrature_order out of range");
  }
  if (cfg.grid_order < 2 || cfg.grid_order > kMaxHermiteOrder) {
    throw ConfigError("grid_order out of range");
  }
  if (!(cfg.window.hi > cfg.window.lo) || cfg.resolution < 8) {
    throw ConfigError("transport window must satisfy lo < hi with resolution >= 8");
  }
  if (cfg.probe.count < 1 || !(cfg.probe.hi > cfg.probe.lo)) {
    throw ConfigError("probe box must be nonempty");
  }
  return cfg;
}

SuiteConfig load_suite_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_suite_config(in);
}

bool CaseResult::pass() const {
  if (error) return false;
  const auto ok = [](const SlackRecord& r) { return r.pass; };
  return std::all_of(records.begin(), records.end(), ok) &&
         std::all_of(extra.begin(), extra.end(), ok);
}

bool SuiteResult::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass(); });
}

std::size_t SuiteResult::row_count() const {
  std::size_t n = 0;
  for (const CaseResult& c : cases) n += c.records.size();
  return n;
}

CaseResult run_case(const DensitySpec& spec, const SuiteConfig& config) {
  CaseResult out;
  out.id = spec.id;
  out.spec = spec.text;
  out.params = merged_params(spec, config.params);
  Stopwatch clock;
  const auto add = [&](SlackRecord r) {
    out.records.push_back(std::move(r));
    out.wall_seconds.push_back(clock.lap());
  };
  try {
    const LogDensity f = build_density(spec);
    const FamilyParams& p = out.params;
    out.membership = check_membership(f, p, config.probe);
    if (!out.membership.is_member) {
      add(membership_record(out.membership, p));
      return out;
    }
    const QuadratureRule rule = gaussian_rule(config.quadrature_order, f.dim());
    const FunctionalSet fs = compute_functionals(f, rule);
    clock.lap();

    Thm11Options opt;
    opt.window = config.window;
    opt.resolution = config.resolution;
    opt.probe = config.probe;
    opt.grid_order = config.grid_order;
    opt.sinkhorn = config.sinkhorn;
    add(verify_thm11(f, p, rule, opt));

    const LogDensity unit = normalize(f, rule);
    if (f.dim() == 1) {
      const TransportMap1D map = brenier_map_1d(f, config.window, config.resolution);
      add(deficit_lower_bound(f, map, rule));
      EigenvalueBoundCheck eig = eigenvalue_bound_check(f, map, p.M);
      out.extra.push_back(eig.contraction);
      add(eig.eigenvalue);
      add(poincare_check(
          f, p.epsilon, [&](const Vec& x) { return map.map_at(x(0)) - x(0); }, rule,
          1e-7, [&](const Vec& x) { return scalar_point(map.lambda_at(x(0))); }));
      add(hwi_check(unit, rule, w2_from_map(f, map, rule)));
      if (!config.output.map_dir.empty()) {
        std::filesystem::create_directories(config.output.map_dir);
        std::ofstream dump(std::filesystem::path(config.output.map_dir) / (spec.id + "_map.csv"));
        write_map_csv(map, dump);
      }
    } else {
      // Multi-dimensional cases: Poincare on a fixed smooth test function.
      add(poincare_check(
          f, p.epsilon,
          [](const Vec& x) { return x.sum() + 0.5 * std::sin(x(0)); }, rule, 1e-7,
          [](const Vec& x) {
            Vec g = Vec::Ones(x.size());
            g(0) += 0.5 * std::cos(x(0));
            return g;
          }));
    }
    add(verify_cor42(f, p, rule, 1e-9, config.probe));
    add(verify_improved_lsi(f, p, rule, 1e-9, config.probe));

    if (p.r && f.dim() == 1 && fs.deficit / fs.mass <= 1.0) {
      const LogDensity fhat = recenter(f, fs);
      FamilyParams pr = p;
      const MembershipReport lr = check_membership_lr(fhat, {p.epsilon, 1.0, p.r}, rule,
                                                      config.probe);
      pr.M = lr.lr_integral.value_or(p.M);
      const TransportMap1D map_hat = brenier_map_1d(fhat, config.window, config.resolution);
      add(verify_thm14(fhat, pr, rule, w2_from_map(fhat, map_hat, rule)));
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

SuiteResult run_suite(const SuiteConfig& config, int jobs) {
  SuiteResult result;
  result.cases.resize(config.corpus.size());
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(config.corpus.size())));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t k = next++; k < config.corpus.size(); k = next++) {
      result.cases[k] = run_case(config.corpus[k], config);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return result;
}

void write_csv(const SuiteResult& result, std::ostream& out) {
  out << "case_id,check,lhs,rhs,slack,tolerance,verdict\n";
  for (const CaseResult& c : result.cases) {
    for (const SlackRecord& r : c.records) csv_row(out, c.id, r);
    if (c.error) out << c.id << ",error,nan,nan,nan,nan,fail\n";
  }
}

void write_timing(const SuiteResult& result, std::ostream& out) {
  out << "case_id,check,wall_seconds\n";
  for (const CaseResult& c : result.cases) {
    for (std::size_t k = 0; k < c.records.size(); ++k) {
      out << c.id << ',' << c.records[k].name << ',' << format_double(c.wall_seconds[k]) << '\n';
    }
  }
}

void write_json(const SuiteResult& result, const SuiteConfig& config, std::ostream& out) {
  Json doc;
  doc["tool"] = "lsilab";
  Json cfg;
  cfg["quadrature_order"] = config.quadrature_order;
  cfg["window"] = {config.window.lo, config.window.hi};
  cfg["resolution"] = config.resolution;
  cfg["probe"] = {{"lo", config.probe.lo},
                  {"hi", config.probe.hi},
                  {"count", config.probe.count},
                  {"seed", config.probe.seed}};
  cfg["sinkhorn"] = {{"reg", config.sinkhorn.reg_epsilon},
                     {"schedule", config.sinkhorn.anneal_schedule},
                     {"max_iterations", config.sinkhorn.max_iterations},
                     {"tolerance", config.sinkhorn.convergence_tol},
                     {"resolution_floor", config.sinkhorn.resolution_floor},
                     {"grid_order", config.grid_order}};
  doc["config"] = std::move(cfg);
  Json cases = Json::array();
  for (const CaseResult& c : result.cases) {
    Json jc;
    jc["id"] = c.id;
    jc["spec"] = c.spec;
    Json params = {{"epsilon", c.params.epsilon}, {"M", c.params.M}};
    if (c.params.r) params["r"] = *c.params.r;
    jc["params"] = std::move(params);
    const MembershipReport& m = c.membership;
    Json jm = {{"is_member", m.is_member},
               {"min_eig", m.min_eig_observed},
               {"max_eig", m.max_eig_observed},
               {"envelope_used", m.envelope_used}};
    if (m.witness_point) jm["witness"] = vec_json(*m.witness_point);
    jc["membership"] = std::move(jm);
    try {
      const ConstantsRecord k = constants(c.params);
      Json jk = {{"C_thm11", k.C_thm11},       {"C_thm11_chain", k.C_thm11_chain},
                 {"C_M", k.C_M},               {"c_minorant", k.c_minorant},
                 {"t_star", k.t_star},         {"c_thm14", k.c_thm14},
                 {"C_bar", k.C_bar},           {"eta_opt", k.eta_opt},
                 {"C_improved", k.C_improved}, {"C_lemma", k.C_lemma}};
      if (k.beta) jk["beta"] = *k.beta;
      jc["constants"] = std::move(jk);
    } catch (const std::exception&) {
      jc["constants"] = nullptr;
    }
    Json recs = Json::array();
    for (const SlackRecord& r : c.records) recs.push_back(record_json(r));
    jc["records"] = std::move(recs);
    Json extra = Json::array();
    for (const SlackRecord& r : c.extra) extra.push_back(record_json(r));
    jc["companion_records"] = std::move(extra);
    jc["error"] = c.error ? Json(*c.error) : Json(nullptr);
    jc["verdict"] = c.pass() ? "pass" : "fail";
    cases.push_back(std::move(jc));
  }
  doc["cases"] = std::move(cases);
  std::size_t failed = 0;
  for (const CaseResult& c : result.cases) failed += c.pass() ? 0 : 1;
  doc["summary"] = {{"cases", result.cases.size()},
                    {"rows", result.row_count()},
                    {"failed_cases", failed},
                    {"verdict", result.pass() ? "pass" : "fail"}};
  out << doc.dump(2) << '\n';
}

std::vector<double> sharpness_grid(double a_min, double a_max, int steps) {
  if (!(a_min > 0.0) || !(a_max >= a_min) || !std::isfinite(a_max) || steps < 1) {
    throw InvalidArgument("sharpness range requires 0 < a_min <= a_max and steps >= 1");
  }
  if (steps == 1) return {a_max};
  if (a_min == a_max) throw InvalidArgument("sharpness range with several steps needs a_min < a_max");
  std::vector<double> out(steps);
  const double la = std::log(a_max);
  const double lb = std::log(a_min);
  for (int k = 0; k < steps; ++k) {
    out[k] = std::exp(la + (lb - la) * k / (steps - 1));
  }
  out.front() = a_max;
  out.back() = a_min;
  return out;
}

void write_sharpness_csv(const std::vector<SharpnessRow>& rows, std::ostream& out) {
  out << "a,deficit,w2,ratio\n";
  for (const SharpnessRow& r : rows) {
    out << format_double(r.a) << ',' << format_double(r.deficit) << ',' << format_double(r.w2)
        << ',' << format_double(r.ratio) << '\n';
  }
}

std::string functionals_json(const DensitySpec& spec, const FunctionalSet& fs, int order) {
  Json j;
  j["spec"] = spec.text;
  j["order"] = order;
  j["mass"] = fs.mass;
  j["barycenter"] = vec_json(fs.barycenter);
  j["entropy"] = fs.entropy;
  j["fisher"] = fs.fisher;
  j["deficit"] = fs.deficit;
  return j.dump(2);
}

std::string resolve_out_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return ".";
}

}  // namespace lsilab::report
