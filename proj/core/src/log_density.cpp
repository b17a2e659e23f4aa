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

#include "lsilab/log_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "lsilab/errors.hpp"

namespace lsilab {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) throw UnsupportedDimension(dim);
}

// Ascending eigenvalues of a symmetric matrix of size <= 3.
Vec symmetric_eigenvalues(const Mat& a) {
  if (a.rows() == 1) return a.col(0);
  Eigen::SelfAdjointEigenSolver<Mat> eig(a, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

// Point k (k >= 1) of a Cranley-Patterson rotated Halton sequence in [lo, hi]^dim.
class HaltonProbe {
 public:
  HaltonProbe(const ProbeSpec& spec, int dim) : spec_(spec), dim_(dim), shift_(dim) {
    shift_.setZero();
    if (spec.seed != 0) {
      std::mt19937_64 engine(spec.seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (int d = 0; d < dim; ++d) shift_(d) = u(engine);
    }
  }

  Vec point(std::uint64_t k) const {
    static constexpr int kBases[kMaxDim] = {2, 3, 5};
    Vec p(dim_);
    for (int d = 0; d < dim_; ++d) {
      double u = radical_inverse(k, kBases[d]) + shift_(d);
      if (u >= 1.0) u -= 1.0;
      p(d) = spec_.lo + (spec_.hi - spec_.lo) * u;
    }
    return p;
  }

 private:
  ProbeSpec spec_;
  int dim_;
  Vec shift_;
};

struct SampledExtremes {
  double min_eig = std::numeric_limits<double>::infinity();
  double max_eig = -std::numeric_limits<double>::infinity();
  Vec worst_point;
  double worst_margin = std::numeric_limits<double>::infinity();
};

// Scans the probe; `lower` / `upper` define the margin used to pick the
// witness point (upper may be +inf).
SampledExtremes scan_hessian(const LogDensity& f, const ProbeSpec& probe, double lower,
                             double upper) {
  if (probe.count <= 0 || !(probe.hi > probe.lo)) {
    throw InvalidArgument("probe needs a non-empty box and a positive point count");
  }
  HaltonProbe halton(probe, f.dim());
  SampledExtremes out;
  for (int k = 0; k < probe.count; ++k) {
    const Vec x = halton.point(static_cast<std::uint64_t>(k) + 1);
    const Vec ev = symmetric_eigenvalues(f.hess_h(x));
    const double lo = ev.minCoeff();
    const double hi = ev.maxCoeff();
    out.min_eig = std::min(out.min_eig, lo);
    out.max_eig = std::max(out.max_eig, hi);
    const double margin = std::min(lo - lower, upper - hi);
    if (margin < out.worst_margin) {
      out.worst_margin = margin;
      out.worst_point = x;
    }
  }
  return out;
}

}  // namespace

LogDensity::LogDensity(int dim, Potential h, Gradient grad_h, Hessian hess_h, std::string label)
    : dim_(dim),
      h_(std::move(h)),
      grad_(std::move(grad_h)),
      hess_(std::move(hess_h)),
      label_(std::move(label)) {
  check_dim(dim);
  if (!h_ || !grad_ || !hess_) throw InvalidArgument("LogDensity: all three oracles are required");
}

Mat LogDensity::hess_h(const Vec& x) const {
  Mat a = hess_(x);
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw EvaluationError("Hessian oracle returned a matrix of the wrong size");
  }
  if (!a.allFinite()) throw EvaluationError("non-finite Hessian entry");
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw EvaluationError("Hessian oracle is not symmetric (asymmetry " + fmt(asym) + ")");
  }
  return 0.5 * (a + a.transpose());
}

LogDensity quadratic_family(double a, int dim) {
  check_dim(dim);
  if (!(a > -0.5)) throw InvalidArgument("quadratic_family: need a > -1/2, got " + fmt(a));
  const double n = dim;
  const double log_norm = 0.5 * n * std::log1p(2.0 * a);
  LogDensity f(
      dim, [a, log_norm](const Vec& x) { return a * x.squaredNorm() - log_norm; },
      [a](const Vec& x) -> Vec { return 2.0 * a * x; },
      [a, dim](const Vec&) -> Mat { return 2.0 * a * Mat::Identity(dim, dim); },
      "quadratic(a=" + fmt(a) + ",dim=" + std::to_string(dim) + ")");
  ClosedForm cf;
  cf.mass = 1.0;
  cf.barycenter = Vec::Zero(dim);
  cf.entropy = log_norm - n * a / (2.0 * a + 1.0);
  cf.fisher = 4.0 * n * a * a / (2.0 * a + 1.0);
  f.set_closed_form(cf).set_envelope(HessianEnvelope{2.0 * a, 2.0 * a});
  return f;
}

LogDensity log_linear(const Vec& b) {
  const int dim = static_cast<int>(b.size());
  check_dim(dim);
  const double half_sq = 0.5 * b.squaredNorm();
  std::string label = "loglinear(b=";
  for (int d = 0; d < dim; ++d) label += (d ? "," : "") + fmt(b(d));
  label += ")";
  LogDensity f(
      dim, [b, half_sq](const Vec& x) { return -b.dot(x) + half_sq; },
      [b](const Vec&) -> Vec { return -b; },
      [dim](const Vec&) -> Mat { return Mat::Zero(dim, dim); }, std::move(label));
  ClosedForm cf;
  cf.mass = 1.0;
  cf.barycenter = b;
  cf.entropy = half_sq;
  cf.fisher = b.squaredNorm();
  f.set_closed_form(cf).set_envelope(HessianEnvelope{0.0, 0.0});
  return f;
}

LogDensity perturbed_quadratic(double a, double amplitude, double frequency, int dim) {
  check_dim(dim);
  const double spread = std::abs(amplitude) * frequency * frequency;
  if (!(2.0 * a - spread > -1.0)) {
    throw InvalidArgument("perturbed_quadratic: Hessian envelope lower end " +
                          fmt(2.0 * a - spread) + " must exceed -1");
  }
  // The density factorizes, so one 1D normalizing integral suffices.
  static const QuadratureRule kRule = hermite_rule(256);
  const double z1 = integrate(kRule, [&](const Vec& t) {
    return std::exp(-a * t(0) * t(0) - amplitude * std::cos(frequency * t(0)));
  });
  const double log_z = dim * std::log(z1);
  LogDensity f(
      dim,
      [=](const Vec& x) {
        double s = a * x.squaredNorm() + log_z;
        for (int d = 0; d < x.size(); ++d) s += amplitude * std::cos(frequency * x(d));
        return s;
      },
      [=](const Vec& x) -> Vec {
        Vec g(x.size());
        for (int d = 0; d < x.size(); ++d) {
          g(d) = 2.0 * a * x(d) - amplitude * frequency * std::sin(frequency * x(d));
        }
        return g;
      },
      [=](const Vec& x) -> Mat {
        Mat hm = Mat::Zero(x.size(), x.size());
        for (int d = 0; d < x.size(); ++d) {
          hm(d, d) = 2.0 * a - amplitude * frequency * frequency * std::cos(frequency * x(d));
        }
        return hm;
      },
      "perturbed(a=" + fmt(a) + ",amp=" + fmt(amplitude) + ",freq=" + fmt(frequency) +
          ",dim=" + std::to_string(dim) + ")");
  f.set_envelope(HessianEnvelope{2.0 * a - spread, 2.0 * a + spread});
  return f;
}

LogDensity tilt(const LogDensity& f, const Vec& b) {
  if (b.size() != f.dim()) throw InvalidArgument("tilt: vector dimension mismatch");
  const double half_sq = 0.5 * b.squaredNorm();
  std::string label = f.label() + "*tilt(";
  for (int d = 0; d < b.size(); ++d) label += (d ? "," : "") + fmt(b(d));
  label += ")";
  LogDensity out(
      f.dim(), [f, b, half_sq](const Vec& x) { return f.h(x) - b.dot(x) + half_sq; },
      [f, b](const Vec& x) -> Vec { return f.grad_h(x) - b; },
      [f](const Vec& x) -> Mat { return f.hess_h(x); }, std::move(label));
  out.set_envelope(f.envelope());
  return out;
}

LogDensity scale(const LogDensity& f, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("scale: need c > 0, got " + fmt(c));
  const double log_c = std::log(c);
  LogDensity out(
      f.dim(), [f, log_c](const Vec& x) { return f.h(x) - log_c; },
      [f](const Vec& x) -> Vec { return f.grad_h(x); },
      [f](const Vec& x) -> Mat { return f.hess_h(x); },
      c == 1.0 ? f.label() : fmt(c) + "*" + f.label());
  out.set_envelope(f.envelope());
  if (f.closed_form()) {
    ClosedForm cf = *f.closed_form();
    // Mass, entropy and Fisher information are positively 1-homogeneous.
    cf.mass *= c;
    cf.entropy *= c;
    cf.fisher *= c;
    out.set_closed_form(cf);
  }
  return out;
}

LogDensity normalize(const LogDensity& f, const QuadratureRule& rule) {
  if (rule.dim != f.dim()) throw InvalidArgument("normalize: rule dimension mismatch");
  const double m = integrate(rule, [&](const Vec& x) { return f.value(x); });
  if (!(m > std::numeric_limits<double>::epsilon())) throw DegenerateMass(m);
  return scale(f, 1.0 / m).set_label(f.label());
}

void FamilyParams::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("family parameter epsilon must be positive");
  if (!(M > 0.0)) throw InvalidArgument("family parameter M must be positive");
  if (r && !(*r > 1.0)) throw InvalidArgument("family parameter r must exceed 1");
}

double positive_part_norm(const Mat& a) {
  const Vec ev = symmetric_eigenvalues(a);
  return std::max(ev.maxCoeff(), 0.0);
}

MembershipReport check_membership(const LogDensity& f, const FamilyParams& params,
                                  const ProbeSpec& probe) {
  params.validate();
  const double lower = params.lower_bound();
  const SampledExtremes s = scan_hessian(f, probe, lower, params.M);

  MembershipReport report;
  report.probe = probe;
  report.min_eig_observed = s.min_eig;
  report.max_eig_observed = s.max_eig;
  report.witness_point = s.worst_point;
  bool ok = s.min_eig >= lower - kMembershipTolerance &&
            s.max_eig <= params.M + kMembershipTolerance;
  if (const auto& env = f.envelope()) {
    report.envelope_used = true;
    ok = ok && env->min_eig >= lower - kMembershipTolerance &&
         env->max_eig <= params.M + kMembershipTolerance;
  }
  report.is_member = ok;
  return report;
}

MembershipReport check_membership_lr(const LogDensity& f, const FamilyParams& params,
                                     const QuadratureRule& rule, const ProbeSpec& probe) {
  params.validate();
  if (!params.r) throw InvalidArgument("check_membership_lr: family parameter r is required");
  if (rule.dim != f.dim()) throw InvalidArgument("check_membership_lr: rule dimension mismatch");
  const double r = *params.r;
  const double lower = params.lower_bound();
  const SampledExtremes s =
      scan_hessian(f, probe, lower, std::numeric_limits<double>::infinity());

  const Mat id = Mat::Identity(f.dim(), f.dim());
  const double lr = integrate(rule, [&](const Vec& x) {
    const double fx = f.value(x);
    if (fx == 0.0) return 0.0;
    return std::pow(positive_part_norm(f.hess_h(x) + id), r) * fx;
  });

  MembershipReport report;
  report.probe = probe;
  report.min_eig_observed = s.min_eig;
  report.max_eig_observed = s.max_eig;
  report.witness_point = s.worst_point;
  report.lr_integral = lr;
  bool ok = s.min_eig >= lower - kMembershipTolerance && lr <= params.M + kMembershipTolerance;
  if (const auto& env = f.envelope()) {
    report.envelope_used = true;
    ok = ok && env->min_eig >= lower - kMembershipTolerance;
  }
  report.is_member = ok;
  return report;
}

}  // namespace lsilab
