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

#include "lsilab/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <numeric>

#include "lsilab/errors.hpp"
#include "lsilab/normal.hpp"

namespace lsilab {
namespace {

constexpr double kIntermediateTol = 1e-5;

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index d = 0; d < a.size(); ++d) {
    if (a(d) != b(d)) return a(d) < b(d);
  }
  return false;
}

double log_sum_exp(const double* v, std::size_t n) {
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) mx = std::max(mx, v[k]);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += std::exp(v[k] - mx);
  return mx + std::log(s);
}

// Squared-distance cost, row-major rows(a) x rows(b).
std::vector<double> cost_matrix(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  std::vector<double> c(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i * b.size() + j] = (a.points()[i] - b.points()[j]).squaredNorm();
    }
  }
  return c;
}

std::vector<double> transpose(const std::vector<double>& c, std::size_t rows, std::size_t cols) {
  std::vector<double> t(c.size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[j * rows + i] = c[i * cols + j];
  }
  return t;
}

std::vector<double> logs(const std::vector<double>& w) {
  std::vector<double> out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    out[k] = w[k] > 0.0 ? std::log(w[k]) : -std::numeric_limits<double>::infinity();
  }
  return out;
}

// Soft c-transform: out_i = -reg * log sum_j exp(logw_j + (pot_j - C_ij) / reg).
void soft_transform(const std::vector<double>& cost, std::size_t rows, std::size_t cols,
                    const std::vector<double>& logw, const std::vector<double>& pot, double reg,
                    std::vector<double>& out, std::vector<double>& scratch) {
  scratch.resize(cols);
  out.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* c = &cost[i * cols];
    for (std::size_t j = 0; j < cols; ++j) scratch[j] = logw[j] + (pot[j] - c[j]) / reg;
    out[i] = -reg * log_sum_exp(scratch.data(), cols);
  }
}

// L1 violation of the marginal whose potential is `pot` when the partner
// potential is fixed and `updated` is the exact c-transform.
double violation(const std::vector<double>& w, const std::vector<double>& pot,
                 const std::vector<double>& updated, double reg) {
  double v = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    v += w[i] * std::abs(std::expm1((pot[i] - updated[i]) / reg));
  }
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Entropic transport between two different measures.
class CrossProblem {
 public:
  CrossProblem(const DiscreteMeasure& a, const DiscreteMeasure& b)
      : wa_(a.weights()),
        wb_(b.weights()),
        la_(logs(wa_)),
        lb_(logs(wb_)),
        n_(a.size()),
        m_(b.size()),
        c_(cost_matrix(a, b)),
        ct_(transpose(c_, n_, m_)),
        f_(n_, 0.0),
        g_(m_, 0.0) {}

  // Runs until the violation is at most `tol`; returns {iterations, violation}.
  std::pair<int, double> solve(double reg, double tol, int budget) {
    double viol = std::numeric_limits<double>::infinity();
    int it = 0;
    while (it < budget) {
      soft_transform(ct_, m_, n_, la_, f_, reg, g_, scratch_);
      soft_transform(c_, n_, m_, lb_, g_, reg, next_, scratch_);
      ++it;
      if (it % 10 == 0 || it == budget) viol = violation(wa_, f_, next_, reg);
      f_.swap(next_);
      if (viol <= tol) break;
    }
    return {it, viol};
  }

  double value() const { return dot(wa_, f_) + dot(wb_, g_); }

 private:
  std::vector<double> wa_, wb_, la_, lb_;
  std::size_t n_, m_;
  std::vector<double> c_, ct_;
  std::vector<double> f_, g_, next_, scratch_;
};

// Entropic transport of a measure to itself with symmetric averaged updates.
class SelfProblem {
 public:
  explicit SelfProblem(const DiscreteMeasure& a)
      : w_(a.weights()), lw_(logs(w_)), n_(a.size()), c_(cost_matrix(a, a)), f_(n_, 0.0) {}

  std::pair<int, double> solve(double reg, double tol, int budget) {
    double viol = std::numeric_limits<double>::infinity();
    int it = 0;
    while (it < budget) {
      soft_transform(c_, n_, n_, lw_, f_, reg, next_, scratch_);
      ++it;
      if (it % 10 == 0 || it == budget) viol = violation(w_, f_, next_, reg);
      for (std::size_t i = 0; i < n_; ++i) f_[i] = 0.5 * (f_[i] + next_[i]);
      if (viol <= tol) break;
    }
    return {it, viol};
  }

  double value() const { return 2.0 * dot(w_, f_); }

 private:
  std::vector<double> w_, lw_;
  std::size_t n_;
  std::vector<double> c_;
  std::vector<double> f_, next_, scratch_;
};

struct SortedAtoms {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> cum;  // cum[k] = w[0] + ... + w[k]
  std::vector<double> tail;  // tail[k] = w[k] + ... + w[n-1]
};

SortedAtoms sort_atoms(const DiscreteMeasure& m) {
  if (m.dim() != 1) throw UnsupportedDimension(m.dim());
  std::vector<std::size_t> idx(m.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return m.points()[a](0) < m.points()[b](0); });
  SortedAtoms s;
  for (std::size_t k : idx) {
    s.x.push_back(m.points()[k](0));
    s.w.push_back(m.weights()[k]);
  }
  const std::size_t n = s.w.size();
  s.cum.resize(n);
  s.tail.resize(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) s.cum[k] = (acc += s.w[k]);
  acc = 0.0;
  for (std::size_t k = n; k-- > 0;) s.tail[k] = (acc += s.w[k]);
  return s;
}

double atom_quantile(const SortedAtoms& s, double q, double q_upper) {
  const std::size_t n = s.x.size();
  if (q <= 0.5) {
    const auto it = std::lower_bound(s.cum.begin(), s.cum.end(), q);
    return s.x[std::min<std::size_t>(it - s.cum.begin(), n - 1)];
  }
  // Smallest k with tail[k+1] <= q_upper.
  std::size_t k = 0;
  auto it = std::lower_bound(s.tail.begin() + 1, s.tail.end(), q_upper, std::greater<double>());
  k = static_cast<std::size_t>(it - s.tail.begin()) - 1;
  return s.x[std::min(k, n - 1)];
}

template <typename QuantileA, typename QuantileB>
double probit_midpoint(QuantileA&& qa, QuantileB&& qb, int count) {
  if (count < 1) throw InvalidArgument("quantile_count must be positive");
  const double dz = 2.0 * kProbitSpan / count;
  double total = 0.0;
  double sum = 0.0;
  for (int k = 0; k < count; ++k) {
    const double z = -kProbitSpan + (k + 0.5) * dz;
    const double w = normal::pdf(z);
    const double q = normal::cdf(z);
    const double qu = normal::sf(z);
    const double d = qa(q, qu) - qb(q, qu);
    total += w;
    sum += w * d * d;
  }
  return std::sqrt(sum / total);
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<Vec> points, std::vector<double> weights)
    : dim_(dim), points_(std::move(points)), weights_(std::move(weights)) {
  if (dim_ < 1 || dim_ > kMaxDim) throw UnsupportedDimension(dim_);
  if (points_.empty() || points_.size() != weights_.size()) {
    throw InvalidMeasureError("discrete measure needs matching, nonempty points and weights");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (!(weights_[k] >= 0.0) || !std::isfinite(weights_[k])) {
      throw InvalidMeasureError("discrete measure has a negative or non-finite weight");
    }
    if (points_[k].size() != dim_ || !points_[k].allFinite()) {
      throw InvalidMeasureError("discrete measure point has wrong dimension or is not finite");
    }
    sum += weights_[k];
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw InvalidMeasureError("discrete measure weights sum to " + std::to_string(sum));
  }
  std::vector<const Vec*> sorted;
  for (const Vec& p : points_) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](const Vec* a, const Vec* b) { return lex_less(*a, *b); });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (!lex_less(*sorted[k - 1], *sorted[k])) {
      throw InvalidMeasureError("discrete measure has duplicate points");
    }
  }
}

DiscreteMeasure discretize(const LogDensity& f, const QuadratureRule& rule, double prune) {
  if (rule.dim != f.dim()) throw InvalidArgument("discretize: rule dimension mismatch");
  std::vector<double> raw(rule.size());
  double total = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = f.value(rule.nodes[i]);
    if (!std::isfinite(v)) throw NonFiniteIntegrand(rule.nodes[i], v);
    raw[i] = rule.weights[i] * v;
    total += raw[i];
  }
  if (!(total > 0.0)) throw DegenerateMass(total);
  std::vector<Vec> points;
  std::vector<double> weights;
  double kept = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (raw[i] / total < prune) continue;
    points.push_back(rule.nodes[i]);
    weights.push_back(raw[i]);
    kept += raw[i];
  }
  for (double& w : weights) w /= kept;
  return DiscreteMeasure(f.dim(), std::move(points), std::move(weights));
}

void SinkhornConfig::validate() const {
  if (!(reg_epsilon > 0.0)) throw InvalidArgument("sinkhorn reg_epsilon must be positive");
  if (!(convergence_tol > 0.0)) throw InvalidArgument("sinkhorn convergence_tol must be positive");
  if (max_iterations < 1) throw InvalidArgument("sinkhorn max_iterations must be positive");
  for (std::size_t k = 0; k < anneal_schedule.size(); ++k) {
    if (!(anneal_schedule[k] > 0.0)) {
      throw InvalidArgument("sinkhorn anneal schedule entries must be positive");
    }
    if (k > 0 && !(anneal_schedule[k] < anneal_schedule[k - 1])) {
      throw InvalidArgument("sinkhorn anneal schedule must be strictly decreasing");
    }
  }
}

double mean_nearest_spacing(const DiscreteMeasure& m) {
  if (m.size() < 2) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != i) best = std::min(best, (m.points()[i] - m.points()[j]).squaredNorm());
    }
    acc += m.weights()[i] * std::sqrt(best);
  }
  return acc;
}

SinkhornResult w2_sinkhorn(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           const SinkhornConfig& config) {
  config.validate();
  if (mu.dim() != nu.dim()) throw InvalidArgument("w2_sinkhorn: dimension mismatch");
  SinkhornResult result;
  double final_reg = config.reg_epsilon;
  if (config.resolution_floor) {
    const double h = std::max(mean_nearest_spacing(mu), mean_nearest_spacing(nu));
    final_reg = std::max(final_reg, h * h);
  }
  result.effective_reg = final_reg;
  std::vector<double> stages;
  for (double s : config.anneal_schedule) {
    if (s > final_reg) stages.push_back(s);
  }
  stages.push_back(final_reg);

  CrossProblem cross(mu, nu);
  SelfProblem self_mu(mu);
  SelfProblem self_nu(nu);
  int used = 0;
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const bool last = k + 1 == stages.size();
    const double reg = stages[k];
    const double tol = last ? config.convergence_tol : std::max(config.convergence_tol, kIntermediateTol);
    double worst = 0.0;
    for (int p = 0; p < 3; ++p) {
      const int budget = config.max_iterations - used;
      if (budget <= 0) throw ConvergenceError(used, worst, reg);
      const auto [it, viol] = p == 0   ? cross.solve(reg, tol, budget)
                              : p == 1 ? self_mu.solve(reg, tol, budget)
                                       : self_nu.solve(reg, tol, budget);
      used += it;
      worst = std::max(worst, viol);
      if (viol > tol) throw ConvergenceError(used, viol, reg);
    }
    const double div = cross.value() - 0.5 * (self_mu.value() + self_nu.value());
    result.stages.emplace_back(reg, std::sqrt(std::max(0.0, div)));
    if (last) {
      result.divergence = div;
      result.w2 = std::sqrt(std::max(0.0, div));
      result.marginal_violation = worst;
    }
  }
  result.iterations = used;
  return result;
}

double w2_gaussian_rescaled(double a, int n) {
  if (!(a > -0.5)) throw InvalidArgument("w2_gaussian_rescaled: a must exceed -1/2");
  if (n < 1) throw InvalidArgument("w2_gaussian_rescaled: n must be positive");
  return std::sqrt(static_cast<double>(n)) * std::abs(std::expm1(-0.5 * std::log1p(2.0 * a)));
}

double w2_quantile_1d(const CdfTable& mu, const CdfTable& nu, int quantile_count) {
  return probit_midpoint([&](double q, double qu) { return mu.quantile(q, qu); },
                         [&](double q, double qu) { return nu.quantile(q, qu); }, quantile_count);
}

double w2_quantile_1d(const CdfTable& mu, const DiscreteMeasure& nu, int quantile_count) {
  const SortedAtoms s = sort_atoms(nu);
  return probit_midpoint([&](double q, double qu) { return mu.quantile(q, qu); },
                         [&](double q, double qu) { return atom_quantile(s, q, qu); },
                         quantile_count);
}

double w2_quantile_1d(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const SortedAtoms a = sort_atoms(mu);
  const SortedAtoms b = sort_atoms(nu);
  // Walk the merged breakpoints of the two quantile step functions.
  std::size_t i = 0, j = 0;
  double prev = 0.0;
  double sum = 0.0;
  while (i < a.x.size() && j < b.x.size()) {
    const double next = std::min(a.cum[i], b.cum[j]);
    const double d = a.x[i] - b.x[j];
    sum += (next - prev) * d * d;
    prev = next;
    if (a.cum[i] <= next) ++i;
    if (b.cum[j] <= next) ++j;
  }
  return std::sqrt(sum);
}

}  // namespace lsilab
