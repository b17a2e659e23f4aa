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

#ifndef LSILAB_ERRORS_HPP_
#define LSILAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

#include "lsilab/types.hpp"

namespace lsilab {

// Bad parameter values (a <= -1/2, order out of range, c <= 0, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedDimension : public InvalidArgument {
 public:
  explicit UnsupportedDimension(int dim)
      : InvalidArgument("unsupported dimension " + std::to_string(dim) +
                        " (expected 1, 2 or 3)"),
        dim_(dim) {}
  int dim() const { return dim_; }

 private:
  int dim_;
};

// An oracle (h, grad h, Hessian) produced something unusable.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteIntegrand : public EvaluationError {
 public:
  NonFiniteIntegrand(const Vec& node, double value);
  const Vec& node() const { return node_; }
  double value() const { return value_; }

 private:
  Vec node_;
  double value_;
};

class DegenerateMass : public std::runtime_error {
 public:
  explicit DegenerateMass(double mass);
  double mass() const { return mass_; }

 private:
  double mass_;
};

class WindowCoverageError : public std::runtime_error {
 public:
  explicit WindowCoverageError(double outside_mass);
  double outside_mass() const { return outside_mass_; }

 private:
  double outside_mass_;
};

class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DegenerateMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidEigenvalueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidMeasureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(int iterations, double violation, double reg);
  int iterations() const { return iterations_; }
  double violation() const { return violation_; }
  double reg() const { return reg_; }

 private:
  int iterations_;
  double violation_;
  double reg_;
};

// A verification was requested on a density that does not satisfy the
// hypotheses of the inequality being checked.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfRegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lsilab

#endif  // LSILAB_ERRORS_HPP_
