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

#ifndef LSILAB_SLACK_RECORD_HPP_
#define LSILAB_SLACK_RECORD_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lsilab {

struct ContextEntry {
  std::string key;
  double value;
};

// One verified instance of an inequality lhs <= rhs.
//
// slack = rhs - lhs and pass <=> slack >= -tolerance. Identities are
// recorded with lhs = |difference| and rhs = 0, the two compared values
// going into the context.
struct SlackRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<ContextEntry> context;

  static SlackRecord inequality(std::string name, double lhs, double rhs, double tolerance);
  static SlackRecord identity(std::string name, double left, double right, double tolerance);

  SlackRecord& with(std::string key, double value) {
    context.push_back({std::move(key), value});
    return *this;
  }
  std::optional<double> find(const std::string& key) const;
};

}  // namespace lsilab

#endif  // LSILAB_SLACK_RECORD_HPP_
