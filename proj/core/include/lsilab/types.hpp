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

#ifndef LSILAB_TYPES_HPP_
#define LSILAB_TYPES_HPP_

#include <Eigen/Core>

namespace lsilab {

// Every density in this library lives in R^1, R^2 or R^3. Vectors and
// matrices are dynamically sized with a fixed upper bound so they never
// touch the heap.
inline constexpr int kMaxDim = 3;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxDim, kMaxDim>;

inline Vec scalar_point(double x) {
  Vec v(1);
  v(0) = x;
  return v;
}

}  // namespace lsilab

#endif  // LSILAB_TYPES_HPP_
