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

#ifndef LSILAB_NORMAL_HPP_
#define LSILAB_NORMAL_HPP_

// Standard normal density, distribution and quantile functions with full
// relative accuracy in both tails.

namespace lsilab::normal {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

double pdf(double x);
// P(X <= x)
double cdf(double x);
// P(X > x), accurate where cdf(x) rounds to 1.
double sf(double x);
// x with cdf(x) = p, for p in (0, 1).
double quantile(double p);
// x with sf(x) = s, for s in (0, 1).
double upper_quantile(double s);

}  // namespace lsilab::normal

#endif  // LSILAB_NORMAL_HPP_
