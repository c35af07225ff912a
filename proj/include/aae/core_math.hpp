// Copyright 2026 The aae Authors. All rights reserved.
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

#ifndef AAE_CORE_MATH_HPP_
#define AAE_CORE_MATH_HPP_

#include <cstdint>

namespace aae {

// Absolute tolerance for boundary classification and for absorbing floating
// drift before arcsin/sqrt domain checks. Anything further outside a domain
// than this is treated as a caller bug and throws.
inline constexpr double kBoundaryTol = 1e-12;

/// Confidence interval for the rotation angle theta = arcsin(sqrt(p)),
/// always a sub-interval of [0, pi/2].
struct ThetaInterval {
  double lo{0.0};
  double hi{0.0};
  double width() const { return hi - lo; }
};

/// Confidence interval for a probability, a sub-interval of [0, 1].
struct ProbInterval {
  double lo{0.0};
  double hi{0.0};
  double width() const { return hi - lo; }
  bool contains(double p) const { return lo <= p && p <= hi; }
};

/// Identifies one monotone branch of sin^2((2m+1)*theta) on [0, pi/2]:
/// branch k covers [k/(2m+1) * pi/2, (k+1)/(2m+1) * pi/2], 0 <= k <= 2m.
/// Stores m rather than the branch width so no pi/2 division error
/// accumulates.
struct PeriodIndex {
  std::int64_t k{0};
  std::int64_t m{0};
};

/// Length (pi/2)/(2m+1) of one monotone branch at iteration count m.
double period_length(std::int64_t m);

/// arcsin(sqrt(p)), in [0, pi/2]. Inputs within kBoundaryTol outside [0, 1]
/// are clamped; anything further out throws std::domain_error.
double theta_from_p(double p);

/// sin^2(theta) for theta in [0, pi/2]. Inverse of theta_from_p.
double p_from_theta(double theta);

/// Probability of observing a good state after m Grover iterations with the
/// amplitude scaled by adjustment factor r:
///   sin^2((2m+1) * arcsin(sqrt(r * p))).
double grover_probability(double p, std::int64_t m, double r);

/// Maps a confidence interval for q = sin^2((2m+1)*theta) back to the unique
/// theta interval inside branch k. For even k the branch is increasing, for
/// odd k decreasing; the result always lies inside the branch.
ThetaInterval invert_interval(const ProbInterval& ci, const PeriodIndex& period);

/// theta -> arcsin(sqrt(r * sin^2(theta))) for r in [0, 1]. Contracts
/// distances (never expands them) and is <= theta pointwise.
double shrink_angle(double theta, double r);

/// theta -> arcsin(sqrt(sin^2(theta) / r)), the inverse of shrink_angle.
/// Callers must keep sin^2(theta)/r <= 1/2 (the adaptive loop's cap does);
/// a ratio beyond 1 signals a missing cap upstream and throws.
double stretch_angle(double theta, double r);

/// arcsin(sqrt(|p1 - p2|)), an upper bound for
/// |arcsin(sqrt(p1)) - arcsin(sqrt(p2))|.
double arcsin_sqrt_diff_bound(double p1, double p2);

}  // namespace aae

#endif  // AAE_CORE_MATH_HPP_
