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

#include "aae/core_math.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aae {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Clamps x into [0, 1] when it is within kBoundaryTol outside (floating
// drift); a larger excursion is a logic error upstream.
double clamp_unit(double x, const char* what) {
  if (x < 0.0) {
    if (x < -kBoundaryTol) {
      throw std::domain_error(std::string(what) + " below 0: " + std::to_string(x));
    }
    return 0.0;
  }
  if (x > 1.0) {
    if (x > 1.0 + kBoundaryTol) {
      throw std::domain_error(std::string(what) + " above 1: " + std::to_string(x));
    }
    return 1.0;
  }
  return x;
}

double asin_sqrt(double x, const char* what) { return std::asin(std::sqrt(clamp_unit(x, what))); }

}  // namespace

double period_length(std::int64_t m) {
  return kHalfPi / static_cast<double>(2 * m + 1);
}

double theta_from_p(double p) { return asin_sqrt(p, "probability"); }

double p_from_theta(double theta) {
  if (theta < -kBoundaryTol || theta > kHalfPi + kBoundaryTol) {
    throw std::domain_error("theta outside [0, pi/2]: " + std::to_string(theta));
  }
  const double s = std::sin(theta);
  return clamp_unit(s * s, "sin^2(theta)");
}

double grover_probability(double p, std::int64_t m, double r) {
  if (m < 0) throw std::domain_error("iteration count must be >= 0");
  if (r <= 0.0 || r > 1.0 + kBoundaryTol) {
    throw std::domain_error("adjustment factor outside (0, 1]: " + std::to_string(r));
  }
  clamp_unit(p, "probability");
  const double theta = asin_sqrt(r * p, "r*p");
  const double s = std::sin(static_cast<double>(2 * m + 1) * theta);
  return clamp_unit(s * s, "grover probability");
}

ThetaInterval invert_interval(const ProbInterval& ci, const PeriodIndex& period) {
  if (!(ci.lo <= ci.hi)) throw std::domain_error("probability interval reversed");
  if (period.m < 0 || period.k < 0 || period.k > 2 * period.m) {
    throw std::domain_error("period index outside [0, 2m]");
  }
  const double denom = static_cast<double>(2 * period.m + 1);
  const double lo_angle = asin_sqrt(ci.lo, "interval lower end");
  const double hi_angle = asin_sqrt(ci.hi, "interval upper end");
  if (period.k % 2 == 0) {
    const double offset = static_cast<double>(period.k) * kHalfPi;
    return {(lo_angle + offset) / denom, (hi_angle + offset) / denom};
  }
  const double offset = static_cast<double>(period.k + 1) * kHalfPi;
  return {(offset - hi_angle) / denom, (offset - lo_angle) / denom};
}

double shrink_angle(double theta, double r) {
  if (theta < -kBoundaryTol || theta > kHalfPi + kBoundaryTol) {
    throw std::domain_error("theta outside [0, pi/2]");
  }
  if (r < -kBoundaryTol || r > 1.0 + kBoundaryTol) {
    throw std::domain_error("adjustment factor outside [0, 1]");
  }
  const double s = std::sin(theta);
  return asin_sqrt(clamp_unit(r, "adjustment") * s * s, "r*sin^2(theta)");
}

double stretch_angle(double theta, double r) {
  if (r <= 0.0 || r > 1.0 + kBoundaryTol) {
    throw std::domain_error("adjustment factor outside (0, 1]");
  }
  const double s = std::sin(theta);
  const double ratio = s * s / r;
  if (ratio > 1.0 + kBoundaryTol) {
    throw std::domain_error("sin^2(theta)/r above 1, cap not applied upstream: " +
                            std::to_string(ratio));
  }
  return asin_sqrt(ratio, "sin^2(theta)/r");
}

double arcsin_sqrt_diff_bound(double p1, double p2) {
  clamp_unit(p1, "p1");
  clamp_unit(p2, "p2");
  return asin_sqrt(std::fabs(p1 - p2), "|p1-p2|");
}

}  // namespace aae
