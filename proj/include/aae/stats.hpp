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

#ifndef AAE_STATS_HPP_
#define AAE_STATS_HPP_

namespace aae {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double ibeta(double a, double b, double x);

/// Inverse of ibeta in x for fixed (a, b): smallest x with I_x(a, b) >= q,
/// resolved to 1e-10 or better.
double ibeta_inv(double a, double b, double q);

/// Standard normal quantile.
double normal_quantile(double p);

/// Quantile of the chi-square distribution with one degree of freedom.
double chi_square_quantile_1df(double p);

}  // namespace aae

#endif  // AAE_STATS_HPP_
