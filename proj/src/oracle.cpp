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

#include "aae/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "aae/rng.hpp"

namespace aae {

namespace {

void check_args(std::int64_t m, double r, std::int64_t shots) {
  if (shots < 1) throw std::invalid_argument("measure: shots must be >= 1");
  if (m < 0) throw std::invalid_argument("measure: m must be >= 0");
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("measure: r outside (0, 1]");
}

}  // namespace

MeasurementBatch SamplingOracle::measure(std::int64_t m, double r, std::int64_t shots) {
  check_args(m, r, shots);
  const double q = grover_probability(problem_.p_true, m, r);
  const std::int64_t good = binomial_draw(rng_, shots, q);
  charge(m, shots);
  return {m, r, shots, good};
}

MeasurementBatch ExactOracle::measure(std::int64_t m, double r, std::int64_t shots) {
  check_args(m, r, shots);
  const double q = grover_probability(problem_.p_true, m, r);
  const std::int64_t good = std::llround(static_cast<double>(shots) * q);
  charge(m, shots);
  return {m, r, shots, good};
}

}  // namespace aae
