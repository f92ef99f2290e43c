// Copyright 2026 The hypertail Authors
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

#ifndef HYPERTAIL_LOG_SPACE_HPP_
#define HYPERTAIL_LOG_SPACE_HPP_

#include <cmath>

#include "hypertail/population.hpp"

// Floating-point hypergeometric probabilities for populations of any size,
// evaluated in log space with Loader's saddle-point expansion (Stirling
// remainders plus the deviance term bd0). Relative accuracy is around 1e-13
// for N up to 1e8, far beyond what log-gamma differences achieve.
namespace hypertail::exact {

struct LogProb {
  double log_value;  // -infinity for an impossible event

  double value() const { return std::exp(log_value); }
};

/// Error of Stirling's approximation: ln(n!) - [(n + 1/2) ln n - n + ln sqrt(2 pi)].
double stirling_remainder(double n);

/// Deviance term x ln(x / np) + np - x, evaluated without cancellation.
double binomial_deviance(double x, double np);

/// ln of the binomial probability C(n, x) p^x q^(n-x), with q = 1 - p
/// passed separately to keep it exact.
double log_binomial_pmf(double x, double n, double p, double q);

LogProb log_pmf(const Population& pop, Count n, Count i);
LogProb log_lower_tail(const Population& pop, Count n, Count k);
LogProb log_upper_tail(const Population& pop, Count n, Count k);
/// P[|i - nM/N| >= c]; thresholds are resolved exactly as in two_sided_exact.
LogProb log_two_sided(const Population& pop, Count n, double deviation);

}  // namespace hypertail::exact

#endif  // HYPERTAIL_LOG_SPACE_HPP_
