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

#ifndef HYPERTAIL_INFERENCE_HPP_
#define HYPERTAIL_INFERENCE_HPP_

#include <gmpxx.h>

#include <string_view>

#include "hypertail/population.hpp"

/// Confidence intervals for the unknown positive count M and sample-size
/// planning, derived from the Serfling-type bounds B2 (n <= N/2) and B4
/// (n > N/2).
///
/// The interval is always [iN/n - c, iN/n + c]. Given a miscoverage delta
/// the half-width c solves delta = 2 exp(-2 (c/N)^2 n factor); given c the
/// same relation yields delta.
namespace hypertail::inference {

enum class IntervalFormula {
  C1,  ///< c from delta via B2
  C2,  ///< c from delta via B4
  D1,  ///< delta from c via B2
  D2,  ///< delta from c via B4
  LegacyC,  ///< c from delta via B1, for comparison only
  LegacyD,  ///< delta from c via B1, for comparison only
};

std::string_view to_string(IntervalFormula formula);

struct IntervalResult {
  mpq_class estimate;     ///< iN/n, exact
  double estimate_value;  ///< iN/n as a double
  double halfwidth;       ///< c
  double delta;           ///< miscoverage, at most 1
  double lower;           ///< estimate - c
  double upper;           ///< estimate + c
  double clamped_lower;   ///< max(0, lower)
  double clamped_upper;   ///< min(N, upper)
  IntervalFormula formula;
  bool vacuous = false;  ///< the bound reached 1 and delta was clamped

  bool clamped() const {
    return clamped_lower != lower || clamped_upper != upper;
  }
};

/// Whether M lies in [iN/n - c, iN/n + c], tested as |iN - Mn| <= cn so the
/// centre is never rounded.
bool covers(const IntervalResult& interval, Count population, Count samples,
            Count observed, Count positives);

/// delta -> c with C1 for n <= N/2 and C2 above. At n == N the half-width
/// is 0 (a full census). Throws DomainError unless 0 < delta < 1,
/// 1 <= n <= N and 0 <= i <= n.
IntervalResult halfwidth_for_confidence(Count population, Count samples,
                                        Count observed, double delta);

/// c -> delta with D1 for n <= N/2 and D2 above. Throws DomainError unless
/// c > 0.
IntervalResult confidence_for_halfwidth(Count population, Count samples,
                                        Count observed, double halfwidth);

/// c' = N sqrt(-ln(delta/2) / (2n)), the plain Hoeffding interval.
IntervalResult legacy_halfwidth_for_confidence(Count population,
                                               Count samples, Count observed,
                                               double delta);
/// delta' = 2 exp(-2 c^2 n / N^2).
IntervalResult legacy_confidence_for_halfwidth(Count population,
                                               Count samples, Count observed,
                                               double halfwidth);

enum class SampleSizeRegime { S1, S2 };

std::string_view to_string(SampleSizeRegime regime);

/// Planning inputs, with the derived x = (N/c)^2 and y = -ln(delta/2)/2.
struct SampleSizeRequest {
  Count population;
  double delta;
  double halfwidth;

  /// Throws DomainError unless 0 < delta < 1 and 0 < c < N.
  void check() const;
  double x() const;
  double y() const;
};

struct SampleSizeResult {
  Count n_required;  ///< ceil(n_real), within [1, N]
  double n_real;     ///< solution before rounding
  SampleSizeRegime regime;
  double regime_boundary;  ///< c^2/y - 2; S1 iff N <= boundary
  double x;
  double y;
};

/// Smallest n whose interval half-width at level delta is at most c. S1
/// inverts C1 and S2 inverts C2; S1 is the smaller of the two exactly when
/// N <= c^2/y - 2.
SampleSizeResult required_sample_size(Count population, double delta,
                                      double halfwidth);

/// Nxy / (N + xy), a lower estimate of the S2 solution.
double sample_size_lower_estimate(Count population, double delta,
                                  double halfwidth);

}  // namespace hypertail::inference

#endif  // HYPERTAIL_INFERENCE_HPP_
