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

#ifndef HYPERTAIL_BOUNDS_HPP_
#define HYPERTAIL_BOUNDS_HPP_

#include <optional>
#include <string_view>

#include "hypertail/population.hpp"

/// Closed-form upper bounds on hypergeometric tails.
///
/// All four Hoeffding-type bounds share the shape exp(-2 t^2 n * factor)
/// and differ only in the factor:
///
///   B1  1                      (Hoeffding / Chvatal)
///   B2  N / (N - n + 1)        (Serfling)
///   B3  n / (N - n)            (B1 applied to the complement sample)
///   B4  nN / ((N - n)(n + 1))  (B2 applied to the complement sample)
///
/// Each bounds both P[i >= (p + t)n] and P[i <= (p - t)n]; the two-sided
/// form is twice the single-tail value. The KL form exp(-n D(p + t || p))
/// is sharper than B1 but needs p = M/N and has no closed-form inverse.
namespace hypertail::bounds {

enum class BoundFamily { KL, B1, B2, B3, B4, Auto };
enum class Tails { One, Two };

std::string_view to_string(BoundFamily family);
/// Accepts "kl", "b1".."b4", "auto" in any case.
std::optional<BoundFamily> parse_family(std::string_view name);

/// Deviation from the mean as a fraction of n; the count deviation is t*n.
class TailDeviation {
 public:
  /// Throws DomainError unless t > 0 and finite.
  explicit TailDeviation(double t);
  /// t = c / n for a deviation of c counts.
  static TailDeviation from_count(double c, Count n);

  double value() const noexcept { return t_; }

 private:
  double t_;
};

struct BoundValue {
  double value;  ///< min(1, exp(exponent)), doubled first when two-sided
  BoundFamily family_used;
  double exponent;  ///< ln of the unclamped single-tail bound, <= 0
  Tails tails = Tails::One;
};

/// The multiplier of -2 t^2 n in the exponent. Throws UnsupportedBoundError
/// for KL/Auto and for B3/B4 when n >= N.
double exponent_factor(BoundFamily family, Count population, Count n);

/// exp(-n D_KL(p + t || p)) for the upper tail. Zero when p + t > 1.
BoundValue kl_upper_tail_bound(const Population& pop, Count n,
                               TailDeviation t);
/// The KL bound for the lower tail, via the value flip M -> N - M.
BoundValue kl_lower_tail_bound(const Population& pop, Count n,
                               TailDeviation t);

BoundValue b1_tail(Count n, TailDeviation t);
BoundValue b2_tail(Count population, Count n, TailDeviation t);
BoundValue b3_tail(Count population, Count n, TailDeviation t);
BoundValue b4_tail(Count population, Count n, TailDeviation t);

/// Single-tail bound of one of B1..B4 (KL/Auto rejected).
BoundValue tail_bound(BoundFamily family, Count population, Count n,
                      TailDeviation t);

/// Bound on P[|i - nM/N| >= tn]: min(1, 2 * single-tail bound). For KL the
/// two tails differ and their sum is used. Auto delegates to best_bound.
/// Throws UnsupportedBoundError when the family cannot be evaluated.
BoundValue concentration_bound(const Population& pop, Count n,
                               TailDeviation t, BoundFamily family);

/// The tighter of B2 and B4: B2 for n <= N/2 (and for n == N, where B4 is
/// undefined), B4 above.
BoundValue best_bound(Count population, Count n, TailDeviation t,
                      Tails tails = Tails::One);

/// The family best_bound picks for (N, n).
BoundFamily best_family(Count population, Count n);

}  // namespace hypertail::bounds

#endif  // HYPERTAIL_BOUNDS_HPP_
