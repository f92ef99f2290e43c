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

#ifndef HYPERTAIL_EXACT_HPP_
#define HYPERTAIL_EXACT_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hypertail/population.hpp"

/// Exact hypergeometric probabilities in arbitrary-precision rationals.
///
/// With h(N, M, n, i) = C(M, i) C(N-M, n-i) / C(N, n), every probability of
/// an event about i is (number of n-subsets in the event) / C(N, n). The
/// functions here keep both counts so results print in the same unreduced
/// form as a hand calculation ("105/252"), and also carry the canonical
/// rational and its natural log.
///
/// Tail thresholds are accepted outside [0, n]: sums over an empty index set
/// are 0 and sums covering the whole support are 1. This lets the symmetry
/// identities be stated for every k without special cases.
namespace hypertail::exact {

/// Largest population evaluated on the rational path. Above this only the
/// log-space functions in log_space.hpp are available.
inline constexpr Count kMaxRationalPopulation = 1'000'000;

struct ExactProb {
  mpz_class favorable;  ///< n-subsets belonging to the event
  mpz_class outcomes;   ///< C(N, n)
  mpq_class value;      ///< favorable / outcomes, canonicalized
  double log_value;     ///< ln(value); -infinity exactly when value == 0

  double to_double() const { return value.get_d(); }
  /// Unreduced "favorable/outcomes".
  std::string fraction() const;
  /// Canonical "p/q" (or "0", "1").
  std::string reduced() const;
};

/// C(x, y) with C(x, y) = 0 for y < 0 or y > x.
mpz_class binomial(Count x, Count y);

/// ln of a non-negative big integer; -infinity for zero.
double log_of(const mpz_class& value);

ExactProb pmf(const Population& pop, Count n, Count i);

/// P[i <= k].
ExactProb lower_tail(const Population& pop, Count n, Count k);

/// P[i >= k].
ExactProb upper_tail(const Population& pop, Count n, Count k);

/// Integer thresholds for a two-sided deviation of c around the mean nM/N:
/// the largest k_lo <= nM/N - c and the smallest k_hi >= nM/N + c.
struct DeviationThresholds {
  Count lower;
  Count upper;
};
DeviationThresholds deviation_thresholds(const Population& pop, Count n,
                                         const mpq_class& deviation);

/// P[|i - nM/N| >= c]. Throws DomainError unless c > 0.
ExactProb two_sided_exact(const Population& pop, Count n,
                          const mpq_class& deviation);
/// As above; the double is converted to a rational without rounding.
ExactProb two_sided_exact(const Population& pop, Count n, double deviation);

/// Value flip: P[i <= k | N, M, n] = P[i >= n-k | N, N-M, n].
struct FlippedTail {
  Population population;
  Count threshold;
};
FlippedTail flip_symmetry(const Population& pop, Count n, Count k);

/// Sample/complement swap: P[i <= k | N, M, n] = P[i >= M-k | N, M, N-n].
/// Throws DomainError when n == N.
struct SwappedTail {
  Count samples;
  Count threshold;
};
SwappedTail swap_symmetry(const Population& pop, Count n, Count k);

/// The whole distribution for one (N, M, n), tabulated once so that many
/// tail queries cost one big-integer addition chain. Immutable after
/// construction.
class Distribution {
 public:
  Distribution(const Population& pop, Count n);

  const Population& population() const noexcept { return pop_; }
  Count samples() const noexcept { return samples_; }
  /// Smallest and largest i with non-zero probability.
  Count support_min() const noexcept { return lo_; }
  Count support_max() const noexcept { return hi_; }
  const mpz_class& outcomes() const noexcept { return outcomes_; }

  ExactProb pmf(Count i) const;
  ExactProb lower_tail(Count k) const;
  ExactProb upper_tail(Count k) const;
  ExactProb two_sided(const mpq_class& deviation) const;

 private:
  mpz_class lower_count(Count k) const;
  mpz_class upper_count(Count k) const;
  ExactProb make(mpz_class favorable) const;

  Population pop_;
  Count samples_;
  Count lo_;
  Count hi_;
  mpz_class outcomes_;
  std::vector<mpz_class> counts_;      // counts_[i - lo_]
  std::vector<mpz_class> cumulative_;  // cumulative_[j] = sum counts_[0..j]
};

}  // namespace hypertail::exact

#endif  // HYPERTAIL_EXACT_HPP_
