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

#include "hypertail/log_space.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hypertail/errors.hpp"
#include "hypertail/exact.hpp"

namespace hypertail::exact {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn2Pi = 1.837877066409345483560659472811235280;
constexpr double kLn2 = 0.693147180559945309417232121458176568;
// Relative size below which further tail terms are dropped.
constexpr double kTailCutoff = 1e-18;

const std::array<double, 16>& small_remainders() {
  static const std::array<double, 16> table = [] {
    std::array<double, 16> out{};
    const long double half_ln_2pi = 0.918938533204672741780329736405617639L;
    for (int k = 1; k < 16; ++k) {
      const long double n = k;
      out[k] = static_cast<double>(std::lgamma(n + 1.0L) -
                                   (n + 0.5L) * std::log(n) + n - half_ln_2pi);
    }
    return out;
  }();
  return table;
}

struct Support {
  Count lo;
  Count hi;
  Count mode;
};

Support support_of(const Population& pop, Count n) {
  const Count m = pop.require_positives();
  pop.check_samples(n);
  const Count big_n = pop.size();
  const auto mode = static_cast<Count>(std::floor(
      (static_cast<double>(n) + 1.0) * (static_cast<double>(m) + 1.0) /
      (static_cast<double>(big_n) + 2.0)));
  const Count lo = std::max<Count>(0, n - (big_n - m));
  const Count hi = std::min(n, m);
  return Support{lo, hi, std::clamp(mode, lo, hi)};
}

double log_term(const Population& pop, Count n, Count i) {
  const Count big_n = pop.size();
  const Count m = *pop.positives();
  if (n == 0) return i == 0 ? 0.0 : kNegInf;
  const double p = static_cast<double>(n) / static_cast<double>(big_n);
  const double q = static_cast<double>(big_n - n) / static_cast<double>(big_n);
  const double p1 = log_binomial_pmf(static_cast<double>(i),
                                     static_cast<double>(m), p, q);
  const double p2 = log_binomial_pmf(static_cast<double>(n - i),
                                     static_cast<double>(big_n - m), p, q);
  const double p3 = log_binomial_pmf(static_cast<double>(n),
                                     static_cast<double>(big_n), p, q);
  return p1 + p2 - p3;
}

// ln sum_{i = from, from + step, ...} h(i), walking away from the mode so
// terms shrink monotonically and the loop can stop early.
double log_sum_away_from_mode(const Population& pop, Count n, Count from,
                              Count limit, Count step) {
  const double anchor = log_term(pop, n, from);
  double sum = 1.0;
  for (Count i = from + step; step > 0 ? i <= limit : i >= limit; i += step) {
    const double ratio = std::exp(log_term(pop, n, i) - anchor);
    sum += ratio;
    if (ratio < kTailCutoff * sum) break;
  }
  return anchor + std::log(sum);
}

double log_one_minus_exp(double log_x) {
  if (log_x == kNegInf) return 0.0;
  if (log_x > -kLn2) return std::log(-std::expm1(log_x));
  return std::log1p(-std::exp(log_x));
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

double stirling_remainder(double n) {
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  if (n <= 15.0 && n == std::floor(n) && n >= 1.0) {
    return small_remainders()[static_cast<std::size_t>(n)];
  }
  if (n <= 15.0) {
    const long double x = n;
    return static_cast<double>(std::lgamma(x + 1.0L) -
                               (x + 0.5L) * std::log(x) + x -
                               0.918938533204672741780329736405617639L);
  }
  const double nn = n * n;
  if (n > 500.0) return (s0 - s1 / nn) / n;
  if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

double binomial_deviance(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    const double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    const double v2 = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v2;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
  }
  return x * std::log(x / np) + np - x;
}

double log_binomial_pmf(double x, double n, double p, double q) {
  if (p == 0.0) return x == 0.0 ? 0.0 : kNegInf;
  if (q == 0.0) return x == n ? 0.0 : kNegInf;
  if (x < 0.0 || x > n) return kNegInf;
  if (x == 0.0) {
    if (n == 0.0) return 0.0;
    return p < 0.1 ? -binomial_deviance(n, n * q) - n * p : n * std::log(q);
  }
  if (x == n) {
    return q < 0.1 ? -binomial_deviance(n, n * p) - n * q : n * std::log(p);
  }
  const double lc = stirling_remainder(n) - stirling_remainder(x) -
                    stirling_remainder(n - x) - binomial_deviance(x, n * p) -
                    binomial_deviance(n - x, n * q);
  const double lf = kLn2Pi + std::log(x) + std::log1p(-x / n);
  return lc - 0.5 * lf;
}

LogProb log_pmf(const Population& pop, Count n, Count i) {
  pop.require_positives();
  SampleOutcome{n, i}.check(pop);
  const Support s = support_of(pop, n);
  if (i < s.lo || i > s.hi) return LogProb{kNegInf};
  return LogProb{std::min(0.0, log_term(pop, n, i))};
}

LogProb log_lower_tail(const Population& pop, Count n, Count k) {
  const Support s = support_of(pop, n);
  if (k < s.lo) return LogProb{kNegInf};
  if (k >= s.hi) return LogProb{0.0};
  if (k < s.mode) {
    return LogProb{std::min(0.0, log_sum_away_from_mode(pop, n, k, s.lo, -1))};
  }
  const double upper = log_sum_away_from_mode(pop, n, k + 1, s.hi, +1);
  return LogProb{log_one_minus_exp(std::min(0.0, upper))};
}

LogProb log_upper_tail(const Population& pop, Count n, Count k) {
  const Support s = support_of(pop, n);
  if (k > s.hi) return LogProb{kNegInf};
  if (k <= s.lo) return LogProb{0.0};
  if (k > s.mode) {
    return LogProb{std::min(0.0, log_sum_away_from_mode(pop, n, k, s.hi, +1))};
  }
  const double lower = log_sum_away_from_mode(pop, n, k - 1, s.lo, -1);
  return LogProb{log_one_minus_exp(std::min(0.0, lower))};
}

LogProb log_two_sided(const Population& pop, Count n, double deviation) {
  if (!std::isfinite(deviation)) {
    detail::throw_domain("deviation c must be finite");
  }
  const DeviationThresholds k =
      deviation_thresholds(pop, n, mpq_class(deviation));
  const double lower = log_lower_tail(pop, n, k.lower).log_value;
  const double upper = log_upper_tail(pop, n, k.upper).log_value;
  return LogProb{std::min(0.0, log_add(lower, upper))};
}

}  // namespace hypertail::exact
