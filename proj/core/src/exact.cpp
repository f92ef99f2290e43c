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

#include "hypertail/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "hypertail/errors.hpp"

namespace hypertail::exact {
namespace {

using std::to_string;

constexpr double kLn2 = 0.693147180559945309417232121458176568;

void check_rational_scale(const Population& pop) {
  if (pop.size() > kMaxRationalPopulation) {
    detail::throw_domain("population size N=" + to_string(pop.size()) +
                         " exceeds the rational-path limit " +
                         to_string(kMaxRationalPopulation) +
                         "; use the log-space functions");
  }
}

Count check_tail_args(const Population& pop, Count n) {
  const Count m = pop.require_positives();
  pop.check_samples(n);
  check_rational_scale(pop);
  return m;
}

// ln(a / b) for 0 < a <= b, evaluated on a 128-bit float so the log does
// not inherit the cancellation of ln(a) - ln(b) for huge a and b.
double log_ratio(const mpz_class& a, const mpz_class& b) {
  if (a == 0) return -std::numeric_limits<double>::infinity();
  if (a == b) return 0.0;
  mpf_class ratio(a, 128);
  ratio /= mpf_class(b, 128);
  long exponent = 0;
  const double mantissa = mpf_get_d_2exp(&exponent, ratio.get_mpf_t());
  return std::log(mantissa) + static_cast<double>(exponent) * kLn2;
}

ExactProb make_prob(mpz_class favorable, const mpz_class& outcomes) {
  mpq_class value(favorable, outcomes);
  value.canonicalize();
  const double log_value = log_ratio(favorable, outcomes);
  return ExactProb{std::move(favorable), outcomes, std::move(value),
                   log_value};
}

mpz_class term(Count m, Count big_n, Count n, Count i) {
  return binomial(m, i) * binomial(big_n - m, n - i);
}

// Sum of C(M,i) C(N-M,n-i) over i in [from, to], clipped to the support.
mpz_class count_range(Count big_n, Count m, Count n, Count from, Count to) {
  const Count lo = std::max<Count>(0, n - (big_n - m));
  const Count hi = std::min(n, m);
  from = std::max(from, lo);
  to = std::min(to, hi);
  mpz_class total = 0;
  for (Count i = from; i <= to; ++i) total += term(m, big_n, n, i);
  return total;
}

// Sums the shorter side of the support and subtracts from C(N, n) when the
// requested range is the longer side.
mpz_class count_lower(Count big_n, Count m, Count n, Count k,
                      const mpz_class& outcomes) {
  const Count lo = std::max<Count>(0, n - (big_n - m));
  const Count hi = std::min(n, m);
  if (k < lo) return 0;
  if (k >= hi) return outcomes;
  if (k - lo <= hi - k) return count_range(big_n, m, n, lo, k);
  return outcomes - count_range(big_n, m, n, k + 1, hi);
}

mpz_class count_upper(Count big_n, Count m, Count n, Count k,
                      const mpz_class& outcomes) {
  if (k <= 0) return outcomes;
  return outcomes - count_lower(big_n, m, n, k - 1, outcomes);
}

mpz_class floor_of(const mpq_class& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class ceil_of(const mpq_class& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// Clamps an arbitrary integer threshold into [-1, n + 1]; tails are flat
// outside the support so nothing is lost.
Count clamp_threshold(const mpz_class& k, Count n) {
  if (k < -1) return -1;
  if (k > n + 1) return n + 1;
  return static_cast<Count>(k.get_si());
}

mpq_class checked_deviation(double deviation) {
  if (!std::isfinite(deviation)) {
    detail::throw_domain("deviation c must be finite");
  }
  return mpq_class(deviation);
}

}  // namespace

std::string ExactProb::fraction() const {
  return favorable.get_str() + "/" + outcomes.get_str();
}

std::string ExactProb::reduced() const { return value.get_str(); }

mpz_class binomial(Count x, Count y) {
  if (x < 0 || y < 0 || y > x) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(x),
               static_cast<unsigned long>(y));
  return out;
}

double log_of(const mpz_class& value) {
  if (value <= 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * kLn2;
}

ExactProb pmf(const Population& pop, Count n, Count i) {
  const Count m = check_tail_args(pop, n);
  SampleOutcome{n, i}.check(pop);
  return make_prob(term(m, pop.size(), n, i), binomial(pop.size(), n));
}

ExactProb lower_tail(const Population& pop, Count n, Count k) {
  const Count m = check_tail_args(pop, n);
  const mpz_class outcomes = binomial(pop.size(), n);
  return make_prob(count_lower(pop.size(), m, n, k, outcomes), outcomes);
}

ExactProb upper_tail(const Population& pop, Count n, Count k) {
  const Count m = check_tail_args(pop, n);
  const mpz_class outcomes = binomial(pop.size(), n);
  return make_prob(count_upper(pop.size(), m, n, k, outcomes), outcomes);
}

DeviationThresholds deviation_thresholds(const Population& pop, Count n,
                                         const mpq_class& deviation) {
  const Count m = pop.require_positives();
  pop.check_samples(n);
  if (deviation <= 0) {
    detail::throw_domain("deviation c=" + deviation.get_str() +
                         " must be positive");
  }
  const mpq_class mean(mpz_class(n) * m, mpz_class(pop.size()));
  return DeviationThresholds{clamp_threshold(floor_of(mean - deviation), n),
                             clamp_threshold(ceil_of(mean + deviation), n)};
}

ExactProb two_sided_exact(const Population& pop, Count n,
                          const mpq_class& deviation) {
  const DeviationThresholds k = deviation_thresholds(pop, n, deviation);
  const Count m = check_tail_args(pop, n);
  const mpz_class outcomes = binomial(pop.size(), n);
  mpz_class favorable = count_lower(pop.size(), m, n, k.lower, outcomes) +
                        count_upper(pop.size(), m, n, k.upper, outcomes);
  return make_prob(std::move(favorable), outcomes);
}

ExactProb two_sided_exact(const Population& pop, Count n, double deviation) {
  return two_sided_exact(pop, n, checked_deviation(deviation));
}

FlippedTail flip_symmetry(const Population& pop, Count n, Count k) {
  const Count m = pop.require_positives();
  pop.check_samples(n);
  return FlippedTail{Population(pop.size(), pop.size() - m), n - k};
}

SwappedTail swap_symmetry(const Population& pop, Count n, Count k) {
  const Count m = pop.require_positives();
  pop.check_samples(n);
  if (n == pop.size()) {
    detail::throw_domain("sample/complement swap needs n < N; n=N=" +
                         to_string(n) + " leaves an empty complement");
  }
  return SwappedTail{pop.size() - n, m - k};
}

Distribution::Distribution(const Population& pop, Count n)
    : pop_(pop), samples_(n) {
  const Count m = check_tail_args(pop, n);
  lo_ = std::max<Count>(0, n - (pop.size() - m));
  hi_ = std::min(n, m);
  outcomes_ = binomial(pop.size(), n);
  counts_.reserve(static_cast<std::size_t>(hi_ - lo_ + 1));
  cumulative_.reserve(counts_.capacity());
  mpz_class running = 0;
  for (Count i = lo_; i <= hi_; ++i) {
    counts_.push_back(term(m, pop.size(), n, i));
    running += counts_.back();
    cumulative_.push_back(running);
  }
}

mpz_class Distribution::lower_count(Count k) const {
  if (k < lo_) return 0;
  if (k >= hi_) return outcomes_;
  return cumulative_[static_cast<std::size_t>(k - lo_)];
}

mpz_class Distribution::upper_count(Count k) const {
  return outcomes_ - lower_count(k - 1);
}

ExactProb Distribution::make(mpz_class favorable) const {
  return make_prob(std::move(favorable), outcomes_);
}

ExactProb Distribution::pmf(Count i) const {
  SampleOutcome{samples_, i}.check(pop_);
  if (i < lo_ || i > hi_) return make(0);
  return make(counts_[static_cast<std::size_t>(i - lo_)]);
}

ExactProb Distribution::lower_tail(Count k) const {
  return make(lower_count(k));
}

ExactProb Distribution::upper_tail(Count k) const {
  return make(upper_count(k));
}

ExactProb Distribution::two_sided(const mpq_class& deviation) const {
  const DeviationThresholds k =
      deviation_thresholds(pop_, samples_, deviation);
  return make(lower_count(k.lower) + upper_count(k.upper));
}

}  // namespace hypertail::exact
