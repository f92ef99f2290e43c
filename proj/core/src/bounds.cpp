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

#include "hypertail/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "hypertail/errors.hpp"

namespace hypertail::bounds {
namespace {

using std::to_string;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.693147180559945309417232121458176568;
// p + t within this of 1 is treated as the boundary case p + t = 1.
constexpr double kBoundarySlack = 1e-12;

void check_n(Count population, Count n, bool strict) {
  if (n < 1) {
    detail::throw_domain("sample count n=" + to_string(n) +
                         " must be at least 1");
  }
  if (strict ? n >= population : n > population) {
    detail::throw_domain("sample count n=" + to_string(n) +
                         (strict ? " must be below N=" : " must not exceed N=") +
                         to_string(population) +
                         (strict ? " (complement sample is empty)" : ""));
  }
}

BoundValue from_exponent(double exponent, BoundFamily family) {
  return BoundValue{std::min(1.0, std::exp(exponent)), family, exponent,
                    Tails::One};
}

BoundValue hoeffding_type(BoundFamily family, Count population, Count n,
                          TailDeviation t) {
  const double tv = t.value();
  const double exponent = -2.0 * tv * tv * static_cast<double>(n) *
                          exponent_factor(family, population, n);
  return from_exponent(exponent, family);
}

double kl_exponent(double p, double t, Count n) {
  double q = p + t;
  if (q > 1.0 + kBoundarySlack || p <= 0.0) return kNegInf;
  q = std::min(q, 1.0);
  double divergence = q * std::log(q / p);
  if (q < 1.0) divergence += (1.0 - q) * std::log((1.0 - q) / (1.0 - p));
  return -static_cast<double>(n) * std::max(0.0, divergence);
}

BoundValue doubled(BoundValue single) {
  single.tails = Tails::Two;
  single.value = std::min(1.0, 2.0 * std::exp(single.exponent));
  return single;
}

}  // namespace

std::string_view to_string(BoundFamily family) {
  switch (family) {
    case BoundFamily::KL:
      return "KL";
    case BoundFamily::B1:
      return "B1";
    case BoundFamily::B2:
      return "B2";
    case BoundFamily::B3:
      return "B3";
    case BoundFamily::B4:
      return "B4";
    case BoundFamily::Auto:
      return "Auto";
  }
  return "?";
}

std::optional<BoundFamily> parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "kl") return BoundFamily::KL;
  if (lower == "b1") return BoundFamily::B1;
  if (lower == "b2") return BoundFamily::B2;
  if (lower == "b3") return BoundFamily::B3;
  if (lower == "b4") return BoundFamily::B4;
  if (lower == "auto") return BoundFamily::Auto;
  return std::nullopt;
}

TailDeviation::TailDeviation(double t) : t_(t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    detail::throw_domain("deviation t=" + to_string(t) + " must be positive");
  }
}

TailDeviation TailDeviation::from_count(double c, Count n) {
  if (n < 1) {
    detail::throw_domain("sample count n=" + to_string(n) +
                         " must be at least 1");
  }
  return TailDeviation(c / static_cast<double>(n));
}

double exponent_factor(BoundFamily family, Count population, Count n) {
  const auto big_n = static_cast<double>(population);
  const auto nd = static_cast<double>(n);
  switch (family) {
    case BoundFamily::B1:
      return 1.0;
    case BoundFamily::B2:
      return big_n / (big_n - nd + 1.0);
    case BoundFamily::B3:
    case BoundFamily::B4:
      if (n >= population) {
        throw UnsupportedBoundError(
            std::string(to_string(family)) +
            " needs n < N; the complement sample is empty at n=N=" +
            to_string(population));
      }
      if (family == BoundFamily::B3) return nd / (big_n - nd);
      return nd * big_n / ((big_n - nd) * (nd + 1.0));
    case BoundFamily::KL:
    case BoundFamily::Auto:
      break;
  }
  throw UnsupportedBoundError(std::string(to_string(family)) +
                              " has no exponent factor");
}

BoundValue kl_upper_tail_bound(const Population& pop, Count n,
                               TailDeviation t) {
  if (!pop.has_positives()) {
    throw UnsupportedBoundError("KL bound needs the positive count M");
  }
  check_n(pop.size(), n, false);
  return from_exponent(kl_exponent(pop.fraction(), t.value(), n),
                       BoundFamily::KL);
}

BoundValue kl_lower_tail_bound(const Population& pop, Count n,
                               TailDeviation t) {
  if (!pop.has_positives()) {
    throw UnsupportedBoundError("KL bound needs the positive count M");
  }
  const Population flipped(pop.size(), pop.size() - *pop.positives());
  return kl_upper_tail_bound(flipped, n, t);
}

BoundValue b1_tail(Count n, TailDeviation t) {
  if (n < 1) {
    detail::throw_domain("sample count n=" + to_string(n) +
                         " must be at least 1");
  }
  return hoeffding_type(BoundFamily::B1, n, n, t);
}

BoundValue b2_tail(Count population, Count n, TailDeviation t) {
  check_n(population, n, false);
  return hoeffding_type(BoundFamily::B2, population, n, t);
}

BoundValue b3_tail(Count population, Count n, TailDeviation t) {
  check_n(population, n, true);
  return hoeffding_type(BoundFamily::B3, population, n, t);
}

BoundValue b4_tail(Count population, Count n, TailDeviation t) {
  check_n(population, n, true);
  return hoeffding_type(BoundFamily::B4, population, n, t);
}

BoundValue tail_bound(BoundFamily family, Count population, Count n,
                      TailDeviation t) {
  switch (family) {
    case BoundFamily::B1:
      check_n(population, n, false);
      return b1_tail(n, t);
    case BoundFamily::B2:
      return b2_tail(population, n, t);
    case BoundFamily::B3:
    case BoundFamily::B4:
      check_n(population, n, false);
      exponent_factor(family, population, n);
      return family == BoundFamily::B3 ? b3_tail(population, n, t)
                                       : b4_tail(population, n, t);
    case BoundFamily::KL:
    case BoundFamily::Auto:
      break;
  }
  throw UnsupportedBoundError(std::string(to_string(family)) +
                              " is not a closed-form single-tail family");
}

BoundValue concentration_bound(const Population& pop, Count n,
                               TailDeviation t, BoundFamily family) {
  if (family == BoundFamily::Auto) {
    return best_bound(pop.size(), n, t, Tails::Two);
  }
  if (family == BoundFamily::KL) {
    const BoundValue upper = kl_upper_tail_bound(pop, n, t);
    const BoundValue lower = kl_lower_tail_bound(pop, n, t);
    const double sum = std::exp(upper.exponent) + std::exp(lower.exponent);
    const double exponent = sum > 0.0 ? std::log(sum) - kLn2 : kNegInf;
    return BoundValue{std::min(1.0, sum), BoundFamily::KL, exponent,
                      Tails::Two};
  }
  return doubled(tail_bound(family, pop.size(), n, t));
}

BoundFamily best_family(Count population, Count n) {
  check_n(population, n, false);
  if (2 * n <= population || n == population) return BoundFamily::B2;
  return BoundFamily::B4;
}

BoundValue best_bound(Count population, Count n, TailDeviation t,
                      Tails tails) {
  const BoundValue single =
      tail_bound(best_family(population, n), population, n, t);
  return tails == Tails::Two ? doubled(single) : single;
}

}  // namespace hypertail::bounds
