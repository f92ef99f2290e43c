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

#include "hypertail/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypertail/bounds.hpp"
#include "hypertail/errors.hpp"

namespace hypertail::inference {
namespace {

using bounds::BoundFamily;
using std::to_string;

void check_outcome(Count population, Count samples, Count observed) {
  const Population pop(population);
  if (samples < 1) {
    detail::throw_domain("sample count n=" + to_string(samples) +
                         " must be at least 1");
  }
  SampleOutcome{samples, observed}.check(pop);
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    detail::throw_domain("miscoverage delta=" + to_string(delta) +
                         " must lie strictly between 0 and 1");
  }
}

void check_halfwidth(double halfwidth) {
  if (!(halfwidth > 0.0) || !std::isfinite(halfwidth)) {
    detail::throw_domain("half-width c=" + to_string(halfwidth) +
                         " must be positive");
  }
}

// y = -ln(delta/2)/2, so that delta = 2 exp(-2y).
double half_log_term(double delta) { return -0.5 * std::log(delta / 2.0); }

bool small_sample(Count population, Count samples) {
  return 2 * samples <= population;
}

IntervalResult centred(Count population, Count samples, Count observed,
                       double halfwidth, double delta,
                       IntervalFormula formula) {
  mpq_class estimate(mpz_class(observed) * population, mpz_class(samples));
  estimate.canonicalize();
  const double centre = estimate.get_d();
  const double lower = centre - halfwidth;
  const double upper = centre + halfwidth;
  IntervalResult out{estimate,
                     centre,
                     halfwidth,
                     std::min(1.0, delta),
                     lower,
                     upper,
                     std::max(0.0, lower),
                     std::min(static_cast<double>(population), upper),
                     formula};
  out.vacuous = delta >= 1.0;
  return out;
}

// c = N t with t^2 = y / (n * factor).
double halfwidth_from_factor(Count population, Count samples, double factor,
                             double delta) {
  const double t = std::sqrt(half_log_term(delta) /
                             (static_cast<double>(samples) * factor));
  return static_cast<double>(population) * t;
}

double delta_from_factor(Count population, Count samples, double factor,
                         double halfwidth) {
  const double t = halfwidth / static_cast<double>(population);
  return 2.0 * std::exp(-2.0 * t * t * static_cast<double>(samples) * factor);
}

}  // namespace

std::string_view to_string(IntervalFormula formula) {
  switch (formula) {
    case IntervalFormula::C1:
      return "C1";
    case IntervalFormula::C2:
      return "C2";
    case IntervalFormula::D1:
      return "D1";
    case IntervalFormula::D2:
      return "D2";
    case IntervalFormula::LegacyC:
      return "legacy-B1-c";
    case IntervalFormula::LegacyD:
      return "legacy-B1-delta";
  }
  return "?";
}

std::string_view to_string(SampleSizeRegime regime) {
  return regime == SampleSizeRegime::S1 ? "S1" : "S2";
}

bool covers(const IntervalResult& interval, Count population, Count samples,
            Count observed, Count positives) {
  const mpz_class gap = abs(mpz_class(observed) * population -
                            mpz_class(positives) * samples);
  return gap.get_d() <= interval.halfwidth * static_cast<double>(samples);
}

IntervalResult halfwidth_for_confidence(Count population, Count samples,
                                        Count observed, double delta) {
  check_outcome(population, samples, observed);
  check_delta(delta);
  if (small_sample(population, samples)) {
    const double factor =
        bounds::exponent_factor(BoundFamily::B2, population, samples);
    return centred(population, samples, observed,
                   halfwidth_from_factor(population, samples, factor, delta),
                   delta, IntervalFormula::C1);
  }
  if (samples == population) {
    return centred(population, samples, observed, 0.0, delta,
                   IntervalFormula::C2);
  }
  const double factor =
      bounds::exponent_factor(BoundFamily::B4, population, samples);
  return centred(population, samples, observed,
                 halfwidth_from_factor(population, samples, factor, delta),
                 delta, IntervalFormula::C2);
}

IntervalResult confidence_for_halfwidth(Count population, Count samples,
                                        Count observed, double halfwidth) {
  check_outcome(population, samples, observed);
  check_halfwidth(halfwidth);
  if (small_sample(population, samples)) {
    const double factor =
        bounds::exponent_factor(BoundFamily::B2, population, samples);
    return centred(
        population, samples, observed, halfwidth,
        delta_from_factor(population, samples, factor, halfwidth),
        IntervalFormula::D1);
  }
  if (samples == population) {
    return centred(population, samples, observed, halfwidth, 0.0,
                   IntervalFormula::D2);
  }
  const double factor =
      bounds::exponent_factor(BoundFamily::B4, population, samples);
  return centred(population, samples, observed, halfwidth,
                 delta_from_factor(population, samples, factor, halfwidth),
                 IntervalFormula::D2);
}

IntervalResult legacy_halfwidth_for_confidence(Count population,
                                               Count samples, Count observed,
                                               double delta) {
  check_outcome(population, samples, observed);
  check_delta(delta);
  return centred(population, samples, observed,
                 halfwidth_from_factor(population, samples, 1.0, delta),
                 delta, IntervalFormula::LegacyC);
}

IntervalResult legacy_confidence_for_halfwidth(Count population,
                                               Count samples, Count observed,
                                               double halfwidth) {
  check_outcome(population, samples, observed);
  check_halfwidth(halfwidth);
  return centred(population, samples, observed, halfwidth,
                 delta_from_factor(population, samples, 1.0, halfwidth),
                 IntervalFormula::LegacyD);
}

void SampleSizeRequest::check() const {
  const Population pop(population);
  check_delta(delta);
  check_halfwidth(halfwidth);
  if (halfwidth >= static_cast<double>(population)) {
    detail::throw_domain("half-width c=" + to_string(halfwidth) +
                         " is not below N=" + to_string(population) +
                         "; the interval already covers [0, N] and n=0 "
                         "samples suffice");
  }
}

double SampleSizeRequest::x() const {
  const double ratio = static_cast<double>(population) / halfwidth;
  return ratio * ratio;
}

double SampleSizeRequest::y() const { return half_log_term(delta); }

SampleSizeResult required_sample_size(Count population, double delta,
                                      double halfwidth) {
  const SampleSizeRequest request{population, delta, halfwidth};
  request.check();
  const double big_n = static_cast<double>(population);
  const double x = request.x();
  const double y = request.y();
  const double xy = x * y;
  const double boundary = halfwidth * halfwidth / y - 2.0;

  SampleSizeResult out{};
  out.x = x;
  out.y = y;
  out.regime_boundary = boundary;
  if (big_n <= boundary) {
    out.regime = SampleSizeRegime::S1;
    out.n_real = (big_n + 1.0) * xy / (big_n + xy);
  } else {
    out.regime = SampleSizeRegime::S2;
    const double a = (big_n - 1.0) * xy / (2.0 * (big_n + xy));
    out.n_real = a + std::sqrt(a * a + big_n * xy / (big_n + xy));
  }

  Count n = static_cast<Count>(std::ceil(out.n_real));
  n = std::clamp<Count>(n, 1, population);
  // The closed form can land one off an integer boundary after rounding;
  // settle on the smallest n that the interval formulas actually accept.
  const auto fits = [&](Count k) {
    return halfwidth_for_confidence(population, k, 0, delta).halfwidth <=
           halfwidth;
  };
  while (n < population && !fits(n)) ++n;
  while (n > 1 && fits(n - 1)) --n;
  out.n_required = n;
  return out;
}

double sample_size_lower_estimate(Count population, double delta,
                                  double halfwidth) {
  const SampleSizeRequest request{population, delta, halfwidth};
  request.check();
  const double big_n = static_cast<double>(population);
  const double xy = request.x() * request.y();
  return big_n * xy / (big_n + xy);
}

}  // namespace hypertail::inference
