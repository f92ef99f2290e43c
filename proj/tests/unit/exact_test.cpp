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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hypertail/errors.hpp"
#include "support/oracle.hpp"

namespace hypertail::exact {
namespace {

using testing::enumerate_subsets;
using testing::oracle_lower;
using testing::oracle_pmf;
using testing::oracle_upper;
using testing::PascalTriangle;

mpq_class q(long num, long den) {
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

TEST(ExactPmfTest, CustomerSatisfactionExample) {
  const Population pop(10, 7);
  const long expected[] = {0, 0, 21, 105, 105, 21};
  for (long i = 0; i <= 5; ++i) {
    const ExactProb p = pmf(pop, 5, i);
    EXPECT_EQ(p.value, q(expected[i], 252)) << "i=" << i;
    EXPECT_EQ(p.outcomes, 252);
    EXPECT_EQ(p.favorable, expected[i]);
  }
  EXPECT_EQ(pmf(pop, 5, 3).fraction(), "105/252");
  EXPECT_EQ(pmf(pop, 5, 3).reduced(), "5/12");
}

TEST(ExactPmfTest, SmallPopulationMatchesEnumeration) {
  // C(3,1) C(3,2) / C(6,3) = 9/20, confirmed by listing all 20 subsets.
  const auto counts = enumerate_subsets(6, 3, 3);
  EXPECT_EQ(counts[1], 9u);
  EXPECT_EQ(pmf(Population(6, 3), 3, 1).value, q(9, 20));
}

TEST(ExactPmfTest, ZeroProbabilityHasNegativeInfiniteLog) {
  const ExactProb p = pmf(Population(10, 7), 5, 1);
  EXPECT_EQ(p.value, 0);
  EXPECT_TRUE(std::isinf(p.log_value));
  EXPECT_LT(p.log_value, 0.0);
}

TEST(ExactPmfTest, EmptySampleIsCertain) {
  const ExactProb p = pmf(Population(8, 3), 0, 0);
  EXPECT_EQ(p.value, 1);
  EXPECT_EQ(p.log_value, 0.0);
}

TEST(ExactPmfTest, RejectsOutOfRangeArguments) {
  EXPECT_THROW(pmf(Population(10, 7), 11, 0), DomainError);
  EXPECT_THROW(pmf(Population(10, 7), 5, 6), DomainError);
  EXPECT_THROW(pmf(Population(10, 7), 5, -1), DomainError);
  EXPECT_THROW(pmf(Population(10), 5, 1), DomainError);
  EXPECT_THROW(pmf(Population(kMaxRationalPopulation + 1, 3), 5, 1),
               DomainError);
}

TEST(ExactTailTest, Examples) {
  const Population pop(10, 7);
  EXPECT_EQ(lower_tail(pop, 5, 2).value, q(21, 252));
  EXPECT_EQ(lower_tail(pop, 5, 5).value, 1);
  EXPECT_EQ(upper_tail(pop, 5, 5).value, q(21, 252));
  EXPECT_EQ(upper_tail(pop, 5, 0).value, 1);
  // Brute force over i = 0, 1: 1/20 + 9/20; over i = 2, 3: 9/20 + 1/20.
  const auto counts = enumerate_subsets(6, 3, 3);
  EXPECT_EQ(counts[0] + counts[1], 10u);
  EXPECT_EQ(lower_tail(Population(6, 3), 3, 1).value, q(1, 2));
  EXPECT_EQ(upper_tail(Population(6, 3), 3, 2).value, q(1, 2));
}

TEST(ExactTailTest, ThresholdsOutsideSupportAreFlat) {
  const Population pop(10, 7);
  EXPECT_EQ(lower_tail(pop, 5, -3).value, 0);
  EXPECT_EQ(lower_tail(pop, 5, 9).value, 1);
  EXPECT_EQ(upper_tail(pop, 5, -3).value, 1);
  EXPECT_EQ(upper_tail(pop, 5, 9).value, 0);
}

TEST(ExactTwoSidedTest, Examples) {
  const Population pop(10, 7);
  const ExactProb p = two_sided_exact(pop, 5, 1.5);
  EXPECT_EQ(p.value, q(42, 252));
  EXPECT_EQ(p.fraction(), "42/252");
  EXPECT_EQ(two_sided_exact(pop, 5, 10.0).value, 0);
  // Mean 1.5, deviation 1.5: i <= 0 or i >= 3, i.e. 1/20 + 1/20.
  EXPECT_EQ(two_sided_exact(Population(6, 3), 3, 1.5).value, q(1, 10));
}

TEST(ExactTwoSidedTest, BoundaryPointsAreIncluded) {
  // Mean 2.5, c = 0.5 hits 2 and 3 exactly, so the event is everything.
  const Population pop(10, 5);
  EXPECT_EQ(two_sided_exact(pop, 5, 0.5).value, 1);
  const DeviationThresholds k = deviation_thresholds(pop, 5, mpq_class(1, 2));
  EXPECT_EQ(k.lower, 2);
  EXPECT_EQ(k.upper, 3);
}

TEST(ExactTwoSidedTest, RejectsNonPositiveDeviation) {
  EXPECT_THROW(two_sided_exact(Population(10, 7), 5, 0.0), DomainError);
  EXPECT_THROW(two_sided_exact(Population(10, 7), 5, -1.0), DomainError);
}

TEST(SymmetryTest, FlipExamples) {
  FlippedTail f = flip_symmetry(Population(10, 7), 5, 2);
  EXPECT_EQ(f.population, Population(10, 3));
  EXPECT_EQ(f.threshold, 3);
  f = flip_symmetry(Population(10, 5), 4, 2);
  EXPECT_EQ(f.population, Population(10, 5));
  EXPECT_EQ(f.threshold, 2);
  f = flip_symmetry(Population(6, 2), 3, 0);
  EXPECT_EQ(f.population, Population(6, 4));
  EXPECT_EQ(f.threshold, 3);
  EXPECT_EQ(lower_tail(Population(6, 2), 3, 0).value, q(4, 20));
  EXPECT_EQ(upper_tail(f.population, 3, f.threshold).value, q(4, 20));
}

TEST(SymmetryTest, SwapExamples) {
  SwappedTail s = swap_symmetry(Population(10, 7), 5, 2);
  EXPECT_EQ(s.samples, 5);
  EXPECT_EQ(s.threshold, 5);
  s = swap_symmetry(Population(10, 7), 5, 7);
  EXPECT_EQ(s.samples, 5);
  EXPECT_EQ(s.threshold, 0);
  EXPECT_EQ(upper_tail(Population(10, 7), 5, 0).value, 1);
  s = swap_symmetry(Population(6, 3), 2, 1);
  EXPECT_EQ(s.samples, 4);
  EXPECT_EQ(s.threshold, 2);
  EXPECT_EQ(lower_tail(Population(6, 3), 2, 1).value,
            upper_tail(Population(6, 3), 4, 2).value);
}

TEST(SymmetryTest, SwapRejectsFullCensus) {
  EXPECT_THROW(swap_symmetry(Population(10, 7), 10, 2), DomainError);
}

TEST(ExactPropertyTest, AgreesWithSubsetEnumeration) {
  for (int big_n = 1; big_n <= 12; ++big_n) {
    for (int m = 0; m <= big_n; ++m) {
      for (int n = 0; n <= big_n; ++n) {
        const auto counts = enumerate_subsets(big_n, m, n);
        for (int i = 0; i <= n; ++i) {
          const ExactProb p = pmf(Population(big_n, m), n, i);
          ASSERT_EQ(p.favorable, counts[i])
              << big_n << "," << m << "," << n << "," << i;
        }
      }
    }
  }
}

TEST(ExactPropertyTest, NormalizesExactly) {
  for (long big_n = 1; big_n <= 60; ++big_n) {
    for (long m = 0; m <= big_n; m += 1 + big_n / 12) {
      for (long n = 0; n <= big_n; ++n) {
        const Distribution dist(Population(big_n, m), n);
        mpq_class total = 0;
        for (long i = 0; i <= n; ++i) total += dist.pmf(i).value;
        ASSERT_EQ(total, 1) << big_n << "," << m << "," << n;
      }
    }
  }
}

TEST(ExactPropertyTest, TailsMatchPascalOracle) {
  const PascalTriangle c(40);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const long big_n = 1 + static_cast<long>(rng() % 40);
    const long m = static_cast<long>(rng() % (big_n + 1));
    const long n = static_cast<long>(rng() % (big_n + 1));
    const auto ref = oracle_pmf(c, big_n, m, n);
    const Population pop(big_n, m);
    for (long k = -1; k <= n + 1; ++k) {
      ASSERT_EQ(lower_tail(pop, n, k).value, oracle_lower(ref, k));
      ASSERT_EQ(upper_tail(pop, n, k).value, oracle_upper(ref, k));
    }
  }
}

TEST(ExactPropertyTest, DistributionMatchesFreeFunctions) {
  const Population pop(37, 15);
  const Distribution dist(pop, 20);
  for (long k = -1; k <= 21; ++k) {
    EXPECT_EQ(dist.lower_tail(k).value, lower_tail(pop, 20, k).value);
    EXPECT_EQ(dist.upper_tail(k).value, upper_tail(pop, 20, k).value);
  }
  for (long i = 0; i <= 20; ++i) {
    EXPECT_EQ(dist.pmf(i).value, pmf(pop, 20, i).value);
  }
  EXPECT_EQ(dist.two_sided(mpq_class(3)).value,
            two_sided_exact(pop, 20, 3.0).value);
}

TEST(ExactPropertyTest, PointwiseSymmetries) {
  for (long big_n = 1; big_n <= 25; ++big_n) {
    for (long m = 0; m <= big_n; ++m) {
      for (long n = 0; n <= big_n; ++n) {
        for (long i = 0; i <= n; ++i) {
          const mpq_class p = pmf(Population(big_n, m), n, i).value;
          ASSERT_EQ(p, pmf(Population(big_n, big_n - m), n, n - i).value);
          if (m - i >= 0 && m - i <= big_n - n) {
            ASSERT_EQ(p, pmf(Population(big_n, m), big_n - n, m - i).value);
          } else {
            ASSERT_EQ(p, 0);
          }
        }
      }
    }
  }
}

TEST(ExactPropertyTest, TailsAreMonotone) {
  const Population pop(30, 12);
  for (long n = 0; n <= 30; ++n) {
    for (long k = 0; k < n; ++k) {
      ASSERT_LE(lower_tail(pop, n, k).value, lower_tail(pop, n, k + 1).value);
      ASSERT_GE(upper_tail(pop, n, k).value, upper_tail(pop, n, k + 1).value);
    }
  }
}

TEST(ExactPropertyTest, LogValueTracksRational) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const long big_n = 1 + static_cast<long>(rng() % 2000);
    const long m = static_cast<long>(rng() % (big_n + 1));
    const long n = static_cast<long>(rng() % (big_n + 1));
    const long k = static_cast<long>(rng() % (n + 1));
    const ExactProb p = lower_tail(Population(big_n, m), n, k);
    if (p.value == 0) {
      ASSERT_TRUE(std::isinf(p.log_value));
      continue;
    }
    // ln(p) from an independent 256-bit evaluation of the rational.
    mpf_class v(p.value, 256);
    long exponent = 0;
    const double mantissa = mpf_get_d_2exp(&exponent, v.get_mpf_t());
    const double expected = std::log(mantissa) + exponent * std::log(2.0);
    ASSERT_NEAR(p.log_value, expected, 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

}  // namespace
}  // namespace hypertail::exact
