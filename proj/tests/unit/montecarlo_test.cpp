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

#include "hypertail/montecarlo.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "hypertail/errors.hpp"
#include "hypertail/exact.hpp"

namespace hypertail::montecarlo {
namespace {

double standard_error(double p, double trials) {
  return std::sqrt(p * (1.0 - p) / trials);
}

TEST(DrawTest, CustomerSatisfactionFrequencies) {
  const SimulationConfig config{10, 7, 5, 100'000, 20240601, 1};
  const SimulationReport report = simulate(config, {}, {});
  const double p3 = 105.0 / 252.0;
  EXPECT_NEAR(report.empirical_pmf.at(3), p3, 3 * standard_error(p3, 1e5));
  EXPECT_FALSE(report.empirical_pmf.contains(0));
  EXPECT_FALSE(report.empirical_pmf.contains(1));
}

TEST(DrawTest, NoPositivesMeansZeroObserved) {
  const SimulationConfig config{5, 0, 3, 1'000, 9, 1};
  for (Count i : draw_without_replacement(config)) EXPECT_EQ(i, 0);
}

TEST(DrawTest, LowerTailFrequency) {
  const SimulationConfig config{6, 3, 3, 100'000, 77, 2};
  Count hits = 0;
  for (Count i : draw_without_replacement(config)) hits += i <= 1;
  EXPECT_NEAR(hits / 1e5, 0.5, 3 * standard_error(0.5, 1e5));
}

TEST(DrawTest, DeterministicAcrossThreadCounts) {
  SimulationConfig config{40, 13, 17, 5'000, 123, 1};
  const auto serial = draw_without_replacement(config);
  config.threads = 4;
  EXPECT_EQ(draw_without_replacement(config), serial);
  config.threads = 1;
  EXPECT_EQ(draw_without_replacement(config), serial);
  config.seed = 124;
  EXPECT_NE(draw_without_replacement(config), serial);
}

TEST(DrawTest, RejectsInvalidConfig) {
  EXPECT_THROW(draw_without_replacement({10, 11, 5, 10, 0, 1}), DomainError);
  EXPECT_THROW(draw_without_replacement({10, 3, 11, 10, 0, 1}), DomainError);
  EXPECT_THROW(draw_without_replacement({10, 3, 5, 0, 0, 1}), DomainError);
}

TEST(DrawTest, FullCensusAlwaysSeesEveryPositive) {
  for (Count i : draw_without_replacement({12, 5, 12, 200, 3, 1})) EXPECT_EQ(i, 5);
}

TEST(AgreementTest, ChiSquareAgainstExactPmf) {
  const boost::math::chi_squared_distribution<double> unit(1.0);
  struct Case {
    Count big_n, m, n;
  };
  for (const Case& c : {Case{10, 7, 5}, Case{40, 15, 12}, Case{33, 20, 30},
                        Case{25, 3, 10}}) {
    const SimulationConfig config{c.big_n, c.m, c.n, 100'000, 555, 0};
    const SimulationReport report = simulate(config, {}, {});
    const exact::Distribution dist(Population(c.big_n, c.m), c.n);
    double statistic = 0.0;
    int cells = 0;
    for (Count i = dist.support_min(); i <= dist.support_max(); ++i) {
      const double expected = dist.pmf(i).to_double() * 1e5;
      const auto it = report.empirical_pmf.find(i);
      const double observed = it == report.empirical_pmf.end() ? 0.0 : it->second * 1e5;
      statistic += (observed - expected) * (observed - expected) / expected;
      ++cells;
    }
    for (const auto& [i, freq] : report.empirical_pmf) {
      ASSERT_GE(i, dist.support_min());
      ASSERT_LE(i, dist.support_max());
    }
    if (cells < 2) continue;
    const boost::math::chi_squared_distribution<double> chi(cells - 1);
    EXPECT_LT(statistic, quantile(complement(chi, 1e-3)))
        << c.big_n << "," << c.m << "," << c.n;
  }
}

TEST(CoverageTest, MeetsGuarantee) {
  EXPECT_GE(coverage_experiment(500, 200, 100, 0.1, 10'000, 1).coverage[0].coverage, 0.9);
  EXPECT_EQ(coverage_experiment(10, 7, 5, 0.05, 10'000, 2).coverage[0].coverage, 1.0);
  EXPECT_GE(coverage_experiment(500, 200, 400, 0.1, 10'000, 3).coverage[0].coverage, 0.9);
}

TEST(CoverageTest, ExceedanceStaysBelowBound) {
  const SimulationConfig config{200, 90, 60, 50'000, 8, 0};
  const double ts[] = {0.02, 0.05, 0.1, 0.15};
  const SimulationReport report = simulate(config, {}, ts);
  ASSERT_EQ(report.tail_exceedance.size(), 4u);
  for (const ExceedancePoint& point : report.tail_exceedance) {
    const double se = standard_error(std::min(point.bound, 1.0), 5e4);
    EXPECT_LE(point.exceedance, point.bound + 3 * se) << "t=" << point.t;
  }
}

TEST(CoverageTest, ReportIsDeterministic) {
  const SimulationConfig config{300, 120, 90, 20'000, 42, 0};
  const double deltas[] = {0.5, 0.2, 0.1, 0.05};
  const double ts[] = {0.1};
  const SimulationReport a = simulate(config, deltas, ts);
  const SimulationReport b = simulate(config, deltas, ts);
  EXPECT_EQ(a.empirical_pmf, b.empirical_pmf);
  for (std::size_t j = 0; j < a.coverage.size(); ++j) {
    EXPECT_EQ(a.coverage[j].coverage, b.coverage[j].coverage);
  }
  double total = 0.0;
  for (const auto& [i, freq] : a.empirical_pmf) total += freq;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(SeedTest, TrialSeedsDiffer) {
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
  EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
  EXPECT_EQ(trial_seed(5, 9), trial_seed(5, 9));
}

}  // namespace
}  // namespace hypertail::montecarlo
