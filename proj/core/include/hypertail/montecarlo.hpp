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

#ifndef HYPERTAIL_MONTECARLO_HPP_
#define HYPERTAIL_MONTECARLO_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hypertail/population.hpp"

// Simulation harness: draws without replacement from a synthetic population
// whose first M individuals are positive, to check the exact distribution,
// the tail bounds and interval coverage empirically.
//
// Trial j uses its own std::mt19937_64 seeded from (seed, j), so results do
// not depend on the number of threads and are identical across platforms.
namespace hypertail::montecarlo {

struct SimulationConfig {
  Count population = 1;
  Count positives = 0;
  Count samples = 0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // 0 = hardware concurrency

  /// Throws DomainError for an invalid population, sample count or
  /// trials == 0.
  void check() const;
};

struct CoveragePoint {
  double delta;
  double halfwidth;
  double coverage;  // fraction of trials whose interval contains M
};

struct ExceedancePoint {
  double t;
  double exceedance;  // fraction of trials with |i - nM/N| >= tn
  double bound;       // two-sided best_bound at t
};

struct SimulationReport {
  std::uint64_t trials = 0;
  std::map<Count, double> empirical_pmf;
  std::vector<CoveragePoint> coverage;
  std::vector<ExceedancePoint> tail_exceedance;
};

/// Seed of trial j derived from the master seed (SplitMix64 finalizer).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// One observed positive count per trial, in trial order.
std::vector<Count> draw_without_replacement(const SimulationConfig& config);

/// Runs the trials and summarizes them. Coverage is reported for each
/// delta, exceedance for each t (fractions of n).
SimulationReport simulate(const SimulationConfig& config,
                          std::span<const double> deltas,
                          std::span<const double> deviations);

SimulationReport coverage_experiment(Count population, Count positives,
                                     Count samples, double delta,
                                     std::uint64_t trials, std::uint64_t seed);

}  // namespace hypertail::montecarlo

#endif  // HYPERTAIL_MONTECARLO_HPP_
