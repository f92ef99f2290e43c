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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "hypertail/bounds.hpp"
#include "hypertail/errors.hpp"
#include "hypertail/inference.hpp"

namespace hypertail::montecarlo {
namespace {

// Uniform integer in [0, range) by rejection; unlike
// std::uniform_int_distribution the mapping is fixed by this code.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t range) {
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t r = engine();
    if (r >= threshold) return r % range;
  }
}

// Partial Fisher-Yates over an index array that is restored after each
// trial, so one array serves all trials of a worker.
class Sampler {
 public:
  explicit Sampler(const SimulationConfig& config)
      : config_(config),
        indices_(static_cast<std::size_t>(config.population)),
        swaps_(static_cast<std::size_t>(config.samples)) {
    std::iota(indices_.begin(), indices_.end(), Count{0});
  }

  Count draw(std::uint64_t trial) {
    std::mt19937_64 engine(trial_seed(config_.seed, trial));
    const auto big_n = static_cast<std::uint64_t>(config_.population);
    const auto n = static_cast<std::size_t>(config_.samples);
    Count positives = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t r = j + uniform_below(engine, big_n - j);
      std::swap(indices_[j], indices_[r]);
      swaps_[j] = r;
      if (indices_[j] < config_.positives) ++positives;
    }
    for (std::size_t j = n; j-- > 0;) std::swap(indices_[j], indices_[swaps_[j]]);
    return positives;
  }

 private:
  const SimulationConfig& config_;
  std::vector<Count> indices_;
  std::vector<std::size_t> swaps_;
};

}  // namespace

void SimulationConfig::check() const {
  const Population pop(population, positives);
  pop.check_samples(samples);
  if (trials < 1) detail::throw_domain("trials must be at least 1");
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + (trial + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Count> draw_without_replacement(const SimulationConfig& config) {
  config.check();
  std::vector<Count> outcomes(static_cast<std::size_t>(config.trials));
  unsigned workers = config.threads == 0 ? std::thread::hardware_concurrency()
                                         : config.threads;
  workers = std::max(1u, std::min<unsigned>(
                             workers, static_cast<unsigned>(std::min<
                                          std::uint64_t>(config.trials, 256))));

  const auto run = [&](std::uint64_t begin, std::uint64_t end) {
    Sampler sampler(config);
    for (std::uint64_t j = begin; j < end; ++j) {
      outcomes[static_cast<std::size_t>(j)] = sampler.draw(j);
    }
  };
  if (workers == 1) {
    run(0, config.trials);
    return outcomes;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = (config.trials + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(config.trials, begin + chunk);
    if (begin < end) pool.emplace_back(run, begin, end);
  }
  return outcomes;
}

SimulationReport simulate(const SimulationConfig& config,
                          std::span<const double> deltas,
                          std::span<const double> deviations) {
  const std::vector<Count> outcomes = draw_without_replacement(config);
  const auto trials = static_cast<double>(config.trials);
  const Count big_n = config.population;
  const Count m = config.positives;
  const Count n = config.samples;

  SimulationReport report;
  report.trials = config.trials;
  std::map<Count, std::uint64_t> counts;
  for (Count i : outcomes) ++counts[i];
  for (const auto& [i, count] : counts) {
    report.empirical_pmf[i] = static_cast<double>(count) / trials;
  }

  for (double delta : deltas) {
    const inference::IntervalResult interval =
        inference::halfwidth_for_confidence(big_n, n, 0, delta);
    std::uint64_t hits = 0;
    for (const auto& [i, count] : counts) {
      if (inference::covers(interval, big_n, n, i, m)) hits += count;
    }
    report.coverage.push_back(
        CoveragePoint{delta, interval.halfwidth, static_cast<double>(hits) / trials});
  }

  for (double t : deviations) {
    const bounds::BoundValue bound = bounds::best_bound(
        big_n, n, bounds::TailDeviation(t), bounds::Tails::Two);
    // |i - nM/N| >= tn  <=>  |iN - nM| >= t n N
    const double limit = t * static_cast<double>(n) * static_cast<double>(big_n);
    std::uint64_t exceed = 0;
    for (const auto& [i, count] : counts) {
      const auto gap = static_cast<double>(std::abs(i * big_n - n * m));
      if (gap >= limit) exceed += count;
    }
    report.tail_exceedance.push_back(
        ExceedancePoint{t, static_cast<double>(exceed) / trials, bound.value});
  }
  return report;
}

SimulationReport coverage_experiment(Count population, Count positives,
                                     Count samples, double delta,
                                     std::uint64_t trials,
                                     std::uint64_t seed) {
  const SimulationConfig config{population, positives, samples, trials, seed,
                                1};
  const double deltas[] = {delta};
  return simulate(config, deltas, {});
}

}  // namespace hypertail::montecarlo
