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

#ifndef HYPERTAIL_POPULATION_HPP_
#define HYPERTAIL_POPULATION_HPP_

#include <cstdint>
#include <optional>

namespace hypertail {

/// Counts of individuals. Signed so that derived thresholds such as M - k
/// can be represented before they are clamped to a support.
using Count = std::int64_t;

/// A finite population of N individuals of which M are positive. M may be
/// unknown, which is the usual situation when estimating it from a sample.
class Population {
 public:
  /// Throws DomainError unless N >= 1.
  explicit Population(Count size);
  /// Throws DomainError unless N >= 1 and 0 <= M <= N.
  Population(Count size, Count positives);

  Count size() const noexcept { return size_; }
  std::optional<Count> positives() const noexcept { return positives_; }
  bool has_positives() const noexcept { return positives_.has_value(); }

  /// Returns M, throwing DomainError when it is unknown.
  Count require_positives() const;
  /// The positive fraction p = M/N.
  double fraction() const;

  /// Throws DomainError unless 0 <= n <= N.
  void check_samples(Count n) const;

  friend bool operator==(const Population&, const Population&) = default;

 private:
  Count size_;
  std::optional<Count> positives_;
};

/// The outcome of one study: n individuals drawn, i of them positive.
struct SampleOutcome {
  Count samples = 0;
  Count observed = 0;

  /// Throws DomainError unless 0 <= n <= N and 0 <= i <= n.
  void check(const Population& pop) const;
};

}  // namespace hypertail

#endif  // HYPERTAIL_POPULATION_HPP_
