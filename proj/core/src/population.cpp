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

#include "hypertail/population.hpp"

#include <string>

#include "hypertail/errors.hpp"

namespace hypertail {

using std::to_string;

Population::Population(Count size) : size_(size) {
  if (size < 1) {
    detail::throw_domain("population size N=" + to_string(size) +
                         " must be at least 1");
  }
}

Population::Population(Count size, Count positives) : Population(size) {
  if (positives < 0 || positives > size) {
    detail::throw_domain("positive count M=" + to_string(positives) +
                         " must lie in [0, N=" + to_string(size) + "]");
  }
  positives_ = positives;
}

Count Population::require_positives() const {
  if (!positives_) {
    detail::throw_domain("positive count M is required but unknown");
  }
  return *positives_;
}

double Population::fraction() const {
  return static_cast<double>(require_positives()) / static_cast<double>(size_);
}

void Population::check_samples(Count n) const {
  if (n < 0 || n > size_) {
    detail::throw_domain("sample count n=" + to_string(n) +
                         " must lie in [0, N=" + to_string(size_) + "]");
  }
}

void SampleOutcome::check(const Population& pop) const {
  pop.check_samples(samples);
  if (observed < 0 || observed > samples) {
    detail::throw_domain("observed count i=" + to_string(observed) +
                         " must lie in [0, n=" + to_string(samples) + "]");
  }
}

}  // namespace hypertail
