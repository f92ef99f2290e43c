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

#ifndef HYPERTAIL_ERRORS_HPP_
#define HYPERTAIL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hypertail {

/// Raised when an argument violates a documented precondition. The message
/// names the violated bound, e.g. "observed count i=7 exceeds samples n=5".
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a bound family cannot be evaluated for the given inputs
/// (KL without a known positive count, B3/B4 with a full census).
class UnsupportedBoundError : public std::invalid_argument {
 public:
  explicit UnsupportedBoundError(const std::string& what)
      : std::invalid_argument(what) {}
};

namespace detail {

[[noreturn]] void throw_domain(const std::string& what);

}  // namespace detail

}  // namespace hypertail

#endif  // HYPERTAIL_ERRORS_HPP_
