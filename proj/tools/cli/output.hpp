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

#ifndef HYPERTAIL_TOOLS_CLI_OUTPUT_HPP_
#define HYPERTAIL_TOOLS_CLI_OUTPUT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hypertail::cli {

enum class Format { Text, Json, Csv };

std::optional<Format> parse_format(std::string_view name);

using Fields = std::vector<std::pair<std::string, std::string>>;

/// Everything one invocation prints. All numbers are already rendered as
/// decimal strings, so the record can be compared textually.
struct OutputRecord {
  std::string command;
  Fields inputs;
  Fields results;
  Fields labels;
  std::vector<std::string> warnings;
};

/// `digits` significant digits; plain decimal notation for magnitudes in
/// [1e-5, 1e15), scientific otherwise. No thousands separators.
std::string format_number(double value, int digits);

std::string render(const OutputRecord& record, Format format);

}  // namespace hypertail::cli

#endif  // HYPERTAIL_TOOLS_CLI_OUTPUT_HPP_
