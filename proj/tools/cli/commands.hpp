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

#ifndef HYPERTAIL_TOOLS_CLI_COMMANDS_HPP_
#define HYPERTAIL_TOOLS_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace hypertail::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;

/// Environment variable holding the default --format.
inline constexpr const char* kFormatEnv = "HYPERTAIL_FORMAT";

/// Populations up to this size use exact rationals under --method auto.
inline constexpr long long kAutoRationalLimit = 10'000;

/// Runs one subcommand. `args` excludes the program name. The rendered
/// record goes to `out`; diagnostics and usage go to `err`. Returns 0 on
/// success and 2 on usage or domain errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hypertail::cli

#endif  // HYPERTAIL_TOOLS_CLI_COMMANDS_HPP_
