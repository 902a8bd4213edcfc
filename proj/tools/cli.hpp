// Copyright 2026 The spinzx Authors
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

#ifndef SPINZX_TOOLS_CLI_HPP
#define SPINZX_TOOLS_CLI_HPP

#include <cstdint>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "spinzx/errors.hpp"

namespace spinzx::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSize = 3;
inline constexpr int kExitSpinArgs = 4;
inline constexpr int kExitFailure = 5;
inline constexpr int kExitUsage = 64;

class InvalidSpinArgs : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { kText, kJson };

struct CliConfig {
  double tolerance = 1e-9;
  std::size_t max_entries = std::size_t{1} << 26;
  std::uint64_t seed = 42;
  OutputFormat output = OutputFormat::kText;
};

// Parses "1/2", "-3/2", "2", ".5", "-1.5" into twice the value. Throws
// InvalidSpinArgs when the text is not an integer or half-integer.
int parse_twice(const std::string& text);

// Runs one command line (without the program name). Everything the command
// prints goes to `out`; diagnostics go to `err` and only on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinzx::cli

#endif  // SPINZX_TOOLS_CLI_HPP
