/*
 Copyright 2026 The nnsc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef NNSC_CLI_HPP
#define NNSC_CLI_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace nnsc {

inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNumericError = 2;

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json report;  ///< null for help output
  std::string out;        ///< what goes to stdout
  std::string err;        ///< what goes to stderr
};

/// Runs one invocation. `args` excludes the program name. Never throws.
RunResult run_command(const std::vector<std::string>& args);

/// Report with the wall-time field removed, for byte comparisons.
nlohmann::json strip_wall_time(nlohmann::json report);

/// 64-bit FNV-1a digest of `bytes` as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace nnsc

#endif  // NNSC_CLI_HPP
