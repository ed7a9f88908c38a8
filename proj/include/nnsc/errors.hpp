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

#ifndef NNSC_ERRORS_HPP
#define NNSC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nnsc {

/// Malformed or out-of-contract input (bad shapes, non-finite entries,
/// invalid sparsity level, guard limits). The CLI maps this to exit code 1.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine could not produce a trustworthy answer
/// (eigen solver failure, simplex cycling guard, inconsistent rank data).
/// The CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// The target vector is not in the positive span of the generators.
class NotInConeError : public std::domain_error {
 public:
  explicit NotInConeError(const std::string& what) : std::domain_error(what) {}
};

/// No sparsity level in [1, m] can satisfy the rank condition.
class NoFeasibleSparsityError : public std::domain_error {
 public:
  explicit NoFeasibleSparsityError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace nnsc

#endif  // NNSC_ERRORS_HPP
