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

#ifndef NNSC_GENERATE_HPP
#define NNSC_GENERATE_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "nnsc/system_file.hpp"

namespace nnsc {

enum class GeneratorKind {
  /// z^T A = lambda z^T and z^T B <= 0 for a recorded (lambda >= 0, z);
  /// lambda is the only real nonnegative eigenvalue.
  kPlantedUncontrollableII,
  /// rank(A) = N - d from an integer factorization; B = [C | -C].
  kPlantedRankDeficient,
  /// Integer A with det(A) != 0; B = [C | -C].
  kRandomNonsingularPaired,
};

GeneratorKind parse_generator_kind(std::string_view name);
std::string to_string(GeneratorKind kind);

/// `deficiency` is only used by kPlantedRankDeficient (1 <= d <= N).
/// When m is odd the paired kinds append one extra random column to [C | -C].
SystemFile generate_system(GeneratorKind kind, int state_dim, int input_dim, std::uint64_t seed,
                           int deficiency = 1);

}  // namespace nnsc

#endif  // NNSC_GENERATE_HPP
