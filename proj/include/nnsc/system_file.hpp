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

#ifndef NNSC_SYSTEM_FILE_HPP
#define NNSC_SYSTEM_FILE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nnsc/controllability.hpp"

namespace nnsc {

/// Ground truth recorded by the planted generators.
struct PlantedTruth {
  double lambda = 0.0;
  Vec z;

  bool operator==(const PlantedTruth& other) const {
    return lambda == other.lambda && z == other.z;
  }
};

/// On-disk form: {"A": [[..]], "B": [[..]], "s": int?, "name": string?}.
/// An optional "planted" object {"lambda": x, "z": [..]} is carried through.
struct SystemFile {
  Mat a;
  Mat b;
  std::optional<int> s;
  std::optional<std::string> name;
  std::optional<PlantedTruth> planted;

  bool operator==(const SystemFile& other) const {
    return a == other.a && b == other.b && s == other.s && name == other.name &&
           planted == other.planted;
  }

  SystemPair system() const { return SystemPair(a, b); }
};

/// Dense real matrix from a JSON array of rows; errors carry 1-based
/// row/column locations prefixed by `what`.
Mat matrix_from_json(const nlohmann::json& j, std::string_view what);
nlohmann::json matrix_to_json(const Mat& m);

SystemFile parse_system_text(std::string_view text);
SystemFile parse_system_file(const std::filesystem::path& path);

nlohmann::json system_file_to_json(const SystemFile& f);
std::string serialize_system_file(const SystemFile& f);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace nnsc

#endif  // NNSC_SYSTEM_FILE_HPP
