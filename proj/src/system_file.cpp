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

#include "nnsc/system_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nnsc/errors.hpp"

namespace nnsc {

using nlohmann::json;

Mat matrix_from_json(const json& j, std::string_view what) {
  const std::string name(what);
  if (!j.is_array() || j.empty()) {
    throw InputError(name + ": expected a nonempty array of rows");
  }
  std::size_t cols = 0;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const json& row = j[r];
    if (!row.is_array()) {
      throw InputError(name + " row " + std::to_string(r + 1) + ": expected an array of numbers");
    }
    if (r == 0) {
      cols = row.size();
      if (cols == 0) throw InputError(name + " row 1: empty row");
    } else if (row.size() != cols) {
      throw InputError(name + " row " + std::to_string(r + 1) + ": ragged row, expected " +
                       std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    }
  }
  Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const json& v = j[r][c];
      const std::string where =
          name + " row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1);
      if (!v.is_number()) throw InputError(where + ": not a number");
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw InputError(where + ": non-finite value");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = d;
    }
  }
  return m;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

SystemFile parse_system_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed system file: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("system file: top level must be a JSON object");
  for (const char* key : {"A", "B"}) {
    if (!doc.contains(key)) {
      throw InputError(std::string("system file: missing required key \"") + key + "\"");
    }
  }
  SystemFile f;
  f.a = matrix_from_json(doc["A"], "A");
  f.b = matrix_from_json(doc["B"], "B");
  if (f.a.rows() != f.a.cols()) {
    throw InputError("A must be square, got " + std::to_string(f.a.rows()) + "x" +
                     std::to_string(f.a.cols()));
  }
  if (f.b.rows() != f.a.rows()) {
    throw InputError("B has " + std::to_string(f.b.rows()) + " rows, expected " +
                     std::to_string(f.a.rows()) + " to match A");
  }
  if (doc.contains("s") && !doc["s"].is_null()) {
    if (!doc["s"].is_number_integer()) throw InputError("system file: \"s\" must be an integer");
    f.s = doc["s"].get<int>();
  }
  if (doc.contains("name") && !doc["name"].is_null()) {
    if (!doc["name"].is_string()) throw InputError("system file: \"name\" must be a string");
    f.name = doc["name"].get<std::string>();
  }
  if (doc.contains("planted") && !doc["planted"].is_null()) {
    const json& p = doc["planted"];
    if (!p.is_object() || !p.contains("lambda") || !p.contains("z") || !p["lambda"].is_number()) {
      throw InputError("system file: \"planted\" must be {\"lambda\": number, \"z\": [numbers]}");
    }
    PlantedTruth t;
    t.lambda = p["lambda"].get<double>();
    const Mat z = matrix_from_json(json::array({p["z"]}), "planted.z");
    t.z = z.row(0).transpose();
    f.planted = std::move(t);
  }
  return f;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SystemFile parse_system_file(const std::filesystem::path& path) {
  return parse_system_text(read_text_file(path));
}

json system_file_to_json(const SystemFile& f) {
  json j;
  j["A"] = matrix_to_json(f.a);
  j["B"] = matrix_to_json(f.b);
  if (f.s) j["s"] = *f.s;
  if (f.name) j["name"] = *f.name;
  if (f.planted) {
    json z = json::array();
    for (Eigen::Index i = 0; i < f.planted->z.size(); ++i) z.push_back(f.planted->z(i));
    j["planted"] = {{"lambda", f.planted->lambda}, {"z", z}};
  }
  return j;
}

std::string serialize_system_file(const SystemFile& f) { return system_file_to_json(f).dump(); }

}  // namespace nnsc
