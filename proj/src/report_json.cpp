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

#include "nnsc/report_json.hpp"

#include "nnsc/errors.hpp"
#include "nnsc/system_file.hpp"

namespace nnsc {

using nlohmann::json;

namespace {

json outcome_json(const ConditionOutcome& o) {
  json j;
  j["passed"] = o.passed;
  j["certificate"] = o.certificate ? to_json(*o.certificate) : json(nullptr);
  json v = json::array();
  for (Complex c : o.violating_eigenvalues) v.push_back(to_json(c));
  j["violating_eigenvalues"] = v;
  return j;
}

Vec real_vector(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("certificate: ") + what + " must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw InputError(std::string("certificate: ") + what + " entry " + std::to_string(i + 1) +
                       " is not a number");
    }
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

}  // namespace

json to_json(const Tolerances& tol) {
  return {{"rank_rtol", tol.rank_rtol},
          {"eig_imag_tol", tol.eig_imag_tol},
          {"ineq_tol", tol.ineq_tol}};
}

json to_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_json(const CVec& v) {
  return {{"re", to_json(Vec(v.real()))}, {"im", to_json(Vec(v.imag()))}};
}

json to_json(const Certificate& cert) {
  return {{"kind", to_string(cert.kind)},
          {"lambda", to_json(cert.lambda)},
          {"z", to_json(cert.z)},
          {"residual_eig", cert.residual_eig},
          {"max_zB", cert.max_zb}};
}

json to_json(const ControllabilityReport& report) {
  json j;
  j["verdict"] = to_string(report.verdict);
  j["condition_i"] = report.condition_i ? outcome_json(*report.condition_i) : json(nullptr);
  j["condition_ii"] = report.condition_ii ? outcome_json(*report.condition_ii) : json(nullptr);
  if (report.condition_iii) {
    const SparsityOutcome& c = *report.condition_iii;
    j["condition_iii"] = {{"passed", c.passed},
                          {"s", c.s},
                          {"N", c.state_dim},
                          {"rank_A", c.rank_a},
                          {"required", c.state_dim - c.rank_a}};
  } else {
    j["condition_iii"] = nullptr;
  }
  j["tolerances"] = to_json(report.tolerances);
  json table = json::array();
  for (const EigenTableRow& row : report.eigenvalues) {
    table.push_back({{"lambda", to_json(row.lambda)},
                     {"algebraic_multiplicity", row.algebraic_multiplicity},
                     {"geometric_multiplicity", row.geometric_multiplicity},
                     {"real_nonnegative", row.real_nonnegative},
                     {"merged", row.merged},
                     {"residual", row.residual}});
  }
  j["eigenvalues"] = table;
  j["clusters_merged"] = report.clusters_merged;
  return j;
}

json to_json(const CertificateCheck& check) {
  return {{"valid", check.valid},
          {"residual_eig", check.residual_eig},
          {"residual_bound", check.residual_bound},
          {"max_zB", check.max_zb},
          {"failures", check.failures}};
}

json to_json(const OracleConfig& cfg) {
  return {{"k_max", cfg.k_max},
          {"n_directions", cfg.n_directions},
          {"seed", cfg.seed},
          {"include_axes", cfg.include_axes}};
}

json to_json(const OracleVerdict& verdict) {
  json j;
  j["outcome"] = verdict.covered ? "covered" : "uncovered";
  j["covered_at"] = verdict.covered ? json(verdict.covered_at) : json(nullptr);
  json dirs = json::array();
  for (const Vec& d : verdict.uncovered_directions) dirs.push_back(to_json(d));
  j["uncovered_directions"] = dirs;
  j["k_used"] = verdict.k_used;
  j["lp_count"] = verdict.lp_count;
  j["probe_count"] = verdict.probe_count;
  return j;
}

json to_json(const ZeroStructure& zs) {
  return {{"n", zs.n},
          {"q", zs.q},
          {"blocks_of_size", zs.blocks_of_size},
          {"tail_counts", zs.tail_counts},
          {"rank_sequence", zs.rank_sequence},
          {"N", zs.state_dim},
          {"rank_A", zs.rank_a}};
}

json to_json(const ChainDecomposition& dec) {
  json pi = json::array();
  for (std::size_t i = 0; i < dec.pi.size(); ++i) {
    pi.push_back({{"i", i + 1}, {"rows", dec.pi_rows[i]}, {"matrix", matrix_to_json(dec.pi[i])}});
  }
  return {{"P", matrix_to_json(dec.p)},
          {"J", matrix_to_json(dec.j)},
          {"P0", matrix_to_json(dec.p0)},
          {"Pi", pi},
          {"structure", to_json(dec.structure)}};
}

json to_json(const DecompositionReport& report) {
  json checks = json::array();
  for (const PropertyCheck& c : report.checks) {
    checks.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}, {"bound", c.bound}});
  }
  return {{"all_passed", report.all_passed()}, {"checks", checks}};
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw InputError("certificate: expected a JSON object");
  for (const char* key : {"kind", "lambda", "z"}) {
    if (!j.contains(key)) {
      throw InputError(std::string("certificate: missing required key \"") + key + "\"");
    }
  }
  Certificate cert;
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "violates_condition_i") {
    cert.kind = CertificateKind::kViolatesConditionI;
  } else if (kind == "violates_condition_ii") {
    cert.kind = CertificateKind::kViolatesConditionII;
  } else {
    throw InputError("certificate: kind must be violates_condition_i or violates_condition_ii");
  }

  const json& lam = j["lambda"];
  if (lam.is_number()) {
    cert.lambda = Complex(lam.get<double>(), 0.0);
  } else if (lam.is_object() && lam.contains("re") && lam["re"].is_number()) {
    const double im = lam.contains("im") && lam["im"].is_number() ? lam["im"].get<double>() : 0.0;
    cert.lambda = Complex(lam["re"].get<double>(), im);
  } else {
    throw InputError("certificate: lambda must be a number or {\"re\": x, \"im\": y}");
  }

  const json& z = j["z"];
  if (z.is_array()) {
    cert.z = real_vector(z, "z").cast<Complex>();
  } else if (z.is_object() && z.contains("re")) {
    const Vec re = real_vector(z["re"], "z.re");
    Vec im = Vec::Zero(re.size());
    if (z.contains("im")) im = real_vector(z["im"], "z.im");
    if (im.size() != re.size()) throw InputError("certificate: z.re and z.im differ in length");
    cert.z = CVec(re.size());
    cert.z.real() = re;
    cert.z.imag() = im;
  } else {
    throw InputError("certificate: z must be an array or {\"re\": [..], \"im\": [..]}");
  }
  return cert;
}

}  // namespace nnsc
