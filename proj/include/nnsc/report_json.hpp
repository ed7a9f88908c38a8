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

#ifndef NNSC_REPORT_JSON_HPP
#define NNSC_REPORT_JSON_HPP

#include <json.hpp>

#include "nnsc/controllability.hpp"
#include "nnsc/jordan.hpp"
#include "nnsc/oracle.hpp"

namespace nnsc {

// JSON encodings of the library result types. Complex scalars are
// {"re": x, "im": y}; complex vectors are {"re": [..], "im": [..]}.

nlohmann::json to_json(const Tolerances& tol);
nlohmann::json to_json(Complex c);
nlohmann::json to_json(const Vec& v);
nlohmann::json to_json(const CVec& v);
nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const ControllabilityReport& report);
nlohmann::json to_json(const CertificateCheck& check);
nlohmann::json to_json(const OracleConfig& cfg);
nlohmann::json to_json(const OracleVerdict& verdict);
nlohmann::json to_json(const ZeroStructure& zs);
nlohmann::json to_json(const ChainDecomposition& dec);
nlohmann::json to_json(const DecompositionReport& report);

/// Accepts the encoding produced by to_json(Certificate); lambda may also be
/// a plain number and z a plain array of reals. Throws InputError.
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace nnsc

#endif  // NNSC_REPORT_JSON_HPP
