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

#include "nnsc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nnsc/controllability.hpp"
#include "nnsc/errors.hpp"
#include "nnsc/generate.hpp"
#include "nnsc/jordan.hpp"
#include "nnsc/oracle.hpp"
#include "nnsc/report_json.hpp"
#include "nnsc/system_file.hpp"

namespace nnsc {

using nlohmann::json;

namespace {

struct Options {
  std::string system_path;
  bool pretty = false;
  double tol_all = 0.0;
  double rank_rtol = 0.0;
  double eig_imag_tol = 0.0;
  double ineq_tol = 0.0;

  int s = 0;
  bool s_given = false;
  std::string phi_path;

  int k_max = OracleConfig{}.k_max;
  int samples = OracleConfig{}.n_directions;
  std::uint64_t seed = 0;
  bool no_axes = false;

  std::string cert_path;

  std::string kind;
  int n = 0;
  int m = 0;
  int d = 1;
};

// Analysis output for one command: the "result" object plus a human summary.
struct CommandOutput {
  json result;
  std::string summary;
  int exit_code = kExitOk;
};

struct LoadedSystem {
  SystemFile file;
  std::string digest;
};

LoadedSystem load_system(const std::string& path) {
  const std::string text = read_text_file(path);
  return {parse_system_text(text), fnv1a64_hex(text)};
}

json load_json_file(const std::string& path, const char* what) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed ") + what + " file: " + e.what());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(Complex c) {
  if (c.imag() == 0.0) return fmt(c.real());
  return fmt(c.real()) + (c.imag() < 0 ? " - " : " + ") + fmt(std::abs(c.imag())) + "i";
}

std::string fmt(const CVec& z) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (i > 0) s += ", ";
    s += fmt(z(i));
  }
  return s + "]";
}

Tolerances resolve_tolerances(const Options& o) {
  Tolerances tol;
  if (o.tol_all != 0.0) tol.rank_rtol = tol.eig_imag_tol = tol.ineq_tol = o.tol_all;
  if (o.rank_rtol != 0.0) tol.rank_rtol = o.rank_rtol;
  if (o.eig_imag_tol != 0.0) tol.eig_imag_tol = o.eig_imag_tol;
  if (o.ineq_tol != 0.0) tol.ineq_tol = o.ineq_tol;
  tol.validate();
  return tol;
}

std::string condition_line(const char* label, const std::optional<ConditionOutcome>& c) {
  if (!c) return std::string(label) + "  skipped\n";
  std::string line = std::string(label) + (c->passed ? "  passed" : "  failed");
  if (c->certificate) {
    line += "  lambda = " + fmt(c->certificate->lambda) + ", z = " + fmt(c->certificate->z);
  }
  return line + "\n";
}

std::string summarize(const ControllabilityReport& r) {
  std::ostringstream os;
  os << "verdict: " << to_string(r.verdict) << "\n";
  os << condition_line("(i)   PBH rank        ", r.condition_i);
  os << condition_line("(ii)  sign test       ", r.condition_ii);
  if (r.condition_iii) {
    const SparsityOutcome& c = *r.condition_iii;
    os << "(iii) s >= N - rank A  " << (c.passed ? "passed" : "failed") << "  s = " << c.s
       << ", N = " << c.state_dim << ", rank A = " << c.rank_a << "\n";
  } else {
    os << "(iii) s >= N - rank A  skipped\n";
  }
  os << "eigenvalues:\n";
  os << "  lambda                      alg  geo  real>=0  residual\n";
  for (const EigenTableRow& row : r.eigenvalues) {
    std::string lam = fmt(row.lambda);
    lam.resize(std::max<std::size_t>(lam.size(), 26), ' ');
    char buf[128];
    std::snprintf(buf, sizeof buf, "  %s  %3d  %3d  %-7s  %.2e%s\n", lam.c_str(),
                  row.algebraic_multiplicity, row.geometric_multiplicity,
                  row.real_nonnegative ? "yes" : "no", row.residual, row.merged ? "  merged" : "");
    os << buf;
  }
  return os.str();
}

Mat load_phi(const std::string& path) {
  json j = load_json_file(path, "basis");
  if (j.is_object()) {
    if (!j.contains("Phi")) throw InputError("basis file: missing required key \"Phi\"");
    j = j["Phi"];
  }
  return matrix_from_json(j, "Phi");
}

CommandOutput run_check(const LoadedSystem& in, const Options& o, const Tolerances& tol) {
  SystemPair sys = in.file.system();
  if (!o.phi_path.empty()) sys = apply_input_basis(sys, load_phi(o.phi_path));

  std::optional<int> s = o.s_given ? std::optional<int>(o.s) : in.file.s;
  const ControllabilityReport report =
      s ? check_nonneg_sparse(sys, SparsityLevel(*s), tol) : check_nonneg(sys, tol);

  CommandOutput out;
  out.result["s"] = s ? json(*s) : json(nullptr);
  out.result["mode"] = s ? "nonneg_sparse" : "nonneg";
  out.result["N"] = sys.state_dim();
  out.result["m"] = sys.input_dim();
  out.result["basis_applied"] = !o.phi_path.empty();
  out.result["report"] = to_json(report);
  const std::optional<Certificate> cert = report.certificate();
  out.result["certificate"] = cert ? to_json(*cert) : json(nullptr);
  std::string summary = summarize(report);
  if (cert) {
    const CertificateCheck check = verify_certificate(sys, *cert, tol);
    out.result["certificate_check"] = to_json(check);
    summary += std::string("certificate check: ") + (check.valid ? "valid" : "INVALID") + "\n";
  } else {
    out.result["certificate_check"] = nullptr;
  }
  out.summary = summary;
  return out;
}

CommandOutput run_min_sparsity(const LoadedSystem& in, const Tolerances& tol) {
  const SystemPair sys = in.file.system();
  const int rank_a = rank(sys.a(), tol);
  CommandOutput out;
  out.result["N"] = sys.state_dim();
  out.result["m"] = sys.input_dim();
  out.result["rank_A"] = rank_a;
  out.result["required"] = sys.state_dim() - rank_a;
  const std::optional<int> s_min = min_sparsity(sys, tol);
  out.result["nonneg_controllable"] = s_min.has_value();
  out.result["min_sparsity"] = s_min ? json(*s_min) : json(nullptr);
  out.result["corollary_bound"] = std::max(1, sys.input_dim() - 1);
  out.result["corollary_bound_holds"] = corollary_bound_check(sys, tol);
  out.summary = s_min ? "minimum sparsity: " + std::to_string(*s_min) + "\n"
                      : std::string("not nonnegative controllable for any s\n");
  return out;
}

CommandOutput run_oracle(const LoadedSystem& in, const Options& o, const Tolerances& tol) {
  const SystemPair sys = in.file.system();
  std::optional<int> s = o.s_given ? std::optional<int>(o.s) : in.file.s;
  if (!s) throw InputError("oracle: sparsity level needed (--s or \"s\" in the system file)");
  OracleConfig cfg;
  cfg.k_max = o.k_max;
  cfg.n_directions = o.samples;
  cfg.seed = o.seed;
  cfg.include_axes = !o.no_axes;
  cfg.validate();
  const OracleVerdict verdict = coverage_probe(sys, SparsityLevel(*s), cfg, tol);

  CommandOutput out;
  out.result["s"] = *s;
  out.result["config"] = to_json(cfg);
  out.result["verdict"] = to_json(verdict);
  std::ostringstream os;
  if (verdict.covered) {
    os << "covered at K = " << verdict.covered_at;
  } else {
    os << "uncovered: " << verdict.uncovered_directions.size() << " of " << verdict.probe_count
       << " probes unreached by K = " << verdict.k_used << " (inconclusive)";
  }
  os << ", " << verdict.lp_count << " LPs\n";
  out.summary = os.str();
  return out;
}

CommandOutput run_decompose(const LoadedSystem& in, const Tolerances& tol) {
  const Mat& a = in.file.a;
  const ChainDecomposition dec = build_decomposition(a, tol);
  const DecompositionReport rep = verify_decomposition(a, dec, tol);
  CommandOutput out;
  out.result["decomposition"] = to_json(dec);
  out.result["verification"] = to_json(rep);
  std::ostringstream os;
  os << "n = " << dec.structure.n << ", q = " << dec.structure.q << ", rank A = "
     << dec.structure.rank_a << "\n";
  for (const PropertyCheck& c : rep.checks) {
    os << "  " << (c.passed ? "ok    " : "FAILED") << "  " << c.name << "  " << fmt(c.residual)
       << " <= " << fmt(c.bound) << "\n";
  }
  out.summary = os.str();
  if (!rep.all_passed()) out.exit_code = kExitNumericError;
  return out;
}

Certificate find_certificate(const json& doc) {
  if (doc.is_object() && doc.contains("kind")) return certificate_from_json(doc);
  if (doc.is_object() && doc.contains("certificate") && doc["certificate"].is_object()) {
    return certificate_from_json(doc["certificate"]);
  }
  // A saved `check` report.
  if (doc.is_object() && doc.contains("result") && doc["result"].is_object() &&
      doc["result"].contains("certificate") && doc["result"]["certificate"].is_object()) {
    return certificate_from_json(doc["result"]["certificate"]);
  }
  throw InputError("certificate file: no certificate object found");
}

CommandOutput run_verify_cert(const LoadedSystem& in, const Options& o, const Tolerances& tol) {
  SystemPair sys = in.file.system();
  if (!o.phi_path.empty()) sys = apply_input_basis(sys, load_phi(o.phi_path));
  const Certificate cert = find_certificate(load_json_file(o.cert_path, "certificate"));
  if (cert.z.size() != sys.state_dim()) {
    throw InputError("certificate: z has " + std::to_string(cert.z.size()) +
                     " entries, expected " + std::to_string(sys.state_dim()));
  }
  const CertificateCheck check = verify_certificate(sys, cert, tol);
  CommandOutput out;
  out.result["certificate"] = to_json(cert);
  out.result["check"] = to_json(check);
  std::string summary = std::string("certificate ") + (check.valid ? "valid" : "invalid") + "\n";
  for (const std::string& f : check.failures) summary += "  " + f + "\n";
  out.summary = summary;
  return out;
}

void add_tolerance_options(CLI::App& app, Options& o) {
  app.add_option("--tol", o.tol_all, "Set all three tolerances");
  app.add_option("--rank-rtol", o.rank_rtol, "Relative singular value threshold for ranks");
  app.add_option("--eig-imag-tol", o.eig_imag_tol, "Eigenvalue clustering / realness tolerance");
  app.add_option("--ineq-tol", o.ineq_tol, "Inequality and residual tolerance");
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json strip_wall_time(json report) {
  if (report.is_object()) report.erase("wall_time_ms");
  return report;
}

RunResult run_command(const std::vector<std::string>& args) {
  const auto start = std::chrono::steady_clock::now();
  Options o;
  CLI::App app{"Nonnegative sparse controllability analysis", "nnsc"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.add_flag("--pretty", o.pretty, "Print a human summary on stderr");
  add_tolerance_options(app, o);

  auto add_system = [&](CLI::App* sub) {
    sub->add_option("system", o.system_path, "System file (JSON)")->required();
    sub->fallthrough();
  };
  auto add_s = [&](CLI::App* sub) {
    sub->add_option("--s", o.s, "Sparsity level (overrides the file)")
        ->each([&](const std::string&) { o.s_given = true; });
  };

  CLI::App* check = app.add_subcommand("check", "Decide nonnegative (s-sparse) controllability");
  add_system(check);
  add_s(check);
  check->add_option("--phi", o.phi_path, "Input basis file; analyse (A, B Phi)");

  CLI::App* minsp = app.add_subcommand("min-sparsity", "Smallest sufficient sparsity level");
  add_system(minsp);

  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force reachability coverage probe");
  add_system(oracle);
  add_s(oracle);
  oracle->add_option("--kmax", o.k_max, "Largest horizon");
  oracle->add_option("--samples", o.samples, "Number of random probe directions");
  oracle->add_option("--seed", o.seed, "Probe seed");
  oracle->add_flag("--no-axes", o.no_axes, "Omit the signed coordinate axes from the probes");

  CLI::App* decompose = app.add_subcommand("decompose", "Zero-eigenvalue chain decomposition");
  add_system(decompose);

  CLI::App* verify = app.add_subcommand("verify-cert", "Check a certificate against a system");
  add_system(verify);
  verify->add_option("--cert", o.cert_path, "Certificate file")->required();
  verify->add_option("--phi", o.phi_path, "Input basis file; verify against (A, B Phi)");

  CLI::App* gen = app.add_subcommand("gen", "Generate a test system");
  gen->add_option("--kind", o.kind, "planted_uncontrollable_ii | planted_rank_deficient | "
                                    "random_nonsingular_paired")
      ->required();
  gen->add_option("--n", o.n, "State dimension N")->required();
  gen->add_option("--m", o.m, "Input dimension m")->required();
  gen->add_option("--seed", o.seed, "Generator seed")->required();
  gen->add_option("--d", o.d, "Rank deficiency (planted_rank_deficient)");
  gen->fallthrough();

  RunResult rr;
  std::string command;
  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    rr.exit_code = code;
    rr.report = {{"tool", "nnsc"},
                 {"version", kToolVersion},
                 {"command", command.empty() ? json(nullptr) : json(command)},
                 {"error", {{"kind", kind}, {"message", message}}}};
    rr.out = rr.report.dump(2) + "\n";
    rr.err = "error: " + message + "\n";
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    if (code == 0) {
      rr.out = out.str();
      rr.err = err.str();
      return rr;
    }
    fail(kExitInputError, "usage", e.what());
    rr.err = err.str();
    return rr;
  }

  for (CLI::App* sub : app.get_subcommands()) command = sub->get_name();

  try {
    const Tolerances tol = resolve_tolerances(o);

    if (command == "gen") {
      const SystemFile f =
          generate_system(parse_generator_kind(o.kind), o.n, o.m, o.seed, o.d);
      rr.report = system_file_to_json(f);
      rr.out = rr.report.dump(2) + "\n";
      if (o.pretty) rr.err = "generated " + f.name.value_or("system") + "\n";
      return rr;
    }

    const LoadedSystem in = load_system(o.system_path);
    CommandOutput res;
    if (command == "check") {
      res = run_check(in, o, tol);
    } else if (command == "min-sparsity") {
      res = run_min_sparsity(in, tol);
    } else if (command == "oracle") {
      res = run_oracle(in, o, tol);
    } else if (command == "decompose") {
      res = run_decompose(in, tol);
    } else {
      res = run_verify_cert(in, o, tol);
    }

    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    json input = {{"digest", in.digest}};
    input["name"] = in.file.name ? json(*in.file.name) : json(nullptr);
    rr.report = {{"tool", "nnsc"},          {"version", kToolVersion}, {"command", command},
                 {"input", input},          {"tolerances", to_json(tol)},
                 {"result", res.result},    {"wall_time_ms", ms}};
    rr.exit_code = res.exit_code;
    if (res.exit_code == kExitNumericError) {
      rr.report["error"] = {{"kind", "numeric"}, {"message", command + ": verification failed"}};
    }
    rr.out = rr.report.dump(2) + "\n";
    if (o.pretty) rr.err = res.summary;
  } catch (const InputError& e) {
    fail(kExitInputError, "input", e.what());
  } catch (const json::exception& e) {
    fail(kExitInputError, "input", e.what());
  } catch (const NoFeasibleSparsityError& e) {
    fail(kExitNumericError, "no_feasible_sparsity", e.what());
  } catch (const NotInConeError& e) {
    fail(kExitNumericError, "not_in_cone", e.what());
  } catch (const NumericError& e) {
    fail(kExitNumericError, "numeric", e.what());
  } catch (const std::exception& e) {
    fail(kExitNumericError, "internal", e.what());
  }
  return rr;
}

}  // namespace nnsc
