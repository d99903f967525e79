#include "mtqcl/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "mtqcl/probability.hpp"

namespace mtqcl::cli {

namespace {

using nlohmann::json;

constexpr double kSnap = 1e-12;

std::string join(const WireSet& wires) {
  if (wires.empty()) return "(none)";
  std::string s;
  for (int w : wires) s += (s.empty() ? "" : " ") + std::to_string(w);
  return s;
}

std::string join(const std::vector<int>& wires) {
  std::string s;
  for (int w : wires) s += (s.empty() ? "" : " ") + std::to_string(w);
  return s;
}

std::string scientific(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

double snap(double x) {
  for (double anchor : {0.0, 1.0, -1.0}) {
    if (std::abs(x - anchor) <= kSnap) return anchor;
  }
  return x;
}

CommandResult usage_error(const std::string& message) {
  return {exit_code::kUsage, "", message + "\n"};
}

}  // namespace

std::string format_number(double x) {
  x = snap(x);
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

CommandResult cmd_analyze(const CircuitFile& file, const CommandOptions& opts) {
  const Circuit& c = file.circuit;
  const TargetProfile profile = circuit_target_profile(c, opts.tol);
  CommandResult result;
  if (opts.json) {
    json steps = json::array();
    for (const auto& step : c.steps()) {
      steps.push_back({{"gate", step.gate.name()},
                       {"wires", step.wires},
                       {"targets", gate_target_wires(step, opts.tol)},
                       {"declared", step.declared_targets.has_value()}});
    }
    json doc = {{"qubits", c.num_wires()},
                {"steps", steps},
                {"targets", profile.targets},
                {"controls", profile.controls}};
    result.out = doc.dump(2) + "\n";
    return result;
  }
  std::ostringstream os;
  os << "qubits: " << c.num_wires() << '\n';
  for (std::size_t i = 0; i < c.steps().size(); ++i) {
    const auto& step = c.steps()[i];
    os << "step " << i + 1 << ": " << step.gate.name() << ' ' << join(step.wires)
       << " -> targets: " << join(gate_target_wires(step, opts.tol))
       << (step.declared_targets ? " (declared)" : "") << '\n';
  }
  os << "targets: " << join(profile.targets) << "; controls: " << join(profile.controls) << '\n';
  result.out = os.str();
  return result;
}

CommandResult cmd_prob(const CircuitFile& file, const CommandOptions& opts) {
  const auto rho = file.density();
  if (!rho) return usage_error("prob: the circuit file declares no input state");
  check_cap(file.num_wires(), opts.cap);

  EvaluationOptions eval{opts.tol, opts.cap,
                         opts.fault == Fault::TransposedFredkinLambda
                             ? FredkinLambdaForm::TransposedDisplay
                             : FredkinLambdaForm::Derived};
  const auto factors = file.factors();
  const ProbabilityReport report = crosscheck(file.circuit, *rho, factors, eval);
  const double qcl_out = qcl_probability(apply(file.circuit, *rho, opts.cap));

  CommandResult result;
  if (opts.json) {
    json evaluators = json::object();
    for (const auto& [name, value] : report.value_by_evaluator) evaluators[name] = value;
    json doc = {{"mtqcl", display_value(report.value())},
                {"qcl_out", display_value(qcl_out)},
                {"evaluators", evaluators},
                {"max_discrepancy", report.max_discrepancy},
                {"targets", report.target_profile.targets},
                {"consistent", report.consistent(opts.tol)}};
    result.out = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "mtqcl: " << format_number(display_value(report.value())) << '\n';
    os << "qcl_out: " << format_number(display_value(qcl_out)) << '\n';
    os << "targets: " << join(report.target_profile.targets) << '\n';
    os << "evaluators:\n";
    for (const auto& [name, value] : report.value_by_evaluator) {
      os << "  " << name << ": " << format_number(display_value(value)) << '\n';
    }
    os << "max_discrepancy: " << scientific(report.max_discrepancy) << '\n';
    result.out = os.str();
  }
  if (!report.consistent(opts.tol)) {
    result.exit_code = exit_code::kVerificationFailed;
    result.err = "prob: evaluators disagree by " + scientific(report.max_discrepancy) +
                 " (tolerance " + scientific(opts.tol) + ")\n";
  }
  return result;
}

CommandResult cmd_matrix(const CircuitFile& file, const CommandOptions& opts) {
  const ComplexMatrix u = compose_unitary(file.circuit, opts.cap);
  bool real = true;
  for (const auto& z : u.data()) real = real && std::abs(z.imag()) <= kSnap;

  CommandResult result;
  std::optional<double> oracle_diff;
  if (opts.oracle) oracle_diff = max_abs_diff(u, compose_unitary_via_swap_chain(file.circuit, opts.cap));

  if (opts.json) {
    json re = json::array();
    json im = json::array();
    for (std::size_t r = 0; r < u.dim(); ++r) {
      json re_row = json::array();
      json im_row = json::array();
      for (std::size_t c = 0; c < u.dim(); ++c) {
        re_row.push_back(u(r, c).real());
        im_row.push_back(u(r, c).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    json doc = {{"dim", u.dim()}, {"real", re}, {"imag", im}};
    doc["oracle_max_diff"] = oracle_diff ? json(*oracle_diff) : json(nullptr);
    result.out = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (std::size_t r = 0; r < u.dim(); ++r) {
      for (std::size_t c = 0; c < u.dim(); ++c) {
        if (c) os << ' ';
        os << format_number(u(r, c).real());
        if (!real) os << ',' << format_number(u(r, c).imag());
      }
      os << '\n';
    }
    if (oracle_diff) os << "oracle_max_diff: " << scientific(*oracle_diff) << '\n';
    result.out = os.str();
  }
  if (oracle_diff && *oracle_diff > opts.tol) {
    result.exit_code = exit_code::kVerificationFailed;
    result.err = "matrix: composition differs from the swap-chain reference by " +
                 scientific(*oracle_diff) + "\n";
  }
  return result;
}

CommandResult cmd_verify(const VerifyConfig& config, const CommandOptions& opts) {
  if (config.kmax < 3) return usage_error("verify: --kmax must be at least 3");
  if (config.kmax > opts.cap) {
    return usage_error("verify: --kmax " + std::to_string(config.kmax) + " exceeds the wire cap " +
                       std::to_string(opts.cap));
  }
  std::vector<SuiteResult> results;
  try {
    results = run_verification(config);
  } catch (const std::invalid_argument& e) {
    return usage_error(std::string("verify: ") + e.what());
  }

  int failed = 0;
  CommandResult result;
  if (opts.json) {
    json suites = json::array();
    for (const auto& r : results) {
      failed += r.passed ? 0 : 1;
      json item = {{"name", r.name},
                   {"passed", r.passed},
                   {"worst_error", r.worst_error},
                   {"checks", r.checks}};
      if (!r.passed) item["detail"] = r.detail;
      suites.push_back(item);
    }
    json doc = {{"seed", config.seed}, {"kmax", config.kmax}, {"suites", suites},
                {"failed", failed}};
    result.out = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (const auto& r : results) {
      failed += r.passed ? 0 : 1;
      os << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << "  worst_error=" << scientific(r.worst_error)
         << "  checks=" << r.checks << '\n';
      if (!r.passed) os << "       " << r.detail << '\n';
    }
    os << results.size() - failed << '/' << results.size() << " suites passed (seed " << config.seed
       << ", kmax " << config.kmax << ")\n";
    result.out = os.str();
  }
  if (failed) result.exit_code = exit_code::kVerificationFailed;
  return result;
}

CommandResult run_file_command(std::string_view command, const std::filesystem::path& path,
                               const CommandOptions& opts) {
  try {
    const CircuitFile file = load_circuit_file(path);
    if (command == "analyze") return cmd_analyze(file, opts);
    if (command == "prob") return cmd_prob(file, opts);
    if (command == "matrix") return cmd_matrix(file, opts);
    return usage_error("unknown command '" + std::string(command) + "'");
  } catch (const ParseError& e) {
    return usage_error(e.what());
  } catch (const CapExceededError& e) {
    return {exit_code::kCapExceeded, "", std::string(e.what()) + "\n"};
  }
}

}  // namespace mtqcl::cli
