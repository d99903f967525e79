#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mtqcl/circuits.hpp"
#include "mtqcl/cli/circuit_file.hpp"
#include "mtqcl/cli/verify.hpp"

namespace mtqcl::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kVerificationFailed = 2;
inline constexpr int kCapExceeded = 3;
}  // namespace exit_code

struct CommandOptions {
  bool json = false;
  int cap = kDefaultWireCap;
  double tol = kDefaultTol;
  /// matrix: also compose through the adjacent-swap reference and compare.
  bool oracle = false;
  Fault fault = Fault::None;
};

struct CommandResult {
  int exit_code = exit_code::kOk;
  std::string out;
  std::string err;
};

/// 15 significant digits; values within 1e-12 of 0 or +-1 print as such.
std::string format_number(double x);

CommandResult cmd_analyze(const CircuitFile& file, const CommandOptions& opts);
CommandResult cmd_prob(const CircuitFile& file, const CommandOptions& opts);
CommandResult cmd_matrix(const CircuitFile& file, const CommandOptions& opts);
CommandResult cmd_verify(const VerifyConfig& config, const CommandOptions& opts);

/// Loads `path` and dispatches to analyze, prob or matrix, mapping parse
/// errors and the wire cap to exit codes.
CommandResult run_file_command(std::string_view command, const std::filesystem::path& path,
                               const CommandOptions& opts);

}  // namespace mtqcl::cli
