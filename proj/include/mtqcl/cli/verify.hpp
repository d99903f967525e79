#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtqcl/linalg.hpp"

namespace mtqcl::cli {

/// Deliberate defects for negative testing of the suites.
enum class Fault {
  None,
  /// Build the Fredkin lambda from the transposed factor order.
  TransposedFredkinLambda,
};

std::optional<Fault> parse_fault(std::string_view name);

struct VerifyConfig {
  std::uint64_t seed = 20240101;
  int kmax = 5;
  /// Tolerance for probability agreement. Structural identities always use 1e-12.
  double tol = kDefaultTol;
  Fault fault = Fault::None;
  /// Suite names to run; empty runs all.
  std::vector<std::string> only;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  double worst_error = 0.0;
  int checks = 0;
  /// First failure, if any.
  std::string detail;
};

const std::vector<std::string>& suite_names();

/// Runs the property suites. Each suite draws from its own generator seeded
/// from `seed` and the suite name, so results do not depend on which suites run.
std::vector<SuiteResult> run_verification(const VerifyConfig& config);

}  // namespace mtqcl::cli
