#pragma once

// Self-check suites over the whole library. Each check records the largest
// residual seen against its tolerance; count-style checks record the number
// of mismatches against a tolerance of zero.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dmsym/generators.hpp"

namespace dmsym {

enum class VerifyLevel { Fast, Full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Fast;
  std::uint64_t seed = 20240917;
  /// Fault-injection hook: every generator a suite builds from a GeneratorId
  /// is passed through this before use.
  std::function<Superoperator(const GeneratorId&, Superoperator)> corrupt;
};

struct CheckResult {
  std::string suite;
  std::string check;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::Fast;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Distinct suite names with at least one failing check, in run order.
  std::vector<std::string> failed_suites() const;
};

std::string to_string(VerifyLevel level);

VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace dmsym
