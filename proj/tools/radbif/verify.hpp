#pragma once

// The invariant suite behind `radbif verify`. Every check has a name, a
// measured value and a limit; tolerance checks take an injected tolerance
// (--check-tol) in place of their own, which is how the suite is shown to
// be falsifiable.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "radbif/shooting.hpp"
#include "report.hpp"

namespace radbif::cli {

enum class CheckKind {
  AtMost,    // value <= limit (residuals, relative errors)
  AtLeast,   // value >= -limit (relative inequality slack)
  Property,  // boolean; value is the observed quantity, limit unused
  Info,      // reported only, never fails
};
const char* to_string(CheckKind k);

struct CheckResult {
  std::string suite;
  std::string name;
  CheckKind kind = CheckKind::AtMost;
  double value = 0.0;
  double limit = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = 1;
  std::optional<double> check_tol;
  // Re-integration of sampled solutions.
  Tolerances tol = verification_tolerances();
  int samples = 50;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::uint64_t seed = 0;
  std::vector<std::string> suites;
  std::optional<double> check_tol;

  std::size_t failures() const;
  Document to_document() const;
};

/// Suites: specfun, model, timemap, shooting, branch, dirichlet; "all" runs
/// every one. Throws ParameterError for an unknown name.
VerifyReport run_verify(const VerifyOptions& opt);

std::vector<std::string> known_suites();

}  // namespace radbif::cli
