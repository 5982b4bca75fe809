#pragma once

#include <string>
#include <vector>

#include "bergman/cli/run_config.hpp"
#include "bergman/symbol.hpp"

namespace bergman::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Radial test symbols: constant, s^2, s^4, indicator(s <= 0.7), a polynomial in s^2.
std::vector<SymbolSpec> radial_battery();

/// Separately radial test symbols on n axes: constant, per-axis powers, per-axis
/// steps, per-axis polynomials, and a mixed product.
std::vector<SymbolSpec> separately_radial_battery(int n);

/// Runs every invariant check at the configured n, alpha, max_degree and orders.
/// Numeric failures inside a check are recorded as failed checks.
VerificationReport run_verification(const RunConfig& config);

}  // namespace bergman::cli
