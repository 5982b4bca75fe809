#pragma once

// Subcommands of the bergman tool. Each writes its table or document to `out`,
// diagnostics to `err`, and returns the process exit code:
//   0  success
//   1  a verification check or oracle agreement check failed
//   2  usage error (bad flag value, unparsable or unsupported symbol)
//   3  numeric error (quadrature breakdown, oracle tolerance exceeded)

#include <functional>
#include <ostream>

#include "bergman/cli/run_config.hpp"
#include "bergman/spectral.hpp"
#include "bergman/symbol.hpp"

namespace bergman::cli {

enum ExitCode : int { Ok = 0, CheckFailed = 1, UsageError = 2, NumericFailure = 3 };

int cmd_eigens(const RunConfig& config, const SymbolSpec& symbol, std::ostream& out,
               std::ostream& err);

/// With the oracle method the largest |oracle - diagonal| entry is reported on
/// `err` (and in the JSON document); exceeding the tolerance yields CheckFailed.
int cmd_matrix(const RunConfig& config, const SymbolSpec& symbol, MatrixMethod method,
               std::ostream& out, std::ostream& err);

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Radial symbols only; anything else is a usage error.
int cmd_spectrum(const RunConfig& config, const SymbolSpec& symbol, std::ostream& out,
                 std::ostream& err);

/// Runs `body`, mapping library exceptions to exit codes and printing a
/// one-line JSON diagnostic record on `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace bergman::cli
