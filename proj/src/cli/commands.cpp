#include "bergman/cli/commands.hpp"

#include <json.hpp>

#include "bergman/cli/serialize.hpp"
#include "bergman/cli/verify.hpp"
#include "bergman/errors.hpp"

namespace bergman::cli {

using nlohmann::json;

namespace {

void emit(std::ostream& out, const json& document) { out << document.dump(2) << '\n'; }

void diagnostic(std::ostream& err, const char* kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int cmd_eigens(const RunConfig& config, const SymbolSpec& symbol, std::ostream& out,
               std::ostream&) {
  config.validate();
  const auto s =
      eigenvalue_sequence(symbol, config.weight(), config.max_degree, config.spectral_options());
  if (config.format == OutputFormat::Json) {
    json j = to_json(s);
    j["symbol"] = symbol.to_string();
    emit(out, j);
  } else {
    write_csv(out, s);
  }
  return Ok;
}

int cmd_matrix(const RunConfig& config, const SymbolSpec& symbol, MatrixMethod method,
               std::ostream& out, std::ostream& err) {
  config.validate();
  const auto opts = config.spectral_options();
  const auto op = truncated_matrix(symbol, config.weight(), config.max_degree, method, opts);
  double diff = 0.0;
  if (method == MatrixMethod::Oracle) {
    const auto diagonal =
        truncated_matrix(symbol, config.weight(), config.max_degree, MatrixMethod::Diagonal, opts);
    diff = (op.entries - diagonal.entries).cwiseAbs().maxCoeff();
    err << "max_abs_diff_vs_diagonal " << format_double(diff) << '\n';
  }
  if (config.format == OutputFormat::Json) {
    json j = to_json(op);
    j["symbol"] = symbol.to_string();
    if (method == MatrixMethod::Oracle) j["max_abs_diff_vs_diagonal"] = diff;
    emit(out, j);
  } else {
    write_csv(out, op);
  }
  if (diff > config.tolerance) {
    diagnostic(err, "oracle_disagreement",
               "oracle and diagonal matrices differ by " + format_double(diff));
    return CheckFailed;
  }
  return Ok;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto report = run_verification(config);
  if (config.format == OutputFormat::Json)
    emit(out, to_json(report));
  else
    write_csv(out, report);
  for (const auto& c : report.checks)
    if (!c.passed)
      err << "FAIL " << c.name << " residual " << format_double(c.residual) << " > "
          << format_double(c.threshold) << ": " << c.detail << '\n';
  return report.passed() ? Ok : CheckFailed;
}

int cmd_spectrum(const RunConfig& config, const SymbolSpec& symbol, std::ostream& out,
                 std::ostream& err) {
  if (!symbol.is_radial()) {
    diagnostic(err, "usage", "spectrum requires a radial symbol, got " + symbol.to_string());
    return UsageError;
  }
  config.validate();
  const auto s =
      eigenvalue_sequence(symbol, config.weight(), config.max_degree, config.spectral_options());
  const auto spectrum = spectrum_summary(s, config.tolerance);
  if (config.format == OutputFormat::Json) {
    json j = spectrum_to_json(spectrum, config.weight());
    j["symbol"] = symbol.to_string();
    emit(out, j);
  } else {
    write_spectrum_csv(out, spectrum);
  }
  return Ok;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ParseError& e) {
    diagnostic(err, "parse", e.what());
  } catch (const ValidationError& e) {
    diagnostic(err, "validation", e.what());
  } catch (const DomainError& e) {
    diagnostic(err, "domain", e.what());
  } catch (const ArgumentError& e) {
    diagnostic(err, "argument", e.what());
  } catch (const NumericError& e) {
    diagnostic(err, "numeric", e.what());
    return NumericFailure;
  } catch (const ConsistencyError& e) {
    diagnostic(err, "consistency", e.what());
    return NumericFailure;
  }
  return UsageError;
}

}  // namespace bergman::cli
