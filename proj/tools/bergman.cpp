// bergman: eigenvalues, matrices, spectra and self-verification of Toeplitz
// operators with invariant symbols on weighted Bergman spaces of the ball.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bergman/cli/commands.hpp"
#include "bergman/cli/parse_symbol.hpp"
#include "bergman/errors.hpp"

namespace {

using bergman::cli::RunConfig;

void add_common(CLI::App& app, RunConfig& c, std::string& format) {
  app.add_option("--n", c.n, "Complex dimension")->capture_default_str();
  app.add_option("--alpha", c.alpha, "Weight exponent, > -1")->capture_default_str();
  app.add_option("--max-degree", c.max_degree, "Largest |m| computed")->capture_default_str();
  app.add_option("--radial-N", c.radial_points, "1-D Gauss-Jacobi and oracle radial order")
      ->capture_default_str();
  app.add_option("--simplex-N", c.simplex_points, "Gauss-Jacobi order per simplex axis")
      ->capture_default_str();
  app.add_option("--angular-M", c.angular_points, "Oracle angular nodes per axis (0: auto)")
      ->capture_default_str();
  app.add_option("--mc-samples", c.mc_samples, "Monte Carlo samples")->capture_default_str();
  app.add_option("--seed", c.seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--tolerance", c.tolerance, "Oracle and consistency tolerance")
      ->capture_default_str();
  app.add_option("--format", format, "csv or json")->capture_default_str();
  app.add_option("--out", c.output_path, "Output file (default: standard output)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace bergman;
  using namespace bergman::cli;

  CLI::App app{"Toeplitz operators with invariant symbols on weighted Bergman spaces"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "csv";
  std::string symbol_text;
  std::string method = "diagonal";

  auto* eigens = app.add_subcommand("eigens", "Eigenvalue sequence up to --max-degree");
  auto* matrix = app.add_subcommand("matrix", "Truncated operator matrix with basis legend");
  auto* verify = app.add_subcommand("verify", "Run the invariant checks");
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and multiplicities (radial)");
  for (auto* sub : {eigens, matrix, verify, spectrum}) add_common(*sub, config, format);
  for (auto* sub : {eigens, matrix, spectrum})
    sub->add_option("--symbol", symbol_text, "e.g. radial:pow(2) or seprad:pow(2)*const(1)")
        ->required();
  matrix->add_option("--method", method, "diagonal or oracle")
      ->check(CLI::IsMember({"diagonal", "oracle"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ExitCode::Ok : ExitCode::UsageError;
  }

  std::ostringstream out;
  const int code = guarded(
      [&]() -> int {
        config.format = parse_format(format);
        config.validate();
        if (verify->parsed()) return cmd_verify(config, out, std::cerr);
        const SymbolSpec symbol = parse_symbol(symbol_text);
        symbol.check_dimension(config.n);
        if (eigens->parsed()) return cmd_eigens(config, symbol, out, std::cerr);
        if (spectrum->parsed()) return cmd_spectrum(config, symbol, out, std::cerr);
        return cmd_matrix(config, symbol,
                          method == "oracle" ? MatrixMethod::Oracle : MatrixMethod::Diagonal, out,
                          std::cerr);
      },
      std::cerr);

  if (config.output_path.empty()) {
    std::cout << out.str();
  } else if (!out.str().empty()) {
    std::ofstream file(config.output_path, std::ios::binary);
    file << out.str();
    if (!file) {
      std::cerr << "cannot write " << config.output_path << '\n';
      return ExitCode::UsageError;
    }
  }
  return code;
}
