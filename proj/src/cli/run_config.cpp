#include "bergman/cli/run_config.hpp"

#include <cmath>

#include "bergman/errors.hpp"

namespace bergman::cli {

void RunConfig::validate() const {
  Weight check(n, alpha);
  (void)check;
  if (max_degree < 0) throw ArgumentError("--max-degree must be non-negative");
  if (radial_points < 1 || simplex_points < 1)
    throw ArgumentError("quadrature orders must be at least 1");
  if (mc_samples < 1000) throw ArgumentError("--mc-samples must be at least 1000");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw ArgumentError("--tolerance must be a positive number");
}

SpectralOptions RunConfig::spectral_options() const {
  SpectralOptions o;
  o.radial_points = radial_points;
  o.simplex_points = simplex_points;
  o.oracle_radial_points = radial_points;
  o.oracle_angular_points = effective_angular_points();
  o.oracle_tolerance = tolerance;
  return o;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ArgumentError("--format must be csv or json, got '" + text + "'");
}

}  // namespace bergman::cli
