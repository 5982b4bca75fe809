#pragma once

#include <cstdint>
#include <string>

#include "bergman/spectral.hpp"

namespace bergman::cli {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  int n = 2;
  double alpha = 0.0;
  int max_degree = 6;
  /// 1-D radial rules and the polar oracle's radial order.
  int radial_points = 48;
  int simplex_points = 32;
  /// <= 0 selects 2 * max_degree + 4.
  int angular_points = 0;
  std::uint64_t mc_samples = 200000;
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
  OutputFormat format = OutputFormat::Csv;
  /// Empty: standard output.
  std::string output_path;

  /// Throws DomainError / ArgumentError when an invariant is violated.
  void validate() const;

  Weight weight() const { return Weight(n, alpha); }
  int effective_angular_points() const {
    return angular_points > 0 ? angular_points : 2 * max_degree + 4;
  }
  SpectralOptions spectral_options() const;
};

OutputFormat parse_format(const std::string& text);

}  // namespace bergman::cli
