#pragma once

// Brute-force evaluation of normalized weighted Bergman inner products
//
//   < a z^m, z^m' >_alpha / (||z^m||_alpha ||z^m'||_alpha)
//
// for invariant symbols a. Nothing here uses the closed-form Gamma quotients
// of the eigenvalue formulas: the polar oracle integrates in per-axis polar
// coordinates z_j = s_j e^{i theta_j} and normalizes by integrated monomial
// norms, so the constant c_alpha cancels.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "bergman/quadrature.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

enum class OracleMethod { PolarQuadrature, MonteCarlo };

struct OracleEffort {
  int radial_points = 0;
  int angular_points = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct OracleResult {
  std::complex<double> value;
  /// Polar: |value(N) - value(N/2)|. Monte Carlo: standard error (> 0).
  double error_estimate = 0.0;
  OracleMethod method = OracleMethod::PolarQuadrature;
  OracleEffort effort;
};

/// Polar-coordinate oracle for one symbol and weight. Radial moments are cached
/// by exponent vector and angular factors by frequency vector, so assembling a
/// matrix costs one radial integral per distinct m + m'.
class PolarOracle {
 public:
  /// Throws ArgumentError if the symbol does not fit dimension w.n().
  PolarOracle(const SymbolSpec& symbol, const Weight& weight, int radial_points,
              int angular_points);

  /// Throws ArgumentError on length mismatch or when the angular rule cannot
  /// resolve max_j |m_j - m'_j|.
  OracleResult inner_product(const MultiIndex& m, const MultiIndex& m2);

  /// Computes, in one batched pass per order, every radial moment that
  /// inner_product needs for pairs drawn from `basis`.
  void prepare(const std::vector<MultiIndex>& basis);
  /// The same for monomial_product.
  void prepare_monomials(const std::vector<MultiIndex>& basis);

  /// Unnormalized < z^m, z^m' >_alpha with v_alpha(B^n) = 1 imposed by dividing by
  /// the integrated total mass; a is not involved.
  std::complex<double> monomial_product(const MultiIndex& m, const MultiIndex& m2);

  const Weight& weight() const noexcept { return weight_; }

 private:
  enum Order { Fine = 0, Coarse = 1 };
  enum Integrand { Symbol = 0, Unit = 1 };
  using MomentCache = std::map<std::vector<int>, double>;

  double radial_moment(const std::vector<int>& exponent_sum, Order order, Integrand integrand);
  void fill(const std::vector<std::vector<int>>& sums, Order order, Integrand integrand);
  std::complex<double> angular_factor(const std::vector<int>& frequency);
  void check_pair(const MultiIndex& m, const MultiIndex& m2) const;

  SymbolSpec symbol_;
  Weight weight_;
  int radial_points_;
  int angular_points_;
  RadiiProfile symbol_profile_;
  RadiiProfile unit_profile_;
  QuadratureRule torus_;
  MomentCache moments_[2][2];
  std::map<std::vector<int>, std::complex<double>> angular_;
};

OracleResult inner_product_polar(const SymbolSpec& a, const MultiIndex& m, const MultiIndex& m2,
                                 const Weight& w, int radial_points, int angular_points);

/// Monte Carlo estimate with z drawn exactly from v_alpha: |z|^2 ~ Beta(n, alpha + 1)
/// (from dv = 2n r^{2n-1} dr dsigma) and a uniform direction on S^{2n-1}.
/// Deterministic for a fixed seed. Throws ArgumentError if samples < 1000.
OracleResult inner_product_mc(const SymbolSpec& a, const MultiIndex& m, const MultiIndex& m2,
                              const Weight& w, std::uint64_t samples, std::uint64_t seed);

struct MonteCarloMatrix {
  Eigen::MatrixXcd values;
  Eigen::MatrixXd standard_errors;
};

/// Every normalized entry <a e_m, e_m'> over `basis` from one shared sample stream.
MonteCarloMatrix monte_carlo_matrix(const SymbolSpec& a, const std::vector<MultiIndex>& basis,
                                    const Weight& w, std::uint64_t samples, std::uint64_t seed);

/// ||z^m||^2_alpha by polar integration.
double monomial_norm_sq_oracle(const MultiIndex& m, const Weight& w, int radial_points,
                               int angular_points);

/// ||f_k||^2_alpha for f_k = sum_{|m|=k} sqrt(k!/m!) z^m, integrating every
/// cross term <z^m, z^m'> (m != m' included).
double fk_norm_oracle(int k, const Weight& w, int radial_points, int angular_points);

}  // namespace bergman
