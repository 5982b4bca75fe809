#pragma once

// Eigenvalue sequences of Toeplitz operators T_a on H^2_alpha(B^n) with
// separately radial or radial symbols.
//
// In the orthonormal basis e_m = z^m / ||z^m||_alpha such an operator is the
// multiplication operator by gamma(m) = <a e_m, e_m>_alpha, where
//
//   gamma(m) = Gamma(n+|m|+alpha+1) / (m! Gamma(alpha+1))
//              * int_Delta a(sqrt r) r^m (1 - sum r)^alpha dr
//
// and, for radial a, gamma(m) = gamma_hat(|m|) with
//
//   gamma_hat(k) = int_0^1 a(sqrt r) r^(n+k-1) (1-r)^alpha dr / B(n+k, alpha+1).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bergman/special.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

struct SpectralOptions {
  /// Gauss-Jacobi order for the 1-D radial integrals.
  int radial_points = 32;
  /// Gauss-Jacobi order per axis for the simplex integrals.
  int simplex_points = 32;
  /// Polar oracle orders (oracle matrices only); angular_points <= 0 selects 2K + 4.
  int oracle_radial_points = 48;
  int oracle_angular_points = 0;
  /// Entries whose oracle error estimate exceeds this are reported as failures.
  double oracle_tolerance = 1e-8;
  /// Also evaluate at half the order and report the largest change.
  bool estimate_error = true;
};

/// gamma(m) through the simplex integral. Radial symbols are accepted and
/// treated as separately radial. Throws ArgumentError on a dimension mismatch.
double gamma_separately_radial(const SymbolSpec& a, const MultiIndex& m, const Weight& w,
                               int points);

/// The same eigenvalue through the integral over the positive part of the real ball:
/// 2^n Gamma(n+|m|+alpha+1)/(m! Gamma(alpha+1)) int a(s) s^(2m) (1-|s|^2)^alpha prod s_j ds_j.
double gamma_separately_radial_ball(const SymbolSpec& a, const MultiIndex& m, const Weight& w,
                                    int points);

/// The ball form for many multi-indices on shared nodes (integrate_positive_ball_batch).
std::vector<double> gamma_separately_radial_ball(const SymbolSpec& a,
                                                 const std::vector<MultiIndex>& indices,
                                                 const Weight& w, int points);

/// gamma_hat(k) for a radial symbol. Throws ArgumentError for non-radial symbols.
double gamma_radial(const SymbolSpec& a, int k, const Weight& w, int points);

/// gamma_hat(k) = 2 int_0^1 a(s) s^(2n+2k-1) (1-s^2)^alpha ds / B(n+k, alpha+1).
double gamma_radial_polar(const SymbolSpec& a, int k, const Weight& w, int points);

enum class SequenceMethod { ClosedFormQuadrature, Oracle };

/// Eigenvalues for every multi-index with |m| <= max_degree, in graded order.
struct EigenvalueSequence {
  Weight weight{1, 0.0};
  int max_degree = 0;
  SequenceMethod method = SequenceMethod::ClosedFormQuadrature;
  double error_estimate = 0.0;
  /// Upper bound for ||a||_inf of the generating symbol.
  double bound = 0.0;
  std::vector<MultiIndex> basis;
  std::vector<double> values;
  /// gamma_hat(0..max_degree) when the sequence came from a radial symbol.
  std::optional<std::vector<double>> degree_values;

  double value(const MultiIndex& m) const;

  friend bool operator==(const EigenvalueSequence&, const EigenvalueSequence&) = default;
};

/// Radial symbols: one gamma_hat per degree, expanded over the level sets.
/// Separately radial symbols: gamma(m) for every m. Entries are evaluated
/// concurrently; the result does not depend on the evaluation order.
EigenvalueSequence eigenvalue_sequence(const SymbolSpec& a, const Weight& w, int max_degree,
                                       const SpectralOptions& options = {});

/// As eigenvalue_sequence, but a radial symbol is pushed through the separately
/// radial simplex formula entry by entry.
EigenvalueSequence eigenvalue_sequence_separately_radial(const SymbolSpec& a, const Weight& w,
                                                         int max_degree,
                                                         const SpectralOptions& options = {});

enum class MatrixMethod { Diagonal, Oracle };

/// Matrix of T_a on span{e_m : |m| <= max_degree}, rows and columns in graded order.
struct TruncatedOperator {
  Weight weight{1, 0.0};
  int max_degree = 0;
  MatrixMethod method = MatrixMethod::Diagonal;
  std::vector<MultiIndex> basis;
  Eigen::MatrixXd entries;
  /// Largest discarded imaginary part (oracle) or 0.
  double max_imaginary = 0.0;
  /// Largest per-entry error estimate.
  double error_estimate = 0.0;

  Eigen::Index dimension() const noexcept { return entries.rows(); }
  bool is_hermitian(double tolerance) const;
};

/// Diagonal: eigenvalue_sequence on the diagonal. Oracle: every entry from the
/// polar oracle. Throws NumericError naming the entry when an oracle entry's
/// imaginary part or error estimate exceeds options.oracle_tolerance.
TruncatedOperator truncated_matrix(const SymbolSpec& a, const Weight& w, int max_degree,
                                   MatrixMethod method, const SpectralOptions& options = {});

/// Diagonal realization of a sequence.
TruncatedOperator diagonal_operator(const EigenvalueSequence& s);

/// AB - BA.
Eigen::MatrixXd commutator(const TruncatedOperator& a, const TruncatedOperator& b);

/// Pointwise product. Throws ArgumentError unless n, alpha and max_degree agree.
EigenvalueSequence compose_diagonal(const EigenvalueSequence& s, const EigenvalueSequence& t);

struct SpectrumEntry {
  int degree = 0;
  double eigenvalue = 0.0;
  std::uint64_t multiplicity = 0;

  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// (gamma_hat(k), dim P^k(C^n)) for k <= max_degree. Throws ConsistencyError if
/// some level set {|m| = k} spreads by more than `spread_tolerance`.
std::vector<SpectrumEntry> spectrum_summary(const EigenvalueSequence& s,
                                            double spread_tolerance = 1e-8);

}  // namespace bergman
