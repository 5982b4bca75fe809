#pragma once

// Quadrature for the three integral shapes that occur for invariant symbols:
//
//   * 1-D Beta-weighted integrals  int_0^1 f(r) r^p (1 - r)^alpha dr
//   * Dirichlet-weighted integrals over the simplex
//       Delta = { r in R^n : r_j >= 0, r_1 + ... + r_n < 1 }
//     with weight r^m (1 - sum r)^alpha
//   * integrals over the positive part of the real unit ball
//       tau = { s in R^n : s_j >= 0, s_1^2 + ... + s_n^2 < 1 }
//     with weight s^e (1 - |s|^2)^alpha, and a tensor trapezoid rule on the
//     torus [0, 2 pi)^n for the angular factor.
//
// Weight singularities are always absorbed into Gauss-Jacobi rules. Profiles
// may carry breakpoints (jump discontinuities); integration is split there so
// piecewise-smooth profiles keep spectral accuracy.

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <tuple>
#include <vector>

#include "bergman/special.hpp"

namespace bergman {

enum class QuadratureDomain { UnitInterval, Simplex, TorusAngles };

/// Immutable set of nodes and positive weights. Nodes are stored point-major
/// with `dimension()` coordinates per point.
class QuadratureRule {
 public:
  QuadratureRule(int dimension, std::vector<double> nodes, std::vector<double> weights,
                 QuadratureDomain domain, double alpha, double power);

  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return weights_.size(); }
  QuadratureDomain domain() const noexcept { return domain_; }
  /// Exponent of (1 - r) in the weight function (0 for angular rules).
  double alpha() const noexcept { return alpha_; }
  /// Exponent of r in the weight function (0 for angular rules).
  double power() const noexcept { return power_; }

  std::span<const double> node(std::size_t i) const {
    return {nodes_.data() + i * static_cast<std::size_t>(dimension_),
            static_cast<std::size_t>(dimension_)};
  }
  /// Coordinate of a 1-D rule.
  double x(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  int dimension_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  QuadratureDomain domain_;
  double alpha_;
  double power_;
};

/// N-point Gauss rule on [0, 1] for the weight r^power (1 - r)^alpha.
/// Exact for polynomials of degree <= 2N - 1; the weights sum to B(power + 1, alpha + 1).
/// Throws DomainError if an exponent is <= -1 or N < 1, NumericError if the
/// tridiagonal eigensolver fails.
QuadratureRule gauss_jacobi_rule(int points, double alpha, double power);

/// Tensor trapezoid rule on [0, 2 pi)^n with M nodes per axis (offset by half a
/// step). Total weight (2 pi)^n; sums exp(i q.theta) to zero whenever 0 < max|q_j| < M.
QuadratureRule torus_angle_rule(int nodes_per_axis, int n);

/// Memoizes Gauss-Jacobi rules by (N, alpha, power). Not thread-safe: use one
/// cache per integration call or per thread.
class RuleCache {
 public:
  const QuadratureRule& get(int points, double alpha, double power);

 private:
  std::map<std::tuple<int, double, double>, std::unique_ptr<QuadratureRule>> rules_;
};

/// Receives a node x and its weight.
using NodeVisitor = std::function<void(double, double)>;

/// The nodes and weights integrate_weighted uses on [a, b], without f.
void visit_weighted_nodes(double a, double b, double power, double alpha, int points,
                          RuleCache& cache, const NodeVisitor& visit);

/// The nodes and weights integrate_weighted_pieces uses, without f.
void visit_weighted_node_pieces(std::span<const double> breakpoints, double power, double alpha,
                                int points, RuleCache& cache, const NodeVisitor& visit);

/// int_a^b f(x) x^power (1 - x)^alpha dx for [a, b] inside [0, 1] and f smooth
/// on [a, b]. Endpoint singularities of the weight are absorbed into Jacobi rules;
/// interior pieces close to a singular endpoint are graded geometrically.
double integrate_weighted(const std::function<double(double)>& f, double a, double b,
                          double power, double alpha, int points, RuleCache& cache);

/// Same integral over [0, 1], split at the given breakpoints of f (any order;
/// values outside (0, 1) are ignored).
double integrate_weighted_pieces(const std::function<double(double)>& f,
                                 std::span<const double> breakpoints, double power,
                                 double alpha, int points, RuleCache& cache);

/// A function a(s) of the radius s = |z| in [0, 1), written as
/// a(s) = s^origin_power * value(s) with value piecewise smooth between breakpoints.
struct RadialProfile {
  std::function<double(double)> value;
  std::vector<double> breakpoints;
  double origin_power = 0.0;

  double operator()(double s) const;
};

/// int_0^1 a(sqrt r) r^(n+k-1) (1 - r)^alpha dr.
double integrate_radial_profile(const RadialProfile& profile, int k, const Weight& w,
                                int points);

/// 2 int_0^1 a(s) s^(2n+2k-1) (1 - s^2)^alpha ds; equal to integrate_radial_profile
/// by the substitution r = s^2, but evaluated on an unrelated node set.
double integrate_radial_profile_polar(const RadialProfile& profile, int k, const Weight& w,
                                      int points);

/// A function of the radii vector s = (|z_1|, ..., |z_n|) of the form
///
///   prod_j s_j^axis_powers[j] * value(s) * prod_j factor_j(s_j).
///
/// `value` may be empty (read as 1) and may jump across the spheres
/// |s| = norm_breakpoints. factor_j is given piecewise: axis_pieces[j][p] is
/// smooth on [0, 1] and equals factor_j on (b_{p-1}, b_p], where b is the
/// ascending list axis_breakpoints[j] with b_{-1} = 0 and b_P = 1. Empty
/// axis_pieces means every factor is 1. Norm and axis jumps are exclusive.
struct RadiiProfile {
  std::function<double(std::span<const double>)> value;
  std::vector<double> norm_breakpoints;
  std::vector<std::vector<std::function<double(double)>>> axis_pieces;
  std::vector<std::vector<double>> axis_breakpoints;
  std::vector<double> axis_powers;

  int dimension() const noexcept { return static_cast<int>(axis_powers.size()); }
  double operator()(std::span<const double> radii) const;
};

/// int_Delta a(sqrt r) r^m (1 - sum r)^alpha dr, by the iterated substitution
/// r_j = (1 - r_1 - ... - r_{j-1}) u_j onto the unit cube with one Jacobi rule
/// per axis. Axis jumps are removed by writing each factor as a telescoping sum
/// of pieces times indicators 1[s_j > b] and shifting r_j = b^2 + rho_j in each
/// term, so every term is a smooth Dirichlet integral over a smaller simplex.
/// Exact (to rounding) for a == 1. Throws ArgumentError on a dimension mismatch.
double integrate_simplex(const RadiiProfile& profile, const MultiIndex& m, const Weight& w,
                         int points);

/// int_tau a(s) prod_j s_j^exponents[j] (1 - |s|^2)^alpha ds over the positive
/// part of the real unit ball, by the iterated substitution
/// s_j = sqrt(1 - s_1^2 - ... - s_{j-1}^2) v_j. Axis jumps are removed as in
/// integrate_simplex, with the shift s_j^2 = b^2 + sigma_j^2 (s_j ds_j = sigma_j d sigma_j).
/// Exponents must be > -1.
double integrate_positive_ball(const RadiiProfile& profile, std::span<const double> exponents,
                               double alpha, int points);

/// integrate_positive_ball for many exponent vectors at once. Vectors whose
/// entries and tails differ by integers share one node set; the integer parts
/// are applied as polynomial factors, which the rules integrate exactly as long
/// as the order exceeds about half their degree.
std::vector<double> integrate_positive_ball_batch(const RadiiProfile& profile,
                                                  const std::vector<std::vector<double>>& exponents,
                                                  double alpha, int points);

}  // namespace bergman
