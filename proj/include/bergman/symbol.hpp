#pragma once

// Bounded invariant symbols a(z) on the unit ball.
//
// A radial symbol depends on |z| only; a separately radial symbol depends on
// (|z_1|, ..., |z_n|). Both are assembled from a small family of real profiles
// of one variable s in [0, 1):
//
//   const(c)          c
//   pow(p)            s^p, p >= 0
//   step(t, lo, hi)   lo for s <= t, hi for s > t
//   poly(c0, c1, ...) c0 + c1 s^2 + c2 s^4 + ...
//
// A separately radial symbol is a product of one such profile per axis.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bergman/quadrature.hpp"

namespace bergman {

class SymbolTerm {
 public:
  enum class Family { Constant, Power, Step, Polynomial };

  static SymbolTerm constant(double c);
  /// Throws ValidationError for p < 0 (unbounded near the origin).
  static SymbolTerm power(double p);
  static SymbolTerm step(double threshold, double low, double high);
  /// Coefficients of 1, s^2, s^4, ...; throws ValidationError when empty.
  static SymbolTerm polynomial(std::vector<double> coefficients);

  Family family() const noexcept { return family_; }
  std::span<const double> parameters() const noexcept { return params_; }

  double operator()(double s) const;
  /// value(s) = s^origin_power() * smooth_part(s); smooth_part is piecewise
  /// polynomial in s between breakpoints.
  double smooth_part(double s) const;
  double origin_power() const noexcept;
  /// Jump locations in (0, 1).
  std::vector<double> breakpoints() const;
  /// Smooth extensions of smooth_part to [0, 1], one per interval between
  /// consecutive breakpoints.
  std::vector<std::function<double(double)>> pieces() const;
  /// Upper bound for sup_{0 <= s < 1} |value(s)|.
  double bound() const noexcept { return bound_; }

  /// Canonical text, e.g. "step(0.7,1,0)". Doubles use shortest round-trip form.
  std::string to_string() const;

  friend bool operator==(const SymbolTerm& a, const SymbolTerm& b) {
    return a.family_ == b.family_ && a.params_ == b.params_;
  }

 private:
  SymbolTerm(Family family, std::vector<double> params);

  Family family_;
  std::vector<double> params_;
  double bound_ = 0.0;
};

enum class SymbolKind { Radial, SeparatelyRadial };

class SymbolSpec {
 public:
  static SymbolSpec radial(SymbolTerm term);
  /// One term per axis; the symbol is their product.
  static SymbolSpec separately_radial(std::vector<SymbolTerm> axis_terms);

  SymbolKind kind() const noexcept { return kind_; }
  bool is_radial() const noexcept { return kind_ == SymbolKind::Radial; }
  std::span<const SymbolTerm> terms() const noexcept { return terms_; }
  /// Number of axes a separately radial symbol is defined on (0 for radial symbols).
  int axes() const noexcept { return is_radial() ? 0 : static_cast<int>(terms_.size()); }
  /// Known upper bound for ||a||_inf.
  double bound() const noexcept { return bound_; }

  /// a evaluated at the radii (|z_1|, ..., |z_n|).
  double operator()(std::span<const double> radii) const;

  /// The profile s -> a(s); throws ArgumentError for separately radial symbols.
  RadialProfile radial_profile() const;
  /// The profile (|z_1|, ..., |z_n|) -> a for ambient dimension n. Throws
  /// ArgumentError when a separately radial symbol has a different number of axes.
  RadiiProfile radii_profile(int n) const;
  /// Throws ArgumentError unless the symbol can live on C^n.
  void check_dimension(int n) const;

  /// "radial:<term>" or "seprad:<term>*<term>*..."
  std::string to_string() const;

  friend bool operator==(const SymbolSpec& a, const SymbolSpec& b) {
    return a.kind_ == b.kind_ && a.terms_ == b.terms_;
  }

 private:
  SymbolSpec(SymbolKind kind, std::vector<SymbolTerm> terms);

  SymbolKind kind_;
  std::vector<SymbolTerm> terms_;
  double bound_ = 0.0;
};

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace bergman
