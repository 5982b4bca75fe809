#pragma once

// Gamma/Beta evaluation, multi-index combinatorics and the closed-form norms
// of the monomial basis z^m and of the degree-k vectors
// f_k = sum_{|m|=k} sqrt(k!/m!) z^m in the weighted Bergman space H^2_alpha(B^n).
//
// Every quotient of Gamma functions is formed in log space and exponentiated
// once, so degrees of several hundred stay finite.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace bergman {

/// Multi-index m = (m_1, ..., m_n) with non-negative entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  /// Throws ArgumentError on an empty index or a negative entry.
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  /// The zero index of length n.
  static MultiIndex zero(int n);

  int size() const noexcept { return static_cast<int>(entries_.size()); }
  int operator[](int j) const { return entries_[static_cast<std::size_t>(j)]; }
  std::span<const int> entries() const noexcept { return entries_; }

  /// |m| = sum of entries.
  int degree() const noexcept { return degree_; }
  /// ln(m!) = sum_j ln(m_j!).
  double log_factorial() const;
  /// m! = prod_j m_j!; overflows to +inf past ~170 in total.
  double factorial() const;

  /// m + e_j.
  MultiIndex raised(int j) const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> entries_;
  int degree_ = 0;
};

/// Weight parameter of the measure dv_alpha = c_alpha (1 - |z|^2)^alpha dv on B^n.
class Weight {
 public:
  /// Throws DomainError unless n >= 1 and alpha > -1.
  Weight(int n, double alpha);

  int n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }

  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  int n_;
  double alpha_;
};

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// ln B(a, b). Throws DomainError unless a, b > 0.
double log_beta(double a, double b);
/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta(double a, double b);

double log_c_alpha(const Weight& w);
/// Normalizing constant c_alpha = Gamma(n + alpha + 1) / (n! Gamma(alpha + 1)) = 1 / (n B(n, alpha + 1)).
double c_alpha(const Weight& w);

double log_monomial_norm_sq(const MultiIndex& m, const Weight& w);
/// ||z^m||^2_alpha = m! Gamma(n + alpha + 1) / Gamma(n + |m| + alpha + 1).
/// Throws ArgumentError when m.size() != w.n().
double monomial_norm_sq(const MultiIndex& m, const Weight& w);

double log_multinomial(int k, const MultiIndex& m);
/// k! / (m_1! ... m_n!). Throws ArgumentError when |m| != k.
double multinomial(int k, const MultiIndex& m);

double log_fk_norm_sq(int k, const Weight& w);
/// ||f_k||^2_alpha = B(n + k, alpha + 1) / B(n, alpha + 1).
double fk_norm_sq(int k, const Weight& w);

/// dim P^k(C^n) = binom(n + k - 1, n - 1), exact. Throws ArgumentError if n < 1 or k < 0.
std::uint64_t multiplicity(int n, int k);

/// binom(n + max_degree, n): number of multi-indices of length n with |m| <= max_degree.
std::uint64_t basis_size(int n, int max_degree);

/// All m of length n with |m| <= max_degree, degree-major; within a degree,
/// lexicographically descending so that (1,0) precedes (0,1).
std::vector<MultiIndex> enumerate_degree(int n, int max_degree);

/// Position of m inside enumerate_degree(m.size(), *) (independent of max_degree).
std::size_t graded_index(const MultiIndex& m);

}  // namespace bergman
