#include "bergman/special.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "bergman/errors.hpp"

namespace bergman {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ArgumentError("MultiIndex: length must be at least 1");
  for (int e : entries_) {
    if (e < 0) throw ArgumentError("MultiIndex: negative entry " + std::to_string(e));
    degree_ += e;
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::zero(int n) {
  if (n < 1) throw ArgumentError("MultiIndex::zero: n must be at least 1");
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0));
}

double MultiIndex::log_factorial() const {
  double acc = 0.0;
  for (int e : entries_) acc += log_gamma(e + 1.0);
  return acc;
}

double MultiIndex::factorial() const { return std::exp(log_factorial()); }

MultiIndex MultiIndex::raised(int j) const {
  if (j < 0 || j >= size()) throw ArgumentError("MultiIndex::raised: axis out of range");
  auto e = entries_;
  ++e[static_cast<std::size_t>(j)];
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < entries_.size(); ++j) os << (j ? "," : "") << entries_[j];
  os << ')';
  return os.str();
}

Weight::Weight(int n, double alpha) : n_(n), alpha_(alpha) {
  if (n < 1) throw DomainError("Weight: n must be at least 1");
  if (!(alpha > -1.0) || !std::isfinite(alpha))
    throw DomainError("Weight: alpha must be a finite value > -1");
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  if (std::isinf(x)) return x;
  // lgamma_r leaves the global signgam untouched.
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta: arguments must be positive");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta(double a, double b) { return std::exp(log_beta(a, b)); }

double log_c_alpha(const Weight& w) {
  return -std::log(static_cast<double>(w.n())) - log_beta(w.n(), w.alpha() + 1.0);
}

double c_alpha(const Weight& w) { return std::exp(log_c_alpha(w)); }

double log_monomial_norm_sq(const MultiIndex& m, const Weight& w) {
  if (m.size() != w.n())
    throw ArgumentError("monomial_norm_sq: multi-index length " + std::to_string(m.size()) +
                        " does not match n = " + std::to_string(w.n()));
  const double n = w.n();
  return m.log_factorial() + log_gamma(n + w.alpha() + 1.0) -
         log_gamma(n + m.degree() + w.alpha() + 1.0);
}

double monomial_norm_sq(const MultiIndex& m, const Weight& w) {
  return std::exp(log_monomial_norm_sq(m, w));
}

double log_multinomial(int k, const MultiIndex& m) {
  if (m.degree() != k)
    throw ArgumentError("multinomial: |m| = " + std::to_string(m.degree()) +
                        " differs from k = " + std::to_string(k));
  return log_gamma(k + 1.0) - m.log_factorial();
}

double multinomial(int k, const MultiIndex& m) {
  // Rounded: the exact value is an integer.
  return std::round(std::exp(log_multinomial(k, m)));
}

double log_fk_norm_sq(int k, const Weight& w) {
  if (k < 0) throw ArgumentError("fk_norm_sq: k must be non-negative");
  const double a1 = w.alpha() + 1.0;
  return log_beta(w.n() + k, a1) - log_beta(w.n(), a1);
}

double fk_norm_sq(int k, const Weight& w) { return std::exp(log_fk_norm_sq(k, w)); }

namespace {

std::uint64_t binomial(std::uint64_t top, std::uint64_t bottom) {
  bottom = std::min(bottom, top - bottom);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= bottom; ++i) {
    // result * (top - bottom + i) is divisible by i after the gcd split.
    const std::uint64_t factor = top - bottom + i;
    const std::uint64_t g = std::gcd(result, i);
    result = (result / g) * (factor / (i / g));
  }
  return result;
}

void enumerate_into(std::vector<int>& prefix, int axis, int remaining,
                    std::vector<MultiIndex>& out) {
  const int n = static_cast<int>(prefix.size());
  if (axis == n - 1) {
    prefix[static_cast<std::size_t>(axis)] = remaining;
    out.emplace_back(prefix);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    prefix[static_cast<std::size_t>(axis)] = e;
    enumerate_into(prefix, axis + 1, remaining - e, out);
  }
}

}  // namespace

std::uint64_t multiplicity(int n, int k) {
  if (n < 1 || k < 0) throw ArgumentError("multiplicity: need n >= 1 and k >= 0");
  return binomial(static_cast<std::uint64_t>(n + k - 1), static_cast<std::uint64_t>(n - 1));
}

std::uint64_t basis_size(int n, int max_degree) {
  if (n < 1 || max_degree < 0) throw ArgumentError("basis_size: need n >= 1 and max_degree >= 0");
  return binomial(static_cast<std::uint64_t>(n + max_degree), static_cast<std::uint64_t>(n));
}

std::vector<MultiIndex> enumerate_degree(int n, int max_degree) {
  if (n < 1) throw ArgumentError("enumerate_degree: n must be at least 1");
  std::vector<MultiIndex> out;
  if (max_degree < 0) return out;
  out.reserve(basis_size(n, max_degree));
  std::vector<int> prefix(static_cast<std::size_t>(n), 0);
  for (int k = 0; k <= max_degree; ++k) enumerate_into(prefix, 0, k, out);
  return out;
}

std::size_t graded_index(const MultiIndex& m) {
  const int n = m.size();
  const int k = m.degree();
  std::size_t index = k > 0 ? basis_size(n, k - 1) : 0;
  int remaining = k;
  for (int axis = 0; axis + 1 < n; ++axis) {
    const int tail = n - axis - 1;
    // Indices whose entry on this axis is larger come first.
    for (int e = remaining; e > m[axis]; --e) index += multiplicity(tail, remaining - e);
    remaining -= m[axis];
  }
  return index;
}

}  // namespace bergman
