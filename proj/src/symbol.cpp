#include "bergman/symbol.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "bergman/errors.hpp"

namespace bergman {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

double polynomial_in_square(std::span<const double> c, double s) {
  const double x = s * s;
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// sup over x = s^2 in [0, 1] of |sum c_i x^i|: dense grid maximum plus the
// Lipschitz slack, capped by sum |c_i|.
double polynomial_bound(std::span<const double> c) {
  constexpr int grid = 4096;
  double lipschitz = 0.0, absolute = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    absolute += std::abs(c[i]);
    lipschitz += static_cast<double>(i) * std::abs(c[i]);
  }
  double sampled = 0.0;
  for (int g = 0; g <= grid; ++g) {
    const double x = static_cast<double>(g) / grid;
    sampled = std::max(sampled, std::abs(polynomial_in_square(c, std::sqrt(x))));
  }
  return std::min(absolute, sampled + 0.5 * lipschitz / grid);
}

void require_finite(std::span<const double> params, const char* family) {
  for (double p : params)
    if (!std::isfinite(p))
      throw ValidationError(std::string(family) + ": parameters must be finite");
}

// Dense sampling must never exceed the claimed bound.
void verify_bound(const SymbolTerm& term) {
  constexpr int samples = 2048;
  for (int g = 0; g < samples; ++g) {
    const double s = (g + 0.5) / samples;
    if (std::abs(term(s)) > term.bound() * (1.0 + 1e-12) + 1e-300)
      throw ValidationError("symbol bound could not be verified for " + term.to_string());
  }
}

}  // namespace

SymbolTerm::SymbolTerm(Family family, std::vector<double> params)
    : family_(family), params_(std::move(params)) {
  switch (family_) {
    case Family::Constant: bound_ = std::abs(params_[0]); break;
    case Family::Power: bound_ = 1.0; break;
    case Family::Step: bound_ = std::max(std::abs(params_[1]), std::abs(params_[2])); break;
    case Family::Polynomial: bound_ = polynomial_bound(params_); break;
  }
  verify_bound(*this);
}

SymbolTerm SymbolTerm::constant(double c) {
  require_finite(std::span(&c, 1), "const");
  return SymbolTerm(Family::Constant, {c});
}

SymbolTerm SymbolTerm::power(double p) {
  require_finite(std::span(&p, 1), "pow");
  if (p < 0.0) throw ValidationError("pow: negative exponent makes the symbol unbounded");
  return SymbolTerm(Family::Power, {p});
}

SymbolTerm SymbolTerm::step(double threshold, double low, double high) {
  const double p[] = {threshold, low, high};
  require_finite(p, "step");
  return SymbolTerm(Family::Step, {threshold, low, high});
}

SymbolTerm SymbolTerm::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) throw ValidationError("poly: at least one coefficient is required");
  require_finite(coefficients, "poly");
  return SymbolTerm(Family::Polynomial, std::move(coefficients));
}

double SymbolTerm::operator()(double s) const {
  if (family_ == Family::Power) return params_[0] == 0.0 ? 1.0 : std::pow(s, params_[0]);
  return smooth_part(s);
}

double SymbolTerm::smooth_part(double s) const {
  switch (family_) {
    case Family::Constant: return params_[0];
    case Family::Power: return 1.0;
    case Family::Step: return s <= params_[0] ? params_[1] : params_[2];
    case Family::Polynomial: return polynomial_in_square(params_, s);
  }
  return 0.0;
}

double SymbolTerm::origin_power() const noexcept {
  return family_ == Family::Power ? params_[0] : 0.0;
}

std::vector<double> SymbolTerm::breakpoints() const {
  if (family_ == Family::Step && params_[0] > 0.0 && params_[0] < 1.0 && params_[1] != params_[2])
    return {params_[0]};
  return {};
}

std::vector<std::function<double(double)>> SymbolTerm::pieces() const {
  if (breakpoints().empty()) {
    const SymbolTerm self = *this;
    return {[self](double s) { return self.smooth_part(s); }};
  }
  const double low = params_[1], high = params_[2];
  return {[low](double) { return low; }, [high](double) { return high; }};
}

std::string SymbolTerm::to_string() const {
  static constexpr const char* names[] = {"const", "pow", "step", "poly"};
  std::string out = names[static_cast<int>(family_)];
  out += '(';
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i) out += ',';
    out += format_double(params_[i]);
  }
  out += ')';
  return out;
}

SymbolSpec::SymbolSpec(SymbolKind kind, std::vector<SymbolTerm> terms)
    : kind_(kind), terms_(std::move(terms)) {
  bound_ = 1.0;
  for (const auto& t : terms_) bound_ *= t.bound();
}

SymbolSpec SymbolSpec::radial(SymbolTerm term) {
  return SymbolSpec(SymbolKind::Radial, {std::move(term)});
}

SymbolSpec SymbolSpec::separately_radial(std::vector<SymbolTerm> axis_terms) {
  if (axis_terms.empty()) throw ArgumentError("separately radial symbol needs at least one axis");
  return SymbolSpec(SymbolKind::SeparatelyRadial, std::move(axis_terms));
}

double SymbolSpec::operator()(std::span<const double> radii) const {
  if (is_radial()) {
    double sq = 0.0;
    for (double s : radii) sq += s * s;
    return terms_[0](std::sqrt(sq));
  }
  if (radii.size() != terms_.size())
    throw ArgumentError("separately radial symbol evaluated with wrong number of radii");
  double acc = 1.0;
  for (std::size_t j = 0; j < terms_.size(); ++j) acc *= terms_[j](radii[j]);
  return acc;
}

void SymbolSpec::check_dimension(int n) const {
  if (!is_radial() && static_cast<int>(terms_.size()) != n)
    throw ArgumentError("separately radial symbol has " + std::to_string(terms_.size()) +
                        " axes but n = " + std::to_string(n));
}

RadialProfile SymbolSpec::radial_profile() const {
  if (!is_radial()) throw ArgumentError("radial_profile: symbol is not radial");
  const SymbolTerm term = terms_[0];
  return RadialProfile{[term](double s) { return term.smooth_part(s); }, term.breakpoints(),
                       term.origin_power()};
}

RadiiProfile SymbolSpec::radii_profile(int n) const {
  check_dimension(n);
  RadiiProfile profile;
  profile.axis_powers.assign(static_cast<std::size_t>(n), 0.0);
  if (is_radial()) {
    const SymbolTerm term = terms_[0];
    profile.value = [term](std::span<const double> radii) {
      double sq = 0.0;
      for (double s : radii) sq += s * s;
      return term(std::sqrt(sq));
    };
    profile.norm_breakpoints = term.breakpoints();
    return profile;
  }
  profile.axis_pieces.resize(static_cast<std::size_t>(n));
  profile.axis_breakpoints.resize(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    profile.axis_powers[j] = terms_[j].origin_power();
    profile.axis_pieces[j] = terms_[j].pieces();
    profile.axis_breakpoints[j] = terms_[j].breakpoints();
  }
  return profile;
}

std::string SymbolSpec::to_string() const {
  std::string out = is_radial() ? "radial:" : "seprad:";
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (j) out += '*';
    out += terms_[j].to_string();
  }
  return out;
}

}  // namespace bergman
