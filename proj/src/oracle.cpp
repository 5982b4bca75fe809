#include "bergman/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

RadiiProfile unit_profile(int n) {
  RadiiProfile p;
  p.value = [](std::span<const double>) { return 1.0; };
  p.axis_powers.assign(static_cast<std::size_t>(n), 0.0);
  return p;
}

std::vector<int> entrywise(const MultiIndex& a, const MultiIndex& b, int sign) {
  std::vector<int> out(static_cast<std::size_t>(a.size()));
  for (int j = 0; j < a.size(); ++j) out[static_cast<std::size_t>(j)] = a[j] + sign * b[j];
  return out;
}

int coarse_order(int points) { return std::max(1, points / 2); }

}  // namespace

PolarOracle::PolarOracle(const SymbolSpec& symbol, const Weight& weight, int radial_points,
                         int angular_points)
    : symbol_(symbol),
      weight_(weight),
      radial_points_(radial_points),
      angular_points_(angular_points),
      symbol_profile_(symbol.radii_profile(weight.n())),
      unit_profile_(unit_profile(weight.n())),
      torus_(torus_angle_rule(angular_points, weight.n())) {
  if (radial_points < 1) throw ArgumentError("PolarOracle: radial order must be at least 1");
}

void PolarOracle::check_pair(const MultiIndex& m, const MultiIndex& m2) const {
  if (m.size() != weight_.n() || m2.size() != weight_.n())
    throw ArgumentError("PolarOracle: multi-index length does not match n = " +
                        std::to_string(weight_.n()));
  for (int j = 0; j < m.size(); ++j)
    if (std::abs(m[j] - m2[j]) >= angular_points_)
      throw ArgumentError("PolarOracle: angular rule with " + std::to_string(angular_points_) +
                          " nodes cannot resolve frequency " + std::to_string(m[j] - m2[j]));
}

namespace {

// s^m s^m' from the monomials and s_j from ds_j in polar coordinates.
std::vector<double> ball_exponents(const std::vector<int>& exponent_sum) {
  std::vector<double> out(exponent_sum.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = exponent_sum[j] + 1.0;
  return out;
}

}  // namespace

double PolarOracle::radial_moment(const std::vector<int>& exponent_sum, Order order,
                                  Integrand integrand) {
  auto& cache = moments_[order][integrand];
  auto it = cache.find(exponent_sum);
  if (it != cache.end()) return it->second;
  const int points = order == Coarse ? coarse_order(radial_points_) : radial_points_;
  const auto& profile = integrand == Symbol ? symbol_profile_ : unit_profile_;
  const auto exponents = ball_exponents(exponent_sum);
  const double value = integrate_positive_ball(profile, exponents, weight_.alpha(), points);
  return cache.emplace(exponent_sum, value).first->second;
}

void PolarOracle::fill(const std::vector<std::vector<int>>& sums, Order order,
                       Integrand integrand) {
  auto& cache = moments_[order][integrand];
  std::vector<std::vector<int>> missing;
  std::vector<std::vector<double>> exponents;
  for (const auto& e : sums)
    if (!cache.contains(e)) {
      missing.push_back(e);
      exponents.push_back(ball_exponents(e));
    }
  if (missing.empty()) return;
  const int points = order == Coarse ? coarse_order(radial_points_) : radial_points_;
  const auto& profile = integrand == Symbol ? symbol_profile_ : unit_profile_;
  const auto values = integrate_positive_ball_batch(profile, exponents, weight_.alpha(), points);
  for (std::size_t i = 0; i < missing.size(); ++i) cache.emplace(missing[i], values[i]);
}

namespace {

std::vector<std::vector<int>> pair_sums(const std::vector<MultiIndex>& basis, int n,
                                        bool diagonal_only) {
  std::set<std::vector<int>> sums;
  for (const auto& m : basis) {
    if (m.size() != n)
      throw ArgumentError("PolarOracle: multi-index length does not match n = " +
                          std::to_string(n));
    if (diagonal_only)
      sums.insert(entrywise(m, m, +1));
    else
      for (const auto& m2 : basis) sums.insert(entrywise(m, m2, +1));
  }
  return {sums.begin(), sums.end()};
}

}  // namespace

void PolarOracle::prepare(const std::vector<MultiIndex>& basis) {
  const auto sums = pair_sums(basis, weight_.n(), false);
  const auto norms = pair_sums(basis, weight_.n(), true);
  for (Order order : {Fine, Coarse}) {
    fill(sums, order, Symbol);
    fill(norms, order, Unit);
  }
}

void PolarOracle::prepare_monomials(const std::vector<MultiIndex>& basis) {
  auto sums = pair_sums(basis, weight_.n(), false);
  sums.emplace_back(static_cast<std::size_t>(weight_.n()), 0);
  fill(sums, Fine, Unit);
}

std::complex<double> PolarOracle::angular_factor(const std::vector<int>& frequency) {
  auto it = angular_.find(frequency);
  if (it != angular_.end()) return it->second;
  std::complex<double> acc = 0.0;
  for (std::size_t p = 0; p < torus_.size(); ++p) {
    const auto theta = torus_.node(p);
    double phase = 0.0;
    for (std::size_t j = 0; j < frequency.size(); ++j) phase += frequency[j] * theta[j];
    acc += torus_.weight(p) * std::polar(1.0, phase);
  }
  return angular_.emplace(frequency, acc).first->second;
}

OracleResult PolarOracle::inner_product(const MultiIndex& m, const MultiIndex& m2) {
  check_pair(m, m2);
  const auto angular = angular_factor(entrywise(m, m2, -1));
  const auto flat = angular_factor(std::vector<int>(static_cast<std::size_t>(m.size()), 0));
  const auto sum = entrywise(m, m2, +1);
  const auto twice_m = entrywise(m, m, +1);
  const auto twice_m2 = entrywise(m2, m2, +1);

  auto normalized = [&](bool coarse) {
    const Order order = coarse ? Coarse : Fine;
    const double a = radial_moment(sum, order, Symbol);
    const double nm = radial_moment(twice_m, order, Unit);
    const double nm2 = radial_moment(twice_m2, order, Unit);
    return angular * a / (flat.real() * std::sqrt(nm * nm2));
  };

  OracleResult result;
  result.value = normalized(false);
  result.error_estimate = std::abs(result.value - normalized(true));
  result.method = OracleMethod::PolarQuadrature;
  result.effort.radial_points = radial_points_;
  result.effort.angular_points = angular_points_;
  return result;
}

std::complex<double> PolarOracle::monomial_product(const MultiIndex& m, const MultiIndex& m2) {
  check_pair(m, m2);
  const int n = weight_.n();
  const std::vector<int> zero(static_cast<std::size_t>(n), 0);
  const auto angular = angular_factor(entrywise(m, m2, -1));
  const auto flat = angular_factor(zero);
  const double moment = radial_moment(entrywise(m, m2, +1), Fine, Unit);
  const double mass = radial_moment(zero, Fine, Unit);
  return angular * moment / (flat.real() * mass);
}

OracleResult inner_product_polar(const SymbolSpec& a, const MultiIndex& m, const MultiIndex& m2,
                                 const Weight& w, int radial_points, int angular_points) {
  PolarOracle oracle(a, w, radial_points, angular_points);
  return oracle.inner_product(m, m2);
}

double monomial_norm_sq_oracle(const MultiIndex& m, const Weight& w, int radial_points,
                               int angular_points) {
  PolarOracle oracle(SymbolSpec::radial(SymbolTerm::constant(1.0)), w, radial_points,
                     angular_points);
  return oracle.monomial_product(m, m).real();
}

double fk_norm_oracle(int k, const Weight& w, int radial_points, int angular_points) {
  if (k < 0) throw ArgumentError("fk_norm_oracle: k must be non-negative");
  PolarOracle oracle(SymbolSpec::radial(SymbolTerm::constant(1.0)), w, radial_points,
                     angular_points);
  std::vector<MultiIndex> level;
  std::vector<double> coefficient;
  for (auto& m : enumerate_degree(w.n(), k)) {
    if (m.degree() != k) continue;
    coefficient.push_back(std::sqrt(multinomial(k, m)));
    level.push_back(std::move(m));
  }
  oracle.prepare_monomials(level);
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < level.size(); ++i)
    for (std::size_t j = 0; j < level.size(); ++j)
      acc += coefficient[i] * coefficient[j] * oracle.monomial_product(level[i], level[j]);
  return acc.real();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Draws z ~ v_alpha on B^n.
class BallSampler {
 public:
  BallSampler(const Weight& w, std::uint64_t seed)
      : n_(w.n()),
        engine_(splitmix64(seed)),
        radial_shape_(static_cast<double>(w.n()), 1.0),
        weight_shape_(w.alpha() + 1.0, 1.0),
        gauss_(0.0, 1.0),
        direction_(static_cast<std::size_t>(2 * w.n())) {}

  void draw(std::vector<std::complex<double>>& z, std::vector<double>& radii) {
    const double x = radial_shape_(engine_);
    const double y = weight_shape_(engine_);
    const double t = x / (x + y);  // |z|^2 ~ Beta(n, alpha + 1)
    double norm = 0.0;
    for (auto& g : direction_) {
      g = gauss_(engine_);
      norm += g * g;
    }
    const double scale = std::sqrt(t / norm);
    for (int j = 0; j < n_; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      z[jj] = {scale * direction_[2 * jj], scale * direction_[2 * jj + 1]};
      radii[jj] = std::abs(z[jj]);
    }
  }

 private:
  int n_;
  std::mt19937_64 engine_;
  std::gamma_distribution<double> radial_shape_;
  std::gamma_distribution<double> weight_shape_;
  std::normal_distribution<double> gauss_;
  std::vector<double> direction_;
};

std::complex<double> monomial(const std::vector<std::vector<std::complex<double>>>& powers,
                              const MultiIndex& m) {
  std::complex<double> acc = 1.0;
  for (int j = 0; j < m.size(); ++j)
    acc *= powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(m[j])];
  return acc;
}

// Welford accumulator for complex samples.
struct RunningMean {
  std::complex<double> mean = 0.0;
  double m2 = 0.0;

  void add(std::complex<double> x, double count) {
    const auto delta = x - mean;
    mean += delta / count;
    m2 += std::real(std::conj(delta) * (x - mean));
  }

  double standard_error(double count) const {
    const double se = std::sqrt(std::max(m2, 0.0) / (count - 1.0) / count);
    // A degenerate (constant) integrand still reports a positive error.
    return std::max(se, std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mean)));
  }
};

}  // namespace

MonteCarloMatrix monte_carlo_matrix(const SymbolSpec& a, const std::vector<MultiIndex>& basis,
                                    const Weight& w, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1000) throw ArgumentError("Monte Carlo oracle needs at least 1000 samples");
  a.check_dimension(w.n());
  const int n = w.n();
  int top = 0;
  for (const auto& m : basis) {
    if (m.size() != n) throw ArgumentError("monte_carlo_matrix: multi-index length mismatch");
    for (int j = 0; j < n; ++j) top = std::max(top, m[j]);
  }

  const std::size_t dim = basis.size();
  std::vector<double> inv_norm(dim);
  for (std::size_t i = 0; i < dim; ++i) inv_norm[i] = 1.0 / std::sqrt(monomial_norm_sq(basis[i], w));

  BallSampler sampler(w, seed);
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  std::vector<double> radii(static_cast<std::size_t>(n));
  std::vector<std::vector<std::complex<double>>> powers(
      static_cast<std::size_t>(n), std::vector<std::complex<double>>(static_cast<std::size_t>(top + 1)));
  std::vector<std::complex<double>> e(dim);
  std::vector<RunningMean> acc(dim * dim);

  for (std::uint64_t s = 1; s <= samples; ++s) {
    sampler.draw(z, radii);
    for (int j = 0; j < n; ++j) {
      auto& pj = powers[static_cast<std::size_t>(j)];
      pj[0] = 1.0;
      for (int p = 1; p <= top; ++p)
        pj[static_cast<std::size_t>(p)] = pj[static_cast<std::size_t>(p - 1)] * z[static_cast<std::size_t>(j)];
    }
    const double symbol = a(radii);
    for (std::size_t i = 0; i < dim; ++i) e[i] = monomial(powers, basis[i]) * inv_norm[i];
    const auto count = static_cast<double>(s);
    for (std::size_t i = 0; i < dim; ++i) {
      const auto ai = symbol * e[i];
      for (std::size_t j = 0; j < dim; ++j) acc[i * dim + j].add(ai * std::conj(e[j]), count);
    }
  }

  MonteCarloMatrix out;
  const auto d = static_cast<Eigen::Index>(dim);
  out.values.resize(d, d);
  out.standard_errors.resize(d, d);
  const auto count = static_cast<double>(samples);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const auto& r = acc[i * dim + j];
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r.mean;
      out.standard_errors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          r.standard_error(count);
    }
  return out;
}

OracleResult inner_product_mc(const SymbolSpec& a, const MultiIndex& m, const MultiIndex& m2,
                              const Weight& w, std::uint64_t samples, std::uint64_t seed) {
  if (m.size() != w.n() || m2.size() != w.n())
    throw ArgumentError("inner_product_mc: multi-index length does not match n");
  const auto mc = monte_carlo_matrix(a, {m, m2}, w, samples, seed);
  OracleResult result;
  result.value = mc.values(0, 1);
  result.error_estimate = mc.standard_errors(0, 1);
  result.method = OracleMethod::MonteCarlo;
  result.effort.samples = samples;
  result.effort.seed = seed;
  return result;
}

}  // namespace bergman
