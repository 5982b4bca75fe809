#include "bergman/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

QuadratureRule::QuadratureRule(int dimension, std::vector<double> nodes,
                               std::vector<double> weights, QuadratureDomain domain,
                               double alpha, double power)
    : dimension_(dimension),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      domain_(domain),
      alpha_(alpha),
      power_(power) {
  if (dimension_ < 1 || nodes_.size() != weights_.size() * static_cast<std::size_t>(dimension_))
    throw ArgumentError("QuadratureRule: node/weight layout mismatch");
}

namespace {

// Three-term recurrence of the Jacobi weight r^power (1 - r)^alpha on [0, 1]:
//   sub[k] p_{k+1} = (r - diag[k]) p_k - sub[k-1] p_{k-1}
// for the orthonormal polynomials p_k. Derived from the classical [-1, 1]
// coefficients with a = alpha, b = power under r = (1 + x) / 2.
struct JacobiRecurrence {
  std::vector<double> diag;
  std::vector<double> sub;
};

JacobiRecurrence jacobi_recurrence(int points, double a, double b) {
  JacobiRecurrence rec;
  rec.diag.resize(static_cast<std::size_t>(points));
  rec.sub.resize(static_cast<std::size_t>(points));
  const double ab = a + b;
  for (int k = 0; k < points; ++k) {
    double x;
    if (k == 0) {
      x = (b - a) / (ab + 2.0);
    } else {
      const double t = 2.0 * k + ab;
      x = (b - a) * (b + a) / (t * (t + 2.0));
    }
    rec.diag[static_cast<std::size_t>(k)] = 0.5 * (1.0 + x);

    // Off-diagonal between p_k and p_{k+1}, i.e. the classical beta_{k+1}.
    const double j = k + 1.0;
    double beta_j;
    if (k == 0) {
      beta_j = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    } else {
      const double t = 2.0 * j + ab;
      beta_j = 4.0 * j * (j + a) * (j + b) * (j + ab) / (t * t * (t + 1.0) * (t - 1.0));
    }
    rec.sub[static_cast<std::size_t>(k)] = 0.5 * std::sqrt(beta_j);
  }
  return rec;
}

// Returns q_N(x) and q_N'(x) where q_N = sub[N-1] p_N, and fills the sum of
// p_k(x)^2 for k < N.
void evaluate_orthonormal(const JacobiRecurrence& rec, int points, double x, double& value,
                          double& derivative, double& christoffel) {
  double p_prev = 0.0, p = 1.0, d_prev = 0.0, d = 0.0;
  christoffel = 1.0;
  for (int k = 0; k < points; ++k) {
    const double s_prev = k > 0 ? rec.sub[static_cast<std::size_t>(k - 1)] : 0.0;
    const double dk = rec.diag[static_cast<std::size_t>(k)];
    const double q = (x - dk) * p - s_prev * p_prev;
    const double dq = p + (x - dk) * d - s_prev * d_prev;
    if (k == points - 1) {
      value = q;
      derivative = dq;
      return;
    }
    const double sk = rec.sub[static_cast<std::size_t>(k)];
    p_prev = p;
    d_prev = d;
    p = q / sk;
    d = dq / sk;
    christoffel += p * p;
  }
}

bool is_polynomial_exponent(double e) { return e >= 0.0 && e == std::floor(e); }

double affine_power(double base, double e) { return e == 0.0 ? 1.0 : std::pow(base, e); }

}  // namespace

QuadratureRule gauss_jacobi_rule(int points, double alpha, double power) {
  if (points < 1) throw DomainError("gauss_jacobi_rule: need at least one point");
  if (!(alpha > -1.0) || !(power > -1.0))
    throw DomainError("gauss_jacobi_rule: exponents must exceed -1");

  const auto rec = jacobi_recurrence(points, alpha, power);
  const double mass = beta(power + 1.0, alpha + 1.0);
  const auto n = static_cast<Eigen::Index>(points);

  std::vector<double> nodes(static_cast<std::size_t>(points));
  if (points == 1) {
    nodes[0] = rec.diag[0];
  } else {
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(rec.diag.data(), n);
    Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(rec.sub.data(), n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericError("gauss_jacobi_rule: tridiagonal eigensolver did not converge");
    for (Eigen::Index i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  }

  std::vector<double> weights(static_cast<std::size_t>(points));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double x = nodes[i];
    const double lo = i > 0 ? nodes[i - 1] : 0.0;
    const double hi = i + 1 < nodes.size() ? nodes[i + 1] : 1.0;
    double value = 0.0, derivative = 0.0, christoffel = 1.0;
    // Newton polish of the eigenvalue; a step that leaves the bracket is discarded.
    for (int iter = 0; iter < 3; ++iter) {
      evaluate_orthonormal(rec, points, x, value, derivative, christoffel);
      if (derivative == 0.0) break;
      const double next = x - value / derivative;
      if (!(next > lo && next < hi)) break;
      if (next == x) break;
      x = next;
    }
    evaluate_orthonormal(rec, points, x, value, derivative, christoffel);
    nodes[i] = x;
    weights[i] = mass / christoffel;
  }
  return QuadratureRule(1, std::move(nodes), std::move(weights), QuadratureDomain::UnitInterval,
                        alpha, power);
}

QuadratureRule torus_angle_rule(int nodes_per_axis, int n) {
  if (nodes_per_axis < 1) throw ArgumentError("torus_angle_rule: need at least one node per axis");
  if (n < 1) throw ArgumentError("torus_angle_rule: n must be at least 1");
  const auto m = static_cast<std::size_t>(nodes_per_axis);
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) total *= m;

  const double step = 2.0 * std::numbers::pi / static_cast<double>(nodes_per_axis);
  std::vector<double> nodes(total * static_cast<std::size_t>(n));
  std::vector<double> weights(total, std::pow(step, n));
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rest = p;
    for (int j = n - 1; j >= 0; --j) {
      const std::size_t l = rest % m;
      rest /= m;
      nodes[p * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
          (static_cast<double>(l) + 0.5) * step;
    }
  }
  return QuadratureRule(n, std::move(nodes), std::move(weights), QuadratureDomain::TorusAngles,
                        0.0, 0.0);
}

const QuadratureRule& RuleCache::get(int points, double alpha, double power) {
  auto key = std::make_tuple(points, alpha, power);
  auto it = rules_.find(key);
  if (it == rules_.end())
    it = rules_.emplace(key, std::make_unique<QuadratureRule>(gauss_jacobi_rule(points, alpha, power)))
             .first;
  return *it->second;
}

void visit_weighted_nodes(double a, double b, double power, double alpha, int points,
                          RuleCache& cache, const NodeVisitor& visit) {
  a = std::max(a, 0.0);
  b = std::min(b, 1.0);
  if (!(b > a)) return;
  const bool singular_left = !is_polynomial_exponent(power);
  const bool singular_right = !is_polynomial_exponent(alpha);

  if (a == 0.0 && b == 1.0) {
    const auto& rule = cache.get(points, alpha, power);
    for (std::size_t i = 0; i < rule.size(); ++i) visit(rule.x(i), rule.weight(i));
    return;
  }

  if (a == 0.0) {
    if (singular_right && b > 0.5) {
      visit_weighted_nodes(0.0, 0.5, power, alpha, points, cache, visit);
      visit_weighted_nodes(0.5, b, power, alpha, points, cache, visit);
      return;
    }
    // x = b t: the factor x^power becomes b^power t^power.
    const auto& rule = cache.get(points, 0.0, power);
    const double scale = std::pow(b, power + 1.0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double x = b * rule.x(i);
      visit(x, scale * rule.weight(i) * affine_power(1.0 - x, alpha));
    }
    return;
  }

  if (b == 1.0) {
    if (singular_left && a < 0.5) {
      visit_weighted_nodes(a, 0.5, power, alpha, points, cache, visit);
      visit_weighted_nodes(0.5, 1.0, power, alpha, points, cache, visit);
      return;
    }
    const double len = 1.0 - a;
    const auto& rule = cache.get(points, alpha, 0.0);
    const double scale = std::pow(len, alpha + 1.0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double x = a + len * rule.x(i);
      visit(x, scale * rule.weight(i) * affine_power(x, power));
    }
    return;
  }

  // Interior piece: keep its length below the distance to any singular endpoint.
  const double len = b - a;
  if (singular_right && 1.0 - b < len) {
    const double cut = 2.0 * b - 1.0;
    visit_weighted_nodes(a, cut, power, alpha, points, cache, visit);
    visit_weighted_nodes(cut, b, power, alpha, points, cache, visit);
    return;
  }
  if (singular_left && a < len) {
    const double cut = 2.0 * a;
    visit_weighted_nodes(a, cut, power, alpha, points, cache, visit);
    visit_weighted_nodes(cut, b, power, alpha, points, cache, visit);
    return;
  }
  const auto& rule = cache.get(points, 0.0, 0.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = a + len * rule.x(i);
    visit(x, len * rule.weight(i) * affine_power(x, power) * affine_power(1.0 - x, alpha));
  }
}

double integrate_weighted(const std::function<double(double)>& f, double a, double b,
                          double power, double alpha, int points, RuleCache& cache) {
  double acc = 0.0;
  visit_weighted_nodes(a, b, power, alpha, points, cache,
                       [&](double x, double weight) { acc += weight * f(x); });
  return acc;
}

namespace {

std::vector<double> interior_cuts(std::span<const double> breakpoints) {
  std::vector<double> cuts;
  for (double c : breakpoints)
    if (c > 0.0 && c < 1.0) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

void visit_weighted_node_pieces(std::span<const double> breakpoints, double power, double alpha,
                                int points, RuleCache& cache, const NodeVisitor& visit) {
  double left = 0.0;
  for (double c : interior_cuts(breakpoints)) {
    visit_weighted_nodes(left, c, power, alpha, points, cache, visit);
    left = c;
  }
  visit_weighted_nodes(left, 1.0, power, alpha, points, cache, visit);
}

double integrate_weighted_pieces(const std::function<double(double)>& f,
                                 std::span<const double> breakpoints, double power,
                                 double alpha, int points, RuleCache& cache) {
  double acc = 0.0;
  visit_weighted_node_pieces(breakpoints, power, alpha, points, cache,
                             [&](double x, double weight) { acc += weight * f(x); });
  return acc;
}

double RadialProfile::operator()(double s) const {
  return affine_power(s, origin_power) * value(s);
}

double integrate_radial_profile(const RadialProfile& profile, int k, const Weight& w,
                                int points) {
  if (k < 0) throw ArgumentError("integrate_radial_profile: k must be non-negative");
  RuleCache cache;
  std::vector<double> cuts;
  for (double b : profile.breakpoints) cuts.push_back(b * b);
  const double power = w.n() + k - 1.0 + 0.5 * profile.origin_power;
  return integrate_weighted_pieces([&](double r) { return profile.value(std::sqrt(r)); }, cuts,
                                   power, w.alpha(), points, cache);
}

double integrate_radial_profile_polar(const RadialProfile& profile, int k, const Weight& w,
                                      int points) {
  if (k < 0) throw ArgumentError("integrate_radial_profile_polar: k must be non-negative");
  RuleCache cache;
  const double alpha = w.alpha();
  const double power = 2.0 * w.n() + 2.0 * k - 1.0 + profile.origin_power;
  // (1 - s^2)^alpha = (1 - s)^alpha (1 + s)^alpha; the second factor is smooth on [0, 1].
  return 2.0 * integrate_weighted_pieces(
                   [&](double s) { return profile.value(s) * affine_power(1.0 + s, alpha); },
                   profile.breakpoints, power, alpha, points, cache);
}

double RadiiProfile::operator()(std::span<const double> radii) const {
  double acc = value ? value(radii) : 1.0;
  for (std::size_t j = 0; j < axis_powers.size(); ++j) {
    acc *= affine_power(radii[j], axis_powers[j]);
    if (axis_pieces.empty()) continue;
    const auto& breaks = axis_breakpoints[j];
    const auto piece = static_cast<std::size_t>(
        std::lower_bound(breaks.begin(), breaks.end(), radii[j]) - breaks.begin());
    acc *= axis_pieces[j][piece](radii[j]);
  }
  return acc;
}

namespace {

void check_profile(const RadiiProfile& profile, int n, const char* who) {
  const std::string name(who);
  if (profile.dimension() != n)
    throw ArgumentError(name + ": profile has " + std::to_string(profile.dimension()) +
                        " axes, expected " + std::to_string(n));
  if (profile.axis_pieces.empty()) {
    if (!profile.axis_breakpoints.empty())
      throw ArgumentError(name + ": axis breakpoints without axis pieces");
    return;
  }
  if (static_cast<int>(profile.axis_pieces.size()) != n ||
      static_cast<int>(profile.axis_breakpoints.size()) != n)
    throw ArgumentError(name + ": axis piece lists have the wrong length");
  for (int j = 0; j < n; ++j) {
    const auto& breaks = profile.axis_breakpoints[static_cast<std::size_t>(j)];
    if (profile.axis_pieces[static_cast<std::size_t>(j)].size() != breaks.size() + 1)
      throw ArgumentError(name + ": axis " + std::to_string(j) + " needs one piece per interval");
    if (!std::is_sorted(breaks.begin(), breaks.end()) ||
        std::any_of(breaks.begin(), breaks.end(), [](double b) { return !(b > 0.0 && b < 1.0); }))
      throw ArgumentError(name + ": axis breakpoints must be ascending in (0, 1)");
    if (!breaks.empty() && !profile.norm_breakpoints.empty())
      throw ArgumentError(name + ": norm and axis breakpoints cannot be combined");
  }
}

// One term of the telescoping expansion: axis j carries the smooth function
// factor[j] and, when shift[j] > 0, the indicator s_j^2 > shift[j].
struct ShiftedTerm {
  std::vector<std::function<double(double)>> factor;
  std::vector<double> shift;
  double total_shift = 0.0;
};

// Calls `body` for every term of prod_j factor_j(s_j) written as
// prod_j sum_p (piece_p - piece_{p-1})(s_j) 1[s_j > b_{p-1}].
template <class Body>
void for_each_term(const RadiiProfile& profile, Body&& body) {
  const std::size_t n = profile.axis_powers.size();
  ShiftedTerm term;
  term.factor.resize(n);
  term.shift.assign(n, 0.0);
  if (profile.axis_pieces.empty()) {
    term.factor.assign(n, [](double) { return 1.0; });
    body(term);
    return;
  }
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    term.total_shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& pieces = profile.axis_pieces[j];
      const std::size_t p = choice[j];
      if (p == 0) {
        term.factor[j] = pieces[0];
        term.shift[j] = 0.0;
      } else {
        const auto& hi = pieces[p];
        const auto& lo = pieces[p - 1];
        term.factor[j] = [&hi, &lo](double s) { return hi(s) - lo(s); };
        const double b = profile.axis_breakpoints[j][p - 1];
        term.shift[j] = b * b;
      }
      term.total_shift += term.shift[j];
    }
    if (term.total_shift < 1.0) body(term);
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (++choice[j] < profile.axis_pieces[j].size()) break;
      choice[j] = 0;
    }
    if (j == n) return;
  }
}

// Iterated integration over the simplex in squared radii r_j = s_j^2. The term
// is mapped onto the unit simplex by r_j = shift_j + (1 - total_shift) x_j.
class SimplexIntegrator {
 public:
  SimplexIntegrator(const RadiiProfile& profile, const ShiftedTerm& term,
                    const std::vector<double>& exponents, double alpha, int points,
                    RuleCache& cache)
      : profile_(profile),
        term_(term),
        exponents_(exponents),
        scale_(1.0 - term.total_shift),
        rule_power_(exponents.size()),
        tail_alpha_(exponents.size()),
        points_(points),
        cache_(cache),
        x_(exponents.size()),
        radii_(exponents.size()) {
    double tail = alpha;
    double scale_power = static_cast<double>(exponents.size()) + alpha;
    for (std::size_t j = exponents.size(); j-- > 0;) {
      rule_power_[j] = term.shift[j] > 0.0 ? 0.0 : exponents[j];
      if (term.shift[j] == 0.0) scale_power += exponents[j];
      tail_alpha_[j] = tail;
      tail += rule_power_[j] + 1.0;
    }
    prefactor_ = std::pow(scale_, scale_power);
  }

  double run() { return prefactor_ * level(0, 1.0, 0.0); }

 private:
  // remaining = 1 - (x_1 + ... + x_j), partial = x_1 + ... + x_j.
  double level(std::size_t j, double remaining, double partial) {
    std::vector<double> cuts;
    for (double rho : profile_.norm_breakpoints) cuts.push_back((rho * rho - partial) / remaining);
    const bool last = j + 1 == exponents_.size();
    auto inner = [&, j, remaining, partial, last](double u) {
      x_[j] = remaining * u;
      if (last) return leaf();
      return level(j + 1, remaining * (1.0 - u), partial + x_[j]);
    };
    return integrate_weighted_pieces(inner, cuts, rule_power_[j], tail_alpha_[j], points_, cache_);
  }

  double leaf() {
    double acc = 1.0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      const double r = term_.shift[j] + scale_ * x_[j];
      radii_[j] = std::sqrt(r);
      if (term_.shift[j] > 0.0) acc *= affine_power(r, exponents_[j]);
      acc *= term_.factor[j](radii_[j]);
    }
    return profile_.value ? acc * profile_.value(radii_) : acc;
  }

  const RadiiProfile& profile_;
  const ShiftedTerm& term_;
  const std::vector<double>& exponents_;
  double scale_;
  double prefactor_ = 1.0;
  std::vector<double> rule_power_;
  std::vector<double> tail_alpha_;
  int points_;
  RuleCache& cache_;
  std::vector<double> x_;
  std::vector<double> radii_;
};

// Iterated integration over the positive part of the real ball for a group of
// exponent vectors sharing reduced rule exponents. The term is mapped onto the
// unit ball by s_j^2 = shift_j + (1 - total_shift) y_j^2, and y_j = sqrt(L_j) v_j
// with L_{j+1} = L_j (1 - v_j^2), so that
//   prod_j s_j^E_j ds_j (1 - |s|^2)^alpha
// becomes prod_j v_j^rho_j (1 - v_j^2)^q_j dv_j with rho_j = E_j (or 1 on shifted
// axes, with s_j^(E_j - 1) left over) and q_j = alpha + sum_{i>j} (rho_i + 1) / 2.
class PositiveBallBatch {
 public:
  struct Member {
    std::size_t index;                 // position in the caller's list
    std::vector<int> extra_power;      // rho_j - reduced rho_j
    std::vector<int> extra_tail;       // q_j - reduced q_j
    std::vector<int> extra_shift;      // E_j - 1 - reduced (E_j - 1) on shifted axes
    double prefactor;
  };

  PositiveBallBatch(const RadiiProfile& profile, const ShiftedTerm& term,
                    std::vector<double> rule_power, std::vector<double> tail,
                    std::vector<double> shift_power, std::vector<Member> members, int points,
                    RuleCache& cache)
      : profile_(profile),
        term_(term),
        scale_(1.0 - term.total_shift),
        rule_power_(std::move(rule_power)),
        tail_(std::move(tail)),
        shift_power_(std::move(shift_power)),
        members_(std::move(members)),
        points_(points),
        cache_(cache),
        radii_(rule_power_.size()),
        buffers_(rule_power_.size() + 1, std::vector<double>(members_.size())),
        factors_(rule_power_.size(), std::vector<double>(members_.size())) {
    const std::size_t n = rule_power_.size();
    max_power_.assign(n, 0);
    max_tail_.assign(n, 0);
    max_shift_.assign(n, 0);
    for (const auto& m : members_)
      for (std::size_t j = 0; j < n; ++j) {
        max_power_[j] = std::max(max_power_[j], m.extra_power[j]);
        max_tail_[j] = std::max(max_tail_[j], m.extra_tail[j]);
        max_shift_[j] = std::max(max_shift_[j], m.extra_shift[j]);
      }
  }

  // Adds prefactor * integral to out[member.index].
  void run(std::vector<double>& out) {
    auto& acc = buffers_[0];
    std::fill(acc.begin(), acc.end(), 0.0);
    level(0, 1.0, 0.0);
    for (std::size_t g = 0; g < members_.size(); ++g)
      out[members_[g].index] += members_[g].prefactor * acc[g];
  }

 private:
  // Accumulates into buffers_[j]; remaining = 1 - |y_<j|^2, partial = |y_<j|^2.
  void level(std::size_t j, double remaining, double partial) {
    const std::size_t n = rule_power_.size();
    const double width = std::sqrt(remaining);
    std::vector<double> cuts;
    for (double rho : profile_.norm_breakpoints)
      if (rho * rho > partial) cuts.push_back(std::sqrt((rho * rho - partial) / remaining));
    const bool last = j + 1 == n;
    const bool shifted = term_.shift[j] > 0.0;
    std::vector<double> vpow(static_cast<std::size_t>(max_power_[j]) + 1);
    std::vector<double> tpow(static_cast<std::size_t>(max_tail_[j]) + 1);
    std::vector<double> spow(static_cast<std::size_t>(max_shift_[j]) + 1);
    auto& out = buffers_[j];
    auto& factor = factors_[j];

    visit_weighted_node_pieces(cuts, rule_power_[j], tail_[j], points_, cache_, [&](double v,
                                                                                    double wt) {
      const double y = width * v;
      radii_[j] = shifted ? std::sqrt(term_.shift[j] + scale_ * y * y) : std::sqrt(scale_) * y;
      // (1 - v^2)^q = (1 - v)^q (1 + v)^q; the first factor is in the rule.
      double base = wt * affine_power(1.0 + v, tail_[j]) * term_.factor[j](radii_[j]);
      vpow[0] = tpow[0] = 1.0;
      for (std::size_t k = 1; k < vpow.size(); ++k) vpow[k] = vpow[k - 1] * v;
      for (std::size_t k = 1; k < tpow.size(); ++k) tpow[k] = tpow[k - 1] * (1.0 - v * v);
      if (shifted) {
        spow[0] = affine_power(radii_[j], shift_power_[j]);
        for (std::size_t k = 1; k < spow.size(); ++k) spow[k] = spow[k - 1] * radii_[j];
      }
      for (std::size_t g = 0; g < members_.size(); ++g) {
        const auto& m = members_[g];
        double f = vpow[static_cast<std::size_t>(m.extra_power[j])] *
                   tpow[static_cast<std::size_t>(m.extra_tail[j])];
        if (shifted) f *= spow[static_cast<std::size_t>(m.extra_shift[j])];
        factor[g] = f;
      }
      if (last) {
        if (profile_.value) base *= profile_.value(radii_);
        for (std::size_t g = 0; g < members_.size(); ++g) out[g] += base * factor[g];
        return;
      }
      auto& inner = buffers_[j + 1];
      std::fill(inner.begin(), inner.end(), 0.0);
      level(j + 1, remaining * (1.0 - v * v), partial + y * y);
      for (std::size_t g = 0; g < members_.size(); ++g) out[g] += base * factor[g] * inner[g];
    });
  }

  const RadiiProfile& profile_;
  const ShiftedTerm& term_;
  double scale_;
  std::vector<double> rule_power_;
  std::vector<double> tail_;
  std::vector<double> shift_power_;
  std::vector<Member> members_;
  int points_;
  RuleCache& cache_;
  std::vector<double> radii_;
  std::vector<std::vector<double>> buffers_;
  std::vector<std::vector<double>> factors_;
  std::vector<int> max_power_;
  std::vector<int> max_tail_;
  std::vector<int> max_shift_;
};

// Largest e - k > -1 with k a non-negative integer, when share is set.
double reduced(double e, bool share) {
  if (!share || e < 0.0) return e;
  return e - std::floor(e);
}

std::vector<double> positive_ball(const RadiiProfile& profile,
                                  const std::vector<std::vector<double>>& exponents, double alpha,
                                  int points, bool share) {
  const std::size_t n = profile.axis_powers.size();
  std::vector<double> out(exponents.size(), 0.0);
  RuleCache cache;
  for_each_term(profile, [&](const ShiftedTerm& term) {
    const double scale = 1.0 - term.total_shift;
    std::map<std::vector<double>, std::vector<PositiveBallBatch::Member>> groups;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      std::vector<double> rho(n), q(n), shift_power(n, 0.0), key(3 * n);
      PositiveBallBatch::Member member{i, std::vector<int>(n), std::vector<int>(n),
                                       std::vector<int>(n), 0.0};
      double tail = alpha;
      for (std::size_t j = n; j-- > 0;) {
        const double total = exponents[i][j] + profile.axis_powers[j];
        const bool shifted = term.shift[j] > 0.0;
        rho[j] = shifted ? 1.0 : total;
        if (shifted) shift_power[j] = total - 1.0;
        q[j] = tail;
        tail += 0.5 * (rho[j] + 1.0);
      }
      member.prefactor = std::pow(scale, tail);
      for (std::size_t j = 0; j < n; ++j) {
        key[j] = reduced(rho[j], share);
        key[n + j] = reduced(q[j], share);
        member.extra_power[j] = static_cast<int>(std::lround(rho[j] - key[j]));
        member.extra_tail[j] = static_cast<int>(std::lround(q[j] - key[n + j]));
        key[2 * n + j] = reduced(shift_power[j], share);
        member.extra_shift[j] = static_cast<int>(std::lround(shift_power[j] - key[2 * n + j]));
      }
      groups[key].push_back(std::move(member));
    }
    for (auto& [key, members] : groups) {
      std::vector<double> rule_power(key.begin(), key.begin() + static_cast<std::ptrdiff_t>(n));
      std::vector<double> tail(key.begin() + static_cast<std::ptrdiff_t>(n),
                               key.begin() + static_cast<std::ptrdiff_t>(2 * n));
      std::vector<double> shift_power(key.begin() + static_cast<std::ptrdiff_t>(2 * n), key.end());
      PositiveBallBatch(profile, term, std::move(rule_power), std::move(tail),
                        std::move(shift_power), std::move(members), points, cache)
          .run(out);
    }
  });
  return out;
}

}  // namespace

double integrate_simplex(const RadiiProfile& profile, const MultiIndex& m, const Weight& w,
                         int points) {
  if (m.size() != w.n())
    throw ArgumentError("integrate_simplex: multi-index length does not match n");
  check_profile(profile, w.n(), "integrate_simplex");
  std::vector<double> exponents(static_cast<std::size_t>(w.n()));
  for (int j = 0; j < w.n(); ++j)
    exponents[static_cast<std::size_t>(j)] =
        m[j] + 0.5 * profile.axis_powers[static_cast<std::size_t>(j)];
  RuleCache cache;
  double acc = 0.0;
  for_each_term(profile, [&](const ShiftedTerm& term) {
    acc += SimplexIntegrator(profile, term, exponents, w.alpha(), points, cache).run();
  });
  return acc;
}

namespace {

void check_ball_arguments(const RadiiProfile& profile, std::span<const double> exponents,
                          double alpha, const char* who) {
  const std::string name(who);
  const int n = static_cast<int>(exponents.size());
  if (n < 1) throw ArgumentError(name + ": need at least one axis");
  if (!(alpha > -1.0)) throw DomainError(name + ": alpha must exceed -1");
  check_profile(profile, n, who);
  for (std::size_t j = 0; j < exponents.size(); ++j)
    if (!(exponents[j] + profile.axis_powers[j] > -1.0))
      throw DomainError(name + ": exponents must exceed -1");
}

}  // namespace

double integrate_positive_ball(const RadiiProfile& profile, std::span<const double> exponents,
                               double alpha, int points) {
  check_ball_arguments(profile, exponents, alpha, "integrate_positive_ball");
  return positive_ball(profile, {std::vector<double>(exponents.begin(), exponents.end())}, alpha,
                       points, false)[0];
}

std::vector<double> integrate_positive_ball_batch(const RadiiProfile& profile,
                                                  const std::vector<std::vector<double>>& exponents,
                                                  double alpha, int points) {
  for (const auto& e : exponents)
    check_ball_arguments(profile, e, alpha, "integrate_positive_ball_batch");
  return positive_ball(profile, exponents, alpha, points, true);
}

}  // namespace bergman
