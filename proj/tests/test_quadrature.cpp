#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"

using namespace bergman;

namespace {

double tgamma_beta(double a, double b) {
  return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
}

// int over the positive part of the real unit ball of prod s_j^e_j (1 - |s|^2)^alpha.
double ball_moment(const std::vector<double>& e, double alpha) {
  double num = std::tgamma(alpha + 1.0);
  double sum = 0.0;
  for (double x : e) {
    num *= std::tgamma(0.5 * (x + 1.0));
    sum += 0.5 * (x + 1.0);
  }
  return num / (std::pow(2.0, static_cast<double>(e.size())) * std::tgamma(sum + alpha + 1.0));
}

// Dirichlet integral int_Delta prod r_j^m_j (1 - sum r)^alpha dr.
double dirichlet(const std::vector<double>& m, double alpha) {
  double num = std::tgamma(alpha + 1.0);
  double sum = 0.0;
  for (double x : m) {
    num *= std::tgamma(x + 1.0);
    sum += x + 1.0;
  }
  return num / std::tgamma(sum + alpha + 1.0);
}

RadiiProfile unit(int n) {
  RadiiProfile p;
  p.axis_powers.assign(static_cast<std::size_t>(n), 0.0);
  return p;
}

RadiiProfile axis_steps(const std::vector<double>& thresholds, double low, double high) {
  RadiiProfile p = unit(static_cast<int>(thresholds.size()));
  for (double t : thresholds) {
    p.axis_pieces.push_back({[low](double) { return low; }, [high](double) { return high; }});
    p.axis_breakpoints.push_back({t});
  }
  return p;
}

}  // namespace

TEST_CASE("Gauss-Jacobi rules integrate monomials exactly") {
  for (double alpha : {-0.5, 0.0, 1.0, 2.5})
    for (double power : {0.0, 0.5, 3.0, 10.0})
      for (int points : {1, 4, 12}) {
        const auto rule = gauss_jacobi_rule(points, alpha, power);
        REQUIRE(rule.size() == static_cast<std::size_t>(points));
        for (int d = 0; d <= 2 * points - 1; ++d) {
          double acc = 0.0;
          for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weight(i) * std::pow(rule.x(i), d);
          CHECK(acc == doctest::Approx(tgamma_beta(power + d + 1.0, alpha + 1.0)).epsilon(1e-12));
        }
      }
}

TEST_CASE("Gauss-Jacobi nodes are ordered inside (0, 1) with positive weights") {
  const auto rule = gauss_jacobi_rule(40, -0.5, 7.0);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    CHECK(rule.x(i) > 0.0);
    CHECK(rule.x(i) < 1.0);
    CHECK(rule.weight(i) > 0.0);
    if (i > 0) CHECK(rule.x(i) > rule.x(i - 1));
  }
  CHECK(rule.alpha() == -0.5);
  CHECK(rule.power() == 7.0);
  CHECK(rule.domain() == QuadratureDomain::UnitInterval);
}

TEST_CASE("Gauss-Jacobi rejects invalid arguments") {
  CHECK_THROWS_AS(gauss_jacobi_rule(0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi_rule(4, -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi_rule(4, 0.0, -1.5), DomainError);
}

TEST_CASE("torus rule annihilates nonzero frequencies below the node count") {
  const int m = 6;
  const auto rule = torus_angle_rule(m, 2);
  double total = 0.0;
  for (double w : rule.weights()) total += w;
  CHECK(total == doctest::Approx(4.0 * std::numbers::pi * std::numbers::pi));
  for (int q1 = -m + 1; q1 < m; ++q1)
    for (int q2 = -m + 1; q2 < m; ++q2) {
      double re = 0.0, im = 0.0;
      for (std::size_t p = 0; p < rule.size(); ++p) {
        const auto t = rule.node(p);
        re += rule.weight(p) * std::cos(q1 * t[0] + q2 * t[1]);
        im += rule.weight(p) * std::sin(q1 * t[0] + q2 * t[1]);
      }
      if (q1 == 0 && q2 == 0) continue;
      CHECK(std::abs(re) < 1e-12);
      CHECK(std::abs(im) < 1e-12);
    }
}

TEST_CASE("integrate_weighted_pieces handles jumps and endpoint singularities") {
  RuleCache cache;
  for (double alpha : {-0.5, 0.0, 1.5})
    for (double power : {0.0, 1.5, 4.0}) {
      // Indicator of [0, c] against x^power (1-x)^alpha: a regularized incomplete Beta.
      const double c = 0.49;
      const double value = integrate_weighted_pieces([c](double x) { return x <= c ? 1.0 : 0.0; },
                                                     std::vector<double>{c}, power, alpha, 24, cache);
      const double expected = boost::math::ibeta(power + 1.0, alpha + 1.0, c) *
                              tgamma_beta(power + 1.0, alpha + 1.0);
      CHECK(value == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("integrate_weighted on a subinterval") {
  RuleCache cache;
  const double value =
      integrate_weighted([](double) { return 1.0; }, 0.2, 0.7, 0.5, -0.5, 20, cache);
  const double expected = (boost::math::ibeta(1.5, 0.5, 0.7) - boost::math::ibeta(1.5, 0.5, 0.2)) *
                          tgamma_beta(1.5, 0.5);
  CHECK(value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("radial profiles: the two substitutions agree with the incomplete Beta function") {
  RadialProfile step{[](double s) { return s <= 0.7 ? 1.0 : 0.0; }, {0.7}, 0.0};
  for (int n : {1, 2, 3})
    for (double alpha : {-0.5, 0.0, 2.5})
      for (int k : {0, 3, 10}) {
        const Weight w(n, alpha);
        const double expected = boost::math::ibeta(n + k, alpha + 1.0, 0.49) *
                                tgamma_beta(n + k, alpha + 1.0);
        CHECK(integrate_radial_profile(step, k, w, 24) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(integrate_radial_profile_polar(step, k, w, 24) ==
              doctest::Approx(expected).epsilon(1e-12));
      }
}

TEST_CASE("radial profile with an odd origin power") {
  // a(s) = s: int r^(1/2) r^(n+k-1) (1-r)^alpha dr = B(n+k+1/2, alpha+1).
  RadialProfile power{[](double) { return 1.0; }, {}, 1.0};
  const Weight w(2, -0.5);
  CHECK(integrate_radial_profile(power, 3, w, 8) ==
        doctest::Approx(tgamma_beta(5.5, 0.5)).epsilon(1e-13));
  CHECK(integrate_radial_profile_polar(power, 3, w, 8) ==
        doctest::Approx(tgamma_beta(5.5, 0.5)).epsilon(1e-13));
}

TEST_CASE("simplex integration reproduces Dirichlet integrals") {
  for (int n : {1, 2, 3})
    for (double alpha : {-0.5, 0.0, 1.0}) {
      const Weight w(n, alpha);
      for (const auto& m : enumerate_degree(n, 4)) {
        std::vector<double> e(m.entries().begin(), m.entries().end());
        CHECK(integrate_simplex(unit(n), m, w, 12) ==
              doctest::Approx(dirichlet(e, alpha)).epsilon(1e-12));
      }
    }
}

TEST_CASE("simplex integration of a per-axis step by inclusion-exclusion") {
  // 1[s_1 > t] on the simplex in r: shift r_1 = t^2 + rho, scaled Dirichlet integral.
  const double t = 0.6;
  const Weight w(2, -0.5);
  RadiiProfile one_axis = unit(2);
  one_axis.axis_pieces = {{[](double) { return 0.0; }, [](double) { return 1.0; }},
                          {[](double) { return 1.0; }}};
  one_axis.axis_breakpoints = {{t}, {}};
  const double scale = 1.0 - t * t;
  // int_{r1 > t^2} (1 - r1 - r2)^alpha dr = scale^(alpha + 2) / ((alpha+1)(alpha+2)).
  const double expected = std::pow(scale, 1.5) / (0.5 * 1.5);
  CHECK(integrate_simplex(one_axis, MultiIndex{0, 0}, w, 16) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("positive-ball integration reproduces closed-form moments") {
  for (int n : {1, 2, 3})
    for (double alpha : {-0.5, 0.0, 2.5})
      for (const auto& e : std::vector<std::vector<double>>{{1.0, 3.0, 5.0}, {0.0, 2.0, 1.0},
                                                            {7.0, 1.0, 1.0}, {0.5, 2.5, 4.0}}) {
        const std::vector<double> exps(e.begin(), e.begin() + n);
        CHECK(integrate_positive_ball(unit(n), exps, alpha, 20) ==
              doctest::Approx(ball_moment(exps, alpha)).epsilon(1e-12));
      }
}

TEST_CASE("positive-ball batch agrees with single evaluations") {
  const auto profile = axis_steps({0.5, 0.7}, 1.0, 0.25);
  std::vector<std::vector<double>> exps;
  for (const auto& m : enumerate_degree(2, 6)) exps.push_back({m[0] + 1.0, m[1] + 1.0});
  const auto batch = integrate_positive_ball_batch(profile, exps, -0.5, 32);
  for (std::size_t i = 0; i < exps.size(); ++i)
    CHECK(batch[i] == doctest::Approx(integrate_positive_ball(profile, exps[i], -0.5, 32))
                          .epsilon(1e-12));
}

TEST_CASE("simplex and positive ball agree for axis steps") {
  // int_Delta f(sqrt r) r^m (1-sum r)^alpha dr = 2^n int_tau f(s) s^(2m+1) (1-|s|^2)^alpha ds.
  const auto profile = axis_steps({0.5, 0.6, 0.7}, 1.0, 0.25);
  const Weight w(3, -0.5);
  for (const auto& m : enumerate_degree(3, 4)) {
    const std::vector<double> exps{2.0 * m[0] + 1.0, 2.0 * m[1] + 1.0, 2.0 * m[2] + 1.0};
    CHECK(integrate_simplex(profile, m, w, 20) ==
          doctest::Approx(8.0 * integrate_positive_ball(profile, exps, w.alpha(), 20))
              .epsilon(1e-11));
  }
}

TEST_CASE("integrators reject mismatched profiles") {
  CHECK_THROWS_AS(integrate_simplex(unit(2), MultiIndex{1, 1, 1}, Weight(3, 0.0), 8), ArgumentError);
  CHECK_THROWS_AS(integrate_simplex(unit(2), MultiIndex{1, 1}, Weight(3, 0.0), 8), ArgumentError);
  const std::vector<double> e{1.0, 1.0};
  CHECK_THROWS_AS(integrate_positive_ball(unit(2), e, -1.0, 8), DomainError);
  const std::vector<double> bad{-1.0, 1.0};
  CHECK_THROWS_AS(integrate_positive_ball(unit(2), bad, 0.0, 8), DomainError);
  RadiiProfile mixed = axis_steps({0.5, 0.5}, 1.0, 0.0);
  mixed.norm_breakpoints = {0.3};
  CHECK_THROWS_AS(integrate_positive_ball(mixed, e, 0.0, 8), ArgumentError);
}
