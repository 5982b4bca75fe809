#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "bergman/errors.hpp"
#include "bergman/special.hpp"

using namespace bergman;

namespace {

// Every multi-index of length n and degree exactly k, by direct recursion.
void brute_force_level(int n, int k, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == n - 1) {
    prefix.push_back(k);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = 0; first <= k; ++first) {
    prefix.push_back(first);
    brute_force_level(n, k - first, prefix, out);
    prefix.pop_back();
  }
}

double tgamma_monomial_norm(const std::vector<int>& m, int n, double alpha) {
  double fact = 1.0;
  int degree = 0;
  for (int e : m) {
    fact *= std::tgamma(e + 1.0);
    degree += e;
  }
  return fact * std::tgamma(n + alpha + 1.0) / std::tgamma(n + degree + alpha + 1.0);
}

}  // namespace

TEST_CASE("log_gamma matches high-precision reference values") {
  // Reference values computed with mpmath.loggamma at 30 digits.
  const std::pair<double, double> table[] = {
      {1e-3, 6.9071788853838536617},   {0.5, 0.57236494292470008707},
      {1.0, 0.0},                      {2.0, 0.0},
      {2.5, 0.28468287047291915963},   {5.0, 3.1780538303479456196},
      {10.5, 13.940625219403763633},   {100.0, 359.13420536957539878},
      {12345.678, 103959.91990554605982}, {1e6, 12815504.56914761166}};
  for (const auto& [x, expected] : table)
    CHECK(log_gamma(x) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("log_gamma rejects non-positive arguments") {
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
}

TEST_CASE("beta agrees with the Gamma quotient") {
  for (double a : {0.25, 1.0, 3.5, 12.0})
    for (double b : {0.5, 1.0, 2.5, 7.0}) {
      const double expected = std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
      CHECK(beta(a, b) == doctest::Approx(expected).epsilon(1e-13));
    }
  CHECK_THROWS_AS(beta(0.0, 1.0), DomainError);
}

TEST_CASE("Weight validates its parameters") {
  CHECK_NOTHROW(Weight(1, -0.999));
  CHECK_THROWS_AS(Weight(0, 0.0), DomainError);
  CHECK_THROWS_AS(Weight(2, -1.0), DomainError);
  CHECK_THROWS_AS(Weight(2, std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("c_alpha normalizes the weighted volume") {
  for (int n : {1, 2, 3, 4})
    for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
      const Weight w(n, alpha);
      // c_alpha * vol-normalized integral of (1-|z|^2)^alpha = 1, i.e. c_alpha = 1 / (n B(n, alpha+1)).
      const double expected =
          std::tgamma(n + alpha + 1.0) / (std::tgamma(n + 1.0) * std::tgamma(alpha + 1.0));
      CHECK(c_alpha(w) == doctest::Approx(expected).epsilon(1e-13));
      CHECK(c_alpha(w) * n * std::tgamma(n) * std::tgamma(alpha + 1.0) /
                std::tgamma(n + alpha + 1.0) ==
            doctest::Approx(1.0).epsilon(1e-13));
    }
  CHECK(c_alpha(Weight(3, 0.0)) == doctest::Approx(1.0));
}

TEST_CASE("monomial norms match the factorial-Gamma closed form") {
  for (int n : {1, 2, 3})
    for (double alpha : {-0.5, 0.0, 2.5})
      for (const auto& m : enumerate_degree(n, 6)) {
        std::vector<int> e(m.entries().begin(), m.entries().end());
        CHECK(monomial_norm_sq(m, Weight(n, alpha)) ==
              doctest::Approx(tgamma_monomial_norm(e, n, alpha)).epsilon(1e-12));
      }
  CHECK(monomial_norm_sq(MultiIndex::zero(3), Weight(3, 1.0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(monomial_norm_sq(MultiIndex{1, 2}, Weight(3, 0.0)), ArgumentError);
}

TEST_CASE("monomial norms stay finite at high degree") {
  const MultiIndex m{200, 150};
  const double log_value = log_monomial_norm_sq(m, Weight(2, 0.5));
  CHECK(std::isfinite(log_value));
  CHECK(log_value < 0.0);
}

TEST_CASE("fk norms equal the multinomial sum of monomial norms") {
  for (int n : {1, 2, 3})
    for (double alpha : {-0.5, 0.0, 1.0})
      for (int k = 0; k <= 8; ++k) {
        const Weight w(n, alpha);
        double sum = 0.0;
        for (const auto& m : enumerate_degree(n, k))
          if (m.degree() == k) sum += multinomial(k, m) * monomial_norm_sq(m, w);
        CHECK(fk_norm_sq(k, w) == doctest::Approx(sum).epsilon(1e-12));
      }
}

TEST_CASE("multinomial coefficients") {
  CHECK(multinomial(4, MultiIndex{2, 1, 1}) == 12.0);
  CHECK(multinomial(0, MultiIndex{0, 0}) == 1.0);
  CHECK(multinomial(10, MultiIndex{10}) == 1.0);
  CHECK_THROWS_AS(multinomial(3, MultiIndex{1, 1}), ArgumentError);
}

TEST_CASE("multiplicity counts multi-indices of each degree") {
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= 12; ++k) {
      std::vector<int> prefix;
      std::vector<std::vector<int>> level;
      brute_force_level(n, k, prefix, level);
      CHECK(multiplicity(n, k) == level.size());
    }
  CHECK(multiplicity(3, 2) == 6);
  CHECK(multiplicity(20, 20) == 68923264410ULL);
  CHECK_THROWS_AS(multiplicity(0, 1), ArgumentError);
  CHECK_THROWS_AS(multiplicity(2, -1), ArgumentError);
}

TEST_CASE("enumerate_degree is graded, descending within a degree, and complete") {
  const auto basis = enumerate_degree(2, 2);
  const std::vector<MultiIndex> expected = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  CHECK(basis == expected);

  for (int n = 1; n <= 4; ++n) {
    const auto all = enumerate_degree(n, 6);
    CHECK(all.size() == basis_size(n, 6));
    std::set<MultiIndex> unique(all.begin(), all.end());
    CHECK(unique.size() == all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(graded_index(all[i]) == i);
      if (i > 0) {
        CHECK(all[i - 1].degree() <= all[i].degree());
        if (all[i - 1].degree() == all[i].degree()) CHECK(all[i] < all[i - 1]);
      }
    }
  }
}

TEST_CASE("MultiIndex validation and helpers") {
  CHECK_THROWS_AS(MultiIndex(std::vector<int>{}), ArgumentError);
  CHECK_THROWS_AS(MultiIndex({1, -1}), ArgumentError);
  const MultiIndex m{3, 0, 2};
  CHECK(m.degree() == 5);
  CHECK(m.factorial() == 12.0);
  CHECK(m.log_factorial() == doctest::Approx(std::log(12.0)));
  CHECK(m.raised(1) == MultiIndex{3, 1, 2});
  CHECK(m.to_string() == "(3,0,2)");
  CHECK(MultiIndex::zero(2) == MultiIndex{0, 0});
}
