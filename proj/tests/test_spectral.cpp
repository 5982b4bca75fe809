#include <doctest.h>

#include <cmath>

#include "bergman/errors.hpp"
#include "bergman/spectral.hpp"

using namespace bergman;

namespace {

double tgamma_beta(double a, double b) {
  return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
}

SymbolSpec radial(SymbolTerm t) { return SymbolSpec::radial(std::move(t)); }

SymbolSpec first_axis_square(int n) {
  std::vector<SymbolTerm> terms{SymbolTerm::power(2.0)};
  for (int j = 1; j < n; ++j) terms.push_back(SymbolTerm::constant(1.0));
  return SymbolSpec::separately_radial(std::move(terms));
}

}  // namespace

TEST_CASE("radial s^2 on the disc") {
  const auto s = eigenvalue_sequence(radial(SymbolTerm::power(2.0)), Weight(1, 0.0), 2);
  REQUIRE(s.degree_values.has_value());
  CHECK((*s.degree_values)[0] == doctest::Approx(1.0 / 2.0).epsilon(1e-14));
  CHECK((*s.degree_values)[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK((*s.degree_values)[2] == doctest::Approx(3.0 / 4.0).epsilon(1e-14));
}

TEST_CASE("radial s^(2p) matches the Beta ratio") {
  for (int n : {1, 2, 3})
    for (double alpha : {-0.5, 0.0, 1.0, 2.5})
      for (double p : {0.5, 1.0, 2.0, 3.5}) {
        const auto a = radial(SymbolTerm::power(2.0 * p));
        const Weight w(n, alpha);
        for (int k : {0, 1, 5, 20}) {
          const double expected = tgamma_beta(n + k + p, alpha + 1.0) / tgamma_beta(n + k, alpha + 1.0);
          CHECK(gamma_radial(a, k, w, 32) == doctest::Approx(expected).epsilon(1e-12));
          CHECK(gamma_radial_polar(a, k, w, 32) == doctest::Approx(expected).epsilon(1e-12));
        }
      }
}

TEST_CASE("separately radial |z_1|^2 matches the norm ratio") {
  for (int n : {1, 2, 3})
    for (double alpha : {-0.5, 0.0, 2.5}) {
      const Weight w(n, alpha);
      const auto a = first_axis_square(n);
      for (const auto& m : enumerate_degree(n, 4)) {
        const double expected = (m[0] + 1.0) / (n + m.degree() + alpha + 1.0);
        CHECK(gamma_separately_radial(a, m, w, 16) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(gamma_separately_radial_ball(a, m, w, 16) ==
              doctest::Approx(expected).epsilon(1e-12));
      }
    }
  CHECK(gamma_separately_radial(first_axis_square(2), MultiIndex{0, 0}, Weight(2, 0.0), 8) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("batched ball form equals single evaluations") {
  const auto a = SymbolSpec::separately_radial(
      {SymbolTerm::step(0.6, 1.0, 0.0), SymbolTerm::polynomial({0.5, 0.5})});
  const Weight w(2, -0.5);
  const auto basis = enumerate_degree(2, 5);
  const auto batch = gamma_separately_radial_ball(a, basis, w, 24);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    CHECK(batch[i] == doctest::Approx(gamma_separately_radial_ball(a, basis[i], w, 24)).epsilon(1e-12));
    CHECK(batch[i] == doctest::Approx(gamma_separately_radial(a, basis[i], w, 24)).epsilon(1e-10));
  }
}

TEST_CASE("constant symbol gives the identity") {
  const auto s = eigenvalue_sequence_separately_radial(radial(SymbolTerm::constant(1.0)),
                                                       Weight(3, -0.5), 5);
  for (double v : s.values) CHECK(std::abs(v - 1.0) < 1e-12);
  const auto r = eigenvalue_sequence(radial(SymbolTerm::constant(1.0)), Weight(3, -0.5), 5);
  for (double v : r.values) CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("radial sequences are constant on level sets") {
  const auto a = radial(SymbolTerm::step(0.7, 1.0, 0.0));
  const Weight w(2, 0.0);
  const auto s = eigenvalue_sequence(a, w, 6);
  const auto t = eigenvalue_sequence_separately_radial(a, w, 6);
  REQUIRE(s.basis == t.basis);
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    CHECK(t.values[i] == doctest::Approx(s.values[i]).epsilon(1e-9));
  const auto spectrum = spectrum_summary(t);
  REQUIRE(spectrum.size() == 7);
  for (const auto& e : spectrum) CHECK(e.multiplicity == static_cast<std::uint64_t>(e.degree + 1));
}

TEST_CASE("sequences are ordered, bounded and reproducible") {
  const auto a = SymbolSpec::separately_radial(
      {SymbolTerm::power(2.0), SymbolTerm::step(0.5, 1.0, 0.25)});
  const Weight w(2, 1.0);
  const auto s = eigenvalue_sequence(a, w, 5);
  CHECK(s.basis == enumerate_degree(2, 5));
  CHECK(s.bound == 1.0);
  for (double v : s.values) {
    CHECK(v > 0.0);
    CHECK(v <= s.bound + 1e-12);
  }
  CHECK(s.error_estimate < 1e-10);
  CHECK(s == eigenvalue_sequence(a, w, 5));
  CHECK(s.value(MultiIndex{2, 3}) == s.values[graded_index(MultiIndex{2, 3})]);
  CHECK_THROWS_AS(s.value(MultiIndex{3, 3}), ArgumentError);
}

TEST_CASE("diagonal operators commute and compose pointwise") {
  const Weight w(2, 0.0);
  const auto s = eigenvalue_sequence(
      SymbolSpec::separately_radial({SymbolTerm::power(2.0), SymbolTerm::constant(1.0)}), w, 4);
  const auto t = eigenvalue_sequence(radial(SymbolTerm::step(0.7, 1.0, 0.0)), w, 4);
  const auto c = commutator(diagonal_operator(s), diagonal_operator(t));
  CHECK(c.cwiseAbs().maxCoeff() == 0.0);
  const auto st = compose_diagonal(s, t);
  for (std::size_t i = 0; i < st.values.size(); ++i) CHECK(st.values[i] == s.values[i] * t.values[i]);
  const Eigen::MatrixXd product = diagonal_operator(s).entries * diagonal_operator(t).entries;
  CHECK((product - diagonal_operator(st).entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK(!st.degree_values.has_value());

  const auto other = eigenvalue_sequence(radial(SymbolTerm::constant(1.0)), Weight(2, 1.0), 4);
  CHECK_THROWS_AS(compose_diagonal(s, other), ArgumentError);
}

TEST_CASE("spectrum_summary rejects split level sets") {
  const auto s = eigenvalue_sequence(first_axis_square(2), Weight(2, 0.0), 3);
  CHECK_THROWS_AS(spectrum_summary(s), ConsistencyError);
}

TEST_CASE("diagonal truncated matrix") {
  const auto a = radial(SymbolTerm::power(2.0));
  const auto op = truncated_matrix(a, Weight(2, 0.0), 3, MatrixMethod::Diagonal);
  CHECK(op.dimension() == 10);
  CHECK(op.is_hermitian(0.0));
  for (Eigen::Index i = 0; i < op.dimension(); ++i)
    for (Eigen::Index j = 0; j < op.dimension(); ++j)
      if (i != j) CHECK(op.entries(i, j) == 0.0);
  CHECK(op.entries(0, 0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("argument errors") {
  const auto sep = first_axis_square(2);
  CHECK_THROWS_AS(gamma_separately_radial(sep, MultiIndex{1, 1, 1}, Weight(3, 0.0), 8), ArgumentError);
  CHECK_THROWS_AS(gamma_separately_radial(sep, MultiIndex{1, 1, 1}, Weight(2, 0.0), 8), ArgumentError);
  CHECK_THROWS_AS(gamma_radial(sep, 1, Weight(2, 0.0), 8), ArgumentError);
  CHECK_THROWS_AS(eigenvalue_sequence(sep, Weight(2, 0.0), -1), ArgumentError);
}
