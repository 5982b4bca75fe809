#include "bergman/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include <boost/math/special_functions/beta.hpp>

#include "bergman/errors.hpp"
#include "bergman/oracle.hpp"
#include "bergman/spectral.hpp"

namespace bergman::cli {

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<SymbolSpec> radial_battery() {
  return {SymbolSpec::radial(SymbolTerm::constant(1.0)),
          SymbolSpec::radial(SymbolTerm::power(2.0)),
          SymbolSpec::radial(SymbolTerm::power(4.0)),
          SymbolSpec::radial(SymbolTerm::step(0.7, 1.0, 0.0)),
          SymbolSpec::radial(SymbolTerm::polynomial({1.0, -0.5, 0.25}))};
}

std::vector<SymbolSpec> separately_radial_battery(int n) {
  auto per_axis = [n](const std::function<SymbolTerm(int)>& make) {
    std::vector<SymbolTerm> terms;
    for (int j = 0; j < n; ++j) terms.push_back(make(j));
    return SymbolSpec::separately_radial(std::move(terms));
  };
  return {
      per_axis([](int) { return SymbolTerm::constant(1.0); }),
      per_axis([](int j) { return SymbolTerm::power(static_cast<double>(j % 3 + 1)); }),
      per_axis([](int j) { return SymbolTerm::step(0.5 + 0.1 * j, 1.0, 0.25); }),
      per_axis([](int) { return SymbolTerm::polynomial({1.0, -0.5, 0.25}); }),
      per_axis([](int j) {
        switch (j % 3) {
          case 0: return SymbolTerm::power(2.0);
          case 1: return SymbolTerm::step(0.6, 1.0, 0.0);
          default: return SymbolTerm::polynomial({0.5, 0.5});
        }
      }),
  };
}

namespace {

struct Outcome {
  double residual = 0.0;
  std::string detail;
};

class Runner {
 public:
  /// Passes when residual <= threshold, or residual < threshold if strict.
  void run(const std::string& name, double threshold, const std::function<Outcome()>& body,
           bool strict = false) {
    CheckResult c;
    c.name = name;
    c.threshold = threshold;
    try {
      Outcome o = body();
      c.residual = o.residual;
      c.detail = std::move(o.detail);
      c.passed = strict ? o.residual < threshold : o.residual <= threshold;
    } catch (const std::exception& e) {
      c.residual = std::nan("");
      c.detail = std::string("error: ") + e.what();
      c.passed = false;
    }
    report.checks.push_back(std::move(c));
  }

  VerificationReport report;
};

/// Tracks the largest value seen and where it occurred.
struct Worst {
  double value = 0.0;
  std::string where;

  void update(double v, const std::string& location) {
    if (std::isnan(value)) return;
    if (where.empty() || std::isnan(v) || v > value) {
      value = v;
      where = location;
    }
  }
  Outcome outcome() const { return {value, where.empty() ? "no entries" : "worst at " + where}; }
};

std::string at(const SymbolSpec& a, const MultiIndex& m) {
  return a.to_string() + " m=" + m.to_string();
}

std::string at(const SymbolSpec& a, int k) { return a.to_string() + " k=" + std::to_string(k); }

double relative(double value, double reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

}  // namespace

VerificationReport run_verification(const RunConfig& config) {
  config.validate();
  const Weight w = config.weight();
  const int n = w.n();
  const int K = config.max_degree;
  const int N = config.radial_points;
  const int NS = config.simplex_points;
  const int M = config.effective_angular_points();
  const double tol = config.tolerance;
  const SpectralOptions opts = config.spectral_options();
  const auto radial = radial_battery();
  const auto seprad = separately_radial_battery(n);
  const auto basis = enumerate_degree(n, K);
  const int oracle_degree = std::min(K, 8);

  std::vector<SymbolSpec> all = radial;
  all.insert(all.end(), seprad.begin(), seprad.end());

  Runner r;

  r.run("identity_symbol", 1e-11, [&] {
    Worst worst;
    for (const auto& a : {radial.front(), seprad.front()}) {
      const auto s = eigenvalue_sequence_separately_radial(a, w, K, opts);
      for (std::size_t i = 0; i < s.basis.size(); ++i)
        worst.update(std::abs(s.values[i] - 1.0), at(a, s.basis[i]));
    }
    return worst.outcome();
  });

  r.run("radial_power_closed_form", 1e-10, [&] {
    Worst worst;
    const auto& a = radial[1];
    for (int k = 0; k <= std::max(K, 30); ++k) {
      const double expected = (n + k) / (n + k + w.alpha() + 1.0);
      worst.update(std::abs(gamma_radial(a, k, w, N) - expected) / expected, at(a, k));
    }
    return worst.outcome();
  });

  r.run("radial_two_forms", 1e-11, [&] {
    Worst worst;
    for (const auto& a : radial)
      for (int k = 0; k <= K; ++k)
        worst.update(relative(gamma_radial(a, k, w, N), gamma_radial_polar(a, k, w, N)), at(a, k));
    return worst.outcome();
  });

  r.run("ball_vs_simplex_forms", 1e-9, [&] {
    Worst worst;
    for (const auto& a : all) {
      const auto ball = gamma_separately_radial_ball(a, basis, w, NS);
      for (std::size_t i = 0; i < basis.size(); ++i)
        worst.update(std::abs(gamma_separately_radial(a, basis[i], w, NS) - ball[i]),
                     at(a, basis[i]));
    }
    return worst.outcome();
  });

  r.run("monomial_norm_oracle", 1e-8, [&] {
    Worst worst;
    for (const auto& m : enumerate_degree(n, oracle_degree)) {
      const double exact = monomial_norm_sq(m, w);
      const double oracle = monomial_norm_sq_oracle(m, w, N, std::max(M, 2 * oracle_degree + 4));
      worst.update(std::abs(oracle - exact) / exact, "m=" + m.to_string());
    }
    return worst.outcome();
  });

  r.run("fk_norm_oracle", 1e-8, [&] {
    Worst worst;
    const int degree = std::min(K, n >= 3 ? 6 : 8);
    for (int k = 0; k <= degree; ++k) {
      const double exact = fk_norm_sq(k, w);
      const double oracle = fk_norm_oracle(k, w, N, std::max(M, 2 * k + 4));
      worst.update(std::abs(oracle - exact) / exact, "k=" + std::to_string(k));
    }
    return worst.outcome();
  });

  // Oracle matrices compared entrywise with the diagonal realization cover
  // off-diagonal vanishing and diagonal agreement at once.
  std::map<std::string, TruncatedOperator> oracle_matrices;
  auto oracle_check = [&](const std::string& name, const std::vector<SymbolSpec>& symbols) {
    r.run(name, tol, [&] {
      Worst worst;
      for (const auto& a : symbols) {
        auto oracle = truncated_matrix(a, w, K, MatrixMethod::Oracle, opts);
        const auto diagonal = truncated_matrix(a, w, K, MatrixMethod::Diagonal, opts);
        const Eigen::MatrixXd diff = (oracle.entries - diagonal.entries).cwiseAbs();
        Eigen::Index i = 0, j = 0;
        const double d = diff.maxCoeff(&i, &j);
        worst.update(d, a.to_string() + " entry (" + basis[static_cast<std::size_t>(i)].to_string() +
                            "," + basis[static_cast<std::size_t>(j)].to_string() + ")");
        oracle_matrices.emplace(a.to_string(), std::move(oracle));
      }
      return worst.outcome();
    });
  };
  oracle_check("separately_radial_oracle_diagonal", seprad);
  oracle_check("radial_oracle_block_diagonal", radial);

  r.run("oracle_hermitian", 1e-12, [&] {
    if (oracle_matrices.empty()) throw NumericError("no oracle matrix was assembled");
    Worst worst;
    for (const auto& [name, op] : oracle_matrices) {
      const Eigen::MatrixXd asym = (op.entries - op.entries.transpose()).cwiseAbs();
      worst.update(asym.maxCoeff() / std::max(1.0, op.entries.cwiseAbs().maxCoeff()), name);
    }
    return worst.outcome();
  });

  r.run("radial_level_set_constancy", 1e-8, [&] {
    Worst worst;
    for (const auto& a : radial) {
      const auto s = eigenvalue_sequence_separately_radial(a, w, std::min(K, 10), opts);
      for (int k = 0; k <= s.max_degree; ++k) {
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t i = 0; i < s.basis.size(); ++i)
          if (s.basis[i].degree() == k) {
            lo = std::min(lo, s.values[i]);
            hi = std::max(hi, s.values[i]);
          }
        worst.update(hi - lo, at(a, k));
        worst.update(std::abs(hi - gamma_radial(a, k, w, N)), at(a, k) + " vs radial formula");
      }
    }
    return worst.outcome();
  });

  std::vector<EigenvalueSequence> sequences;
  r.run("boundedness", 1e-12, [&] {
    Worst worst;
    for (const auto& a : all) {
      sequences.push_back(eigenvalue_sequence(a, w, K, opts));
      const auto& s = sequences.back();
      for (std::size_t i = 0; i < s.basis.size(); ++i)
        worst.update(std::abs(s.values[i]) - s.bound, at(a, s.basis[i]));
    }
    return worst.outcome();
  });

  // Every battery symbol is nonnegative and not almost everywhere zero.
  r.run("positivity", 0.0, [&] {
    if (sequences.empty()) throw NumericError("no sequences were computed");
    Worst worst;
    for (const auto& s : sequences)
      for (std::size_t i = 0; i < s.basis.size(); ++i)
        worst.update(-s.values[i], "m=" + s.basis[i].to_string());
    return worst.outcome();
  }, true);

  r.run("multiplicity_enumeration", 0.0, [&] {
    Worst worst;
    const auto s = eigenvalue_sequence(radial.front(), w, K, opts);
    for (const auto& e : spectrum_summary(s, tol)) {
      const auto count = std::count_if(basis.begin(), basis.end(),
                                       [&](const MultiIndex& m) { return m.degree() == e.degree; });
      worst.update(std::abs(static_cast<double>(e.multiplicity) - static_cast<double>(count)),
                   "k=" + std::to_string(e.degree));
    }
    return worst.outcome();
  });

  r.run("diagonal_commutator_zero", 0.0, [&] {
    Worst worst;
    for (std::size_t i = 0; i < sequences.size(); ++i)
      for (std::size_t j = i + 1; j < sequences.size(); ++j) {
        const Eigen::MatrixXd c =
            commutator(diagonal_operator(sequences[i]), diagonal_operator(sequences[j]));
        worst.update(c.cwiseAbs().maxCoeff(), all[i].to_string() + " with " + all[j].to_string());
      }
    return worst.outcome();
  });

  r.run("compose_matches_product", 0.0, [&] {
    Worst worst;
    for (std::size_t i = 0; i < sequences.size(); ++i)
      for (std::size_t j = 0; j < sequences.size(); ++j) {
        const auto composed = diagonal_operator(compose_diagonal(sequences[i], sequences[j]));
        const Eigen::MatrixXd product =
            diagonal_operator(sequences[i]).entries * diagonal_operator(sequences[j]).entries;
        worst.update((composed.entries - product).cwiseAbs().maxCoeff(),
                     all[i].to_string() + " with " + all[j].to_string());
      }
    return worst.outcome();
  });

  r.run("incomplete_beta_step", 1e-8, [&] {
    Worst worst;
    const auto& a = radial[3];
    for (int k = 0; k <= K; ++k) {
      const double expected = boost::math::ibeta(n + k, w.alpha() + 1.0, 0.49);
      worst.update(std::abs(gamma_radial(a, k, w, N) - expected), at(a, k));
    }
    return worst.outcome();
  });

  // Each value against the same computation at half the order.
  r.run("refinement_convergence", 1e-10, [&] {
    Worst worst;
    const int half = std::max(1, N / 2);
    const int half_simplex = std::max(1, NS / 2);
    for (const auto& a : radial)
      for (int k = 0; k <= K; ++k)
        worst.update(std::abs(gamma_radial(a, k, w, N) - gamma_radial(a, k, w, half)), at(a, k));
    for (const auto& a : all)
      for (const auto& m : basis)
        worst.update(std::abs(gamma_separately_radial(a, m, w, NS) -
                              gamma_separately_radial(a, m, w, half_simplex)),
                     at(a, m) + " simplex");
    for (const auto& m : enumerate_degree(n, oracle_degree)) {
      const int angular = std::max(M, 2 * oracle_degree + 4);
      const double fine = monomial_norm_sq_oracle(m, w, N, angular);
      const double coarse = monomial_norm_sq_oracle(m, w, half, angular);
      worst.update(std::abs(coarse - fine) / fine, "oracle norm m=" + m.to_string());
    }
    return worst.outcome();
  });

  r.run("monte_carlo_cross_check", 4.0, [&] {
    Worst worst;
    const int degree = std::min(K, 2);
    const auto small = enumerate_degree(n, degree);
    for (const auto& a : {seprad[1], radial[3]}) {
      const auto s = eigenvalue_sequence(a, w, degree, opts);
      const auto mc = monte_carlo_matrix(a, small, w, config.mc_samples, config.seed);
      for (std::size_t i = 0; i < small.size(); ++i)
        for (std::size_t j = 0; j < small.size(); ++j) {
          const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
          const double expected = i == j ? s.values[i] : 0.0;
          worst.update(std::abs(mc.values(ii, jj) - expected) / mc.standard_errors(ii, jj),
                       a.to_string() + " entry (" + small[i].to_string() + "," +
                           small[j].to_string() + ") in standard errors");
        }
    }
    return worst.outcome();
  });

  r.run("radial_power_strictly_increasing", 0.0, [&] {
    Worst worst;
    const auto& a = radial[1];
    double previous = gamma_radial(a, 0, w, N);
    worst.update(-INFINITY, "k=0");
    for (int k = 1; k <= 200; ++k) {
      const double current = gamma_radial(a, k, w, N);
      worst.update(previous - current, "k=" + std::to_string(k));
      previous = current;
    }
    return worst.outcome();
  }, true);

  return std::move(r.report);
}

}  // namespace bergman::cli
