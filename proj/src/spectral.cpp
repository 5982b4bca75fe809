#include "bergman/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/oracle.hpp"
#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

// sign(integral) * exp(log_prefactor + ln|integral|), so that neither the
// Gamma prefactor nor the (tiny) integral has to be representable alone.
double scale_in_log_space(double integral, double log_prefactor) {
  if (integral == 0.0) return 0.0;
  return std::copysign(std::exp(log_prefactor + std::log(std::abs(integral))), integral);
}

double log_dirichlet_prefactor(const MultiIndex& m, const Weight& w) {
  return log_gamma(w.n() + m.degree() + w.alpha() + 1.0) - m.log_factorial() -
         log_gamma(w.alpha() + 1.0);
}

void check_index(const MultiIndex& m, const Weight& w, const char* who) {
  if (m.size() != w.n())
    throw ArgumentError(std::string(who) + ": multi-index " + m.to_string() +
                        " does not have length n = " + std::to_string(w.n()));
}

int coarse_order(int points) { return std::max(1, points / 2); }

}  // namespace

double gamma_separately_radial(const SymbolSpec& a, const MultiIndex& m, const Weight& w,
                               int points) {
  check_index(m, w, "gamma_separately_radial");
  a.check_dimension(w.n());
  const double integral = integrate_simplex(a.radii_profile(w.n()), m, w, points);
  return scale_in_log_space(integral, log_dirichlet_prefactor(m, w));
}

double gamma_separately_radial_ball(const SymbolSpec& a, const MultiIndex& m, const Weight& w,
                                    int points) {
  check_index(m, w, "gamma_separately_radial_ball");
  a.check_dimension(w.n());
  std::vector<double> exponents(static_cast<std::size_t>(w.n()));
  for (int j = 0; j < w.n(); ++j) exponents[static_cast<std::size_t>(j)] = 2.0 * m[j] + 1.0;
  const double integral =
      integrate_positive_ball(a.radii_profile(w.n()), exponents, w.alpha(), points);
  return scale_in_log_space(integral,
                            log_dirichlet_prefactor(m, w) + w.n() * std::numbers::ln2);
}

std::vector<double> gamma_separately_radial_ball(const SymbolSpec& a,
                                                 const std::vector<MultiIndex>& indices,
                                                 const Weight& w, int points) {
  a.check_dimension(w.n());
  std::vector<std::vector<double>> exponents;
  for (const auto& m : indices) {
    check_index(m, w, "gamma_separately_radial_ball");
    auto& e = exponents.emplace_back(static_cast<std::size_t>(w.n()));
    for (int j = 0; j < w.n(); ++j) e[static_cast<std::size_t>(j)] = 2.0 * m[j] + 1.0;
  }
  const auto integrals =
      integrate_positive_ball_batch(a.radii_profile(w.n()), exponents, w.alpha(), points);
  std::vector<double> out(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    out[i] = scale_in_log_space(integrals[i], log_dirichlet_prefactor(indices[i], w) +
                                                  w.n() * std::numbers::ln2);
  return out;
}

double gamma_radial(const SymbolSpec& a, int k, const Weight& w, int points) {
  const double integral = integrate_radial_profile(a.radial_profile(), k, w, points);
  return scale_in_log_space(integral, -log_beta(w.n() + k, w.alpha() + 1.0));
}

double gamma_radial_polar(const SymbolSpec& a, int k, const Weight& w, int points) {
  const double integral = integrate_radial_profile_polar(a.radial_profile(), k, w, points);
  return scale_in_log_space(integral, -log_beta(w.n() + k, w.alpha() + 1.0));
}

double EigenvalueSequence::value(const MultiIndex& m) const {
  if (m.size() != weight.n() || m.degree() > max_degree)
    throw ArgumentError("EigenvalueSequence: " + m.to_string() + " is outside the truncation");
  return values[graded_index(m)];
}

namespace {

EigenvalueSequence empty_sequence(const SymbolSpec& a, const Weight& w, int max_degree) {
  if (max_degree < 0) throw ArgumentError("eigenvalue_sequence: max_degree must be non-negative");
  a.check_dimension(w.n());
  EigenvalueSequence s;
  s.weight = w;
  s.max_degree = max_degree;
  s.method = SequenceMethod::ClosedFormQuadrature;
  s.bound = a.bound();
  s.basis = enumerate_degree(w.n(), max_degree);
  s.values.assign(s.basis.size(), 0.0);
  return s;
}

}  // namespace

EigenvalueSequence eigenvalue_sequence_separately_radial(const SymbolSpec& a, const Weight& w,
                                                         int max_degree,
                                                         const SpectralOptions& options) {
  auto s = empty_sequence(a, w, max_degree);
  std::vector<double> change(s.basis.size(), 0.0);
  parallel_for(s.basis.size(), [&](std::size_t i) {
    s.values[i] = gamma_separately_radial(a, s.basis[i], w, options.simplex_points);
    if (options.estimate_error)
      change[i] = std::abs(s.values[i] - gamma_separately_radial(a, s.basis[i], w,
                                                                 coarse_order(options.simplex_points)));
  });
  s.error_estimate = change.empty() ? 0.0 : *std::max_element(change.begin(), change.end());
  return s;
}

EigenvalueSequence eigenvalue_sequence(const SymbolSpec& a, const Weight& w, int max_degree,
                                       const SpectralOptions& options) {
  if (!a.is_radial()) return eigenvalue_sequence_separately_radial(a, w, max_degree, options);

  auto s = empty_sequence(a, w, max_degree);
  std::vector<double> per_degree(static_cast<std::size_t>(max_degree + 1));
  std::vector<double> change(per_degree.size(), 0.0);
  parallel_for(per_degree.size(), [&](std::size_t k) {
    const int degree = static_cast<int>(k);
    per_degree[k] = gamma_radial(a, degree, w, options.radial_points);
    if (options.estimate_error)
      change[k] = std::abs(per_degree[k] -
                           gamma_radial(a, degree, w, coarse_order(options.radial_points)));
  });
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    s.values[i] = per_degree[static_cast<std::size_t>(s.basis[i].degree())];
  s.error_estimate = *std::max_element(change.begin(), change.end());
  s.degree_values = std::move(per_degree);
  return s;
}

bool TruncatedOperator::is_hermitian(double tolerance) const {
  return (entries - entries.transpose()).cwiseAbs().maxCoeff() <= tolerance;
}

TruncatedOperator diagonal_operator(const EigenvalueSequence& s) {
  TruncatedOperator op;
  op.weight = s.weight;
  op.max_degree = s.max_degree;
  op.method = MatrixMethod::Diagonal;
  op.basis = s.basis;
  const auto dim = static_cast<Eigen::Index>(s.values.size());
  op.entries = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) op.entries(i, i) = s.values[static_cast<std::size_t>(i)];
  op.error_estimate = s.error_estimate;
  return op;
}

TruncatedOperator truncated_matrix(const SymbolSpec& a, const Weight& w, int max_degree,
                                   MatrixMethod method, const SpectralOptions& options) {
  if (method == MatrixMethod::Diagonal)
    return diagonal_operator(eigenvalue_sequence(a, w, max_degree, options));

  if (max_degree < 0) throw ArgumentError("truncated_matrix: max_degree must be non-negative");
  a.check_dimension(w.n());
  const int angular =
      options.oracle_angular_points > 0 ? options.oracle_angular_points : 2 * max_degree + 4;
  PolarOracle oracle(a, w, options.oracle_radial_points, angular);

  TruncatedOperator op;
  op.weight = w;
  op.max_degree = max_degree;
  op.method = MatrixMethod::Oracle;
  op.basis = enumerate_degree(w.n(), max_degree);
  oracle.prepare(op.basis);
  const auto dim = static_cast<Eigen::Index>(op.basis.size());
  op.entries.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto& mi = op.basis[static_cast<std::size_t>(i)];
      const auto& mj = op.basis[static_cast<std::size_t>(j)];
      const auto r = oracle.inner_product(mi, mj);
      const double imaginary = std::abs(r.value.imag());
      if (imaginary > options.oracle_tolerance || !(r.error_estimate <= options.oracle_tolerance)) {
        std::ostringstream os;
        os << "oracle entry (" << i << ',' << j << ") for m = " << mi.to_string()
           << ", m' = " << mj.to_string() << " did not converge: error estimate "
           << r.error_estimate << ", imaginary part " << imaginary;
        throw NumericError(os.str());
      }
      op.entries(i, j) = r.value.real();
      op.max_imaginary = std::max(op.max_imaginary, imaginary);
      op.error_estimate = std::max(op.error_estimate, r.error_estimate);
    }
  }
  return op;
}

Eigen::MatrixXd commutator(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (a.dimension() != b.dimension()) throw ArgumentError("commutator: dimension mismatch");
  return a.entries * b.entries - b.entries * a.entries;
}

EigenvalueSequence compose_diagonal(const EigenvalueSequence& s, const EigenvalueSequence& t) {
  if (!(s.weight == t.weight) || s.max_degree != t.max_degree || s.basis != t.basis)
    throw ArgumentError("compose_diagonal: sequences differ in n, alpha or max_degree");
  EigenvalueSequence out = s;
  double s_max = 0.0, t_max = 0.0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    s_max = std::max(s_max, std::abs(s.values[i]));
    t_max = std::max(t_max, std::abs(t.values[i]));
    out.values[i] = s.values[i] * t.values[i];
  }
  if (s.degree_values && t.degree_values) {
    for (std::size_t k = 0; k < out.degree_values->size(); ++k)
      (*out.degree_values)[k] = (*s.degree_values)[k] * (*t.degree_values)[k];
  } else {
    out.degree_values.reset();
  }
  out.method = s.method == t.method ? s.method : SequenceMethod::Oracle;
  out.error_estimate =
      s_max * t.error_estimate + t_max * s.error_estimate + s.error_estimate * t.error_estimate;
  out.bound = s.bound * t.bound;
  return out;
}

std::vector<SpectrumEntry> spectrum_summary(const EigenvalueSequence& s,
                                            double spread_tolerance) {
  const int n = s.weight.n();
  std::vector<SpectrumEntry> out;
  out.reserve(static_cast<std::size_t>(s.max_degree + 1));
  std::size_t i = 0;
  for (int k = 0; k <= s.max_degree; ++k) {
    double lo = INFINITY, hi = -INFINITY, sum = 0.0;
    std::uint64_t count = 0;
    for (; i < s.basis.size() && s.basis[i].degree() == k; ++i, ++count) {
      lo = std::min(lo, s.values[i]);
      hi = std::max(hi, s.values[i]);
      sum += s.values[i];
    }
    if (hi - lo > spread_tolerance) {
      std::ostringstream os;
      os << "spectrum_summary: eigenvalues on the level set |m| = " << k << " spread by "
         << hi - lo << " > " << spread_tolerance;
      throw ConsistencyError(os.str());
    }
    const double eigenvalue =
        s.degree_values ? (*s.degree_values)[static_cast<std::size_t>(k)] : sum / count;
    out.push_back({k, eigenvalue, multiplicity(n, k)});
  }
  return out;
}

}  // namespace bergman
