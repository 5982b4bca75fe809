#include "bergman/cli/serialize.hpp"

#include "bergman/cli/verify.hpp"
#include "bergman/errors.hpp"

namespace bergman::cli {

using nlohmann::json;

namespace {

const char* method_name(SequenceMethod m) {
  return m == SequenceMethod::Oracle ? "oracle" : "closed_form_quadrature";
}

const char* method_name(MatrixMethod m) {
  return m == MatrixMethod::Oracle ? "oracle" : "diagonal";
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ArgumentError(std::string("JSON document lacks field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("JSON field '") + key + "': " + e.what());
  }
}

void expect_type(const json& j, const char* type) {
  if (field<std::string>(j, "type") != type)
    throw ArgumentError(std::string("expected a JSON document of type ") + type);
}

Weight weight_from(const json& j) { return Weight(field<int>(j, "n"), field<double>(j, "alpha")); }

void write_index(std::ostream& os, const MultiIndex& m) {
  for (int e : m.entries()) os << e << ',';
  os << m.degree();
}

}  // namespace

json to_json(const EigenvalueSequence& s) {
  json j;
  j["type"] = "eigenvalue_sequence";
  j["n"] = s.weight.n();
  j["alpha"] = s.weight.alpha();
  j["max_degree"] = s.max_degree;
  j["method"] = method_name(s.method);
  j["error_estimate"] = s.error_estimate;
  j["bound"] = s.bound;
  json entries = json::array();
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    std::vector<int> m(s.basis[i].entries().begin(), s.basis[i].entries().end());
    entries.push_back({{"m", m}, {"degree", s.basis[i].degree()}, {"value", s.values[i]}});
  }
  j["entries"] = std::move(entries);
  if (s.degree_values) j["degree_values"] = *s.degree_values;
  return j;
}

EigenvalueSequence sequence_from_json(const json& j) {
  expect_type(j, "eigenvalue_sequence");
  EigenvalueSequence s;
  s.weight = weight_from(j);
  s.max_degree = field<int>(j, "max_degree");
  const auto method = field<std::string>(j, "method");
  if (method != "oracle" && method != "closed_form_quadrature")
    throw ArgumentError("unknown sequence method '" + method + "'");
  s.method = method == "oracle" ? SequenceMethod::Oracle : SequenceMethod::ClosedFormQuadrature;
  s.error_estimate = field<double>(j, "error_estimate");
  s.bound = field<double>(j, "bound");
  for (const auto& e : field<json>(j, "entries")) {
    s.basis.emplace_back(field<std::vector<int>>(e, "m"));
    s.values.push_back(field<double>(e, "value"));
  }
  if (s.basis != enumerate_degree(s.weight.n(), s.max_degree))
    throw ArgumentError("sequence entries are not the graded basis up to max_degree");
  if (j.contains("degree_values")) s.degree_values = field<std::vector<double>>(j, "degree_values");
  return s;
}

json to_json(const TruncatedOperator& op) {
  json j;
  j["type"] = "truncated_operator";
  j["n"] = op.weight.n();
  j["alpha"] = op.weight.alpha();
  j["max_degree"] = op.max_degree;
  j["method"] = method_name(op.method);
  json basis = json::array();
  for (const auto& m : op.basis) basis.push_back(std::vector<int>(m.entries().begin(), m.entries().end()));
  j["basis"] = std::move(basis);
  json rows = json::array();
  for (Eigen::Index i = 0; i < op.entries.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(op.entries.cols()));
    for (Eigen::Index c = 0; c < op.entries.cols(); ++c) row[static_cast<std::size_t>(c)] = op.entries(i, c);
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  j["max_imaginary"] = op.max_imaginary;
  j["error_estimate"] = op.error_estimate;
  return j;
}

TruncatedOperator operator_from_json(const json& j) {
  expect_type(j, "truncated_operator");
  TruncatedOperator op;
  op.weight = weight_from(j);
  op.max_degree = field<int>(j, "max_degree");
  const auto method = field<std::string>(j, "method");
  if (method != "oracle" && method != "diagonal")
    throw ArgumentError("unknown matrix method '" + method + "'");
  op.method = method == "oracle" ? MatrixMethod::Oracle : MatrixMethod::Diagonal;
  for (const auto& m : field<json>(j, "basis")) op.basis.emplace_back(m.get<std::vector<int>>());
  const auto rows = field<std::vector<std::vector<double>>>(j, "entries");
  const auto dim = static_cast<Eigen::Index>(op.basis.size());
  if (static_cast<Eigen::Index>(rows.size()) != dim)
    throw ArgumentError("matrix row count does not match the basis");
  op.entries.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != dim) throw ArgumentError("matrix is not square");
    for (Eigen::Index c = 0; c < dim; ++c) op.entries(i, c) = row[static_cast<std::size_t>(c)];
  }
  op.max_imaginary = field<double>(j, "max_imaginary");
  op.error_estimate = field<double>(j, "error_estimate");
  return op;
}

json spectrum_to_json(const std::vector<SpectrumEntry>& spectrum, const Weight& w) {
  json j;
  j["type"] = "spectrum";
  j["n"] = w.n();
  j["alpha"] = w.alpha();
  json entries = json::array();
  for (const auto& e : spectrum)
    entries.push_back(
        {{"degree", e.degree}, {"value", e.eigenvalue}, {"multiplicity", e.multiplicity}});
  j["entries"] = std::move(entries);
  return j;
}

std::vector<SpectrumEntry> spectrum_from_json(const json& j) {
  expect_type(j, "spectrum");
  std::vector<SpectrumEntry> out;
  for (const auto& e : field<json>(j, "entries"))
    out.push_back({field<int>(e, "degree"), field<double>(e, "value"),
                   field<std::uint64_t>(e, "multiplicity")});
  return out;
}

json to_json(const VerificationReport& report) {
  json j;
  j["type"] = "verification";
  j["passed"] = report.passed();
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"residual", c.residual},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
  j["checks"] = std::move(checks);
  return j;
}

void write_csv(std::ostream& os, const EigenvalueSequence& s) {
  if (s.degree_values) {
    os << "degree,value,multiplicity\n";
    for (std::size_t k = 0; k < s.degree_values->size(); ++k)
      os << k << ',' << format_double((*s.degree_values)[k]) << ','
         << multiplicity(s.weight.n(), static_cast<int>(k)) << '\n';
    return;
  }
  for (int j = 1; j <= s.weight.n(); ++j) os << 'm' << j << ',';
  os << "degree,value\n";
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    write_index(os, s.basis[i]);
    os << ',' << format_double(s.values[i]) << '\n';
  }
}

void write_csv(std::ostream& os, const TruncatedOperator& op) {
  os << "row,";
  for (int j = 1; j <= op.weight.n(); ++j) os << 'm' << j << ',';
  os << "degree";
  for (Eigen::Index c = 0; c < op.entries.cols(); ++c) os << ",c" << c;
  os << '\n';
  for (Eigen::Index i = 0; i < op.entries.rows(); ++i) {
    os << i << ',';
    write_index(os, op.basis[static_cast<std::size_t>(i)]);
    for (Eigen::Index c = 0; c < op.entries.cols(); ++c) os << ',' << format_double(op.entries(i, c));
    os << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumEntry>& spectrum) {
  os << "degree,value,multiplicity\n";
  for (const auto& e : spectrum)
    os << e.degree << ',' << format_double(e.eigenvalue) << ',' << e.multiplicity << '\n';
}

void write_csv(std::ostream& os, const VerificationReport& report) {
  os << "check,status,residual,threshold,detail\n";
  for (const auto& c : report.checks) {
    std::string detail = c.detail;
    for (auto& ch : detail)
      if (ch == ',' || ch == '\n') ch = ';';
    os << c.name << ',' << (c.passed ? "pass" : "fail") << ',' << format_double(c.residual) << ','
       << format_double(c.threshold) << ',' << detail << '\n';
  }
}

}  // namespace bergman::cli
