#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/cli/commands.hpp"
#include "bergman/cli/parse_symbol.hpp"
#include "bergman/cli/serialize.hpp"
#include "bergman/cli/verify.hpp"
#include "bergman/errors.hpp"

using namespace bergman;
using namespace bergman::cli;
using nlohmann::json;

namespace {

std::size_t parse_error_position(std::string_view text) {
  try {
    parse_symbol(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string_view::npos;
}

// Compares a CSV body with expected rows, numbers to 1e-12 relative.
void check_csv(const std::string& text, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == header);
  for (const auto& expected : rows) {
    REQUIRE(std::getline(in, line));
    std::istringstream fields(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(fields, cell, ',')) {
      REQUIRE(i < expected.size());
      CHECK(std::stod(cell) == doctest::Approx(expected[i]).epsilon(1e-12));
      ++i;
    }
    CHECK(i == expected.size());
  }
  CHECK(!std::getline(in, line));
}

RunConfig small_config() {
  RunConfig c;
  c.n = 2;
  c.alpha = 0.0;
  c.max_degree = 2;
  c.radial_points = 32;
  c.simplex_points = 16;
  return c;
}

}  // namespace

TEST_CASE("symbol grammar") {
  CHECK(parse_symbol("radial:pow(2)") == SymbolSpec::radial(SymbolTerm::power(2.0)));
  CHECK(parse_symbol("  seprad: pow(2) * const(1) ") ==
        SymbolSpec::separately_radial({SymbolTerm::power(2.0), SymbolTerm::constant(1.0)}));
  CHECK(parse_symbol("radial:step(0.7,1,0)") ==
        SymbolSpec::radial(SymbolTerm::step(0.7, 1.0, 0.0)));
  CHECK(parse_symbol("radial:poly(1,-0.5,+0.25)") ==
        SymbolSpec::radial(SymbolTerm::polynomial({1.0, -0.5, 0.25})));
  CHECK(parse_symbol("radial:const(1e-3)").terms()[0].parameters()[0] == 1e-3);
  for (const char* text : {"radial:pow(2)", "seprad:step(0.5,1,0.25)*poly(0.5,0.5)*pow(3)"})
    CHECK(parse_symbol(parse_symbol(text).to_string()) == parse_symbol(text));
}

TEST_CASE("grammar violations report their position") {
  CHECK(parse_error_position("bogus:pow(2)") == 0);
  CHECK(parse_error_position("radial:foo(1)") == 7);
  CHECK(parse_error_position("radial:pow(2") == 12);
  CHECK(parse_error_position("radial:pow(x)") == 11);
  CHECK(parse_error_position("radial:step(1,2)") == 7);
  CHECK(parse_error_position("radial:pow(2)*pow(2)") == 13);
  CHECK(parse_error_position("radial:pow(2) extra") == 14);
  CHECK(parse_error_position("seprad:") == 7);
  CHECK_THROWS_AS(parse_symbol("radial:pow(-1)"), ValidationError);
}

TEST_CASE("run configuration validation") {
  RunConfig c;
  c.validate();
  CHECK(c.effective_angular_points() == 2 * c.max_degree + 4);
  c.alpha = -1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = RunConfig{};
  c.n = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = RunConfig{};
  c.max_degree = -1;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = RunConfig{};
  c.mc_samples = 10;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = RunConfig{};
  c.tolerance = 0.0;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  CHECK(parse_format("json") == OutputFormat::Json);
  CHECK_THROWS_AS(parse_format("xml"), ArgumentError);
}

TEST_CASE("JSON round trips are exact") {
  const Weight w(2, -0.5);
  const auto radial = eigenvalue_sequence(parse_symbol("radial:step(0.7,1,0)"), w, 3);
  const auto sep = eigenvalue_sequence(parse_symbol("seprad:pow(2)*poly(1,-0.5,0.25)"), w, 3);
  for (const auto& s : {radial, sep}) {
    const auto back = sequence_from_json(json::parse(to_json(s).dump()));
    CHECK(back == s);
  }
  const auto op = truncated_matrix(parse_symbol("seprad:pow(2)*const(1)"), w, 2, MatrixMethod::Oracle);
  const auto op_back = operator_from_json(json::parse(to_json(op).dump()));
  CHECK(op_back.entries == op.entries);
  CHECK(op_back.basis == op.basis);
  CHECK(op_back.method == MatrixMethod::Oracle);
  CHECK(op_back.error_estimate == op.error_estimate);

  const auto spectrum = spectrum_summary(radial);
  CHECK(spectrum_from_json(json::parse(spectrum_to_json(spectrum, w).dump())) == spectrum);
}

TEST_CASE("malformed JSON documents are rejected") {
  const auto s = eigenvalue_sequence(parse_symbol("radial:pow(2)"), Weight(2, 0.0), 2);
  json j = to_json(s);
  json wrong_type = j;
  wrong_type["type"] = "spectrum";
  CHECK_THROWS_AS(sequence_from_json(wrong_type), ArgumentError);
  json missing = j;
  missing.erase("bound");
  CHECK_THROWS_AS(sequence_from_json(missing), ArgumentError);
  json truncated = j;
  truncated["entries"].erase(1);
  CHECK_THROWS_AS(sequence_from_json(truncated), ArgumentError);
  json bad_value = j;
  bad_value["alpha"] = "zero";
  CHECK_THROWS_AS(sequence_from_json(bad_value), ArgumentError);
}

TEST_CASE("CSV layouts") {
  const Weight w(2, 0.0);
  std::ostringstream sep;
  write_csv(sep, eigenvalue_sequence(parse_symbol("seprad:pow(2)*const(1)"), w, 1));
  check_csv(sep.str(), "m1,m2,degree,value",
            {{0, 0, 0, 1.0 / 3.0}, {1, 0, 1, 0.5}, {0, 1, 1, 0.25}});

  std::ostringstream rad;
  write_csv(rad, eigenvalue_sequence(parse_symbol("radial:const(1)"), w, 2));
  check_csv(rad.str(), "degree,value,multiplicity", {{0, 1, 1}, {1, 1, 2}, {2, 1, 3}});

  std::ostringstream mat;
  write_csv(mat, truncated_matrix(parse_symbol("radial:const(1)"), w, 1, MatrixMethod::Diagonal));
  check_csv(mat.str(), "row,m1,m2,degree,c0,c1,c2",
            {{0, 0, 0, 0, 1, 0, 0}, {1, 1, 0, 1, 0, 1, 0}, {2, 0, 1, 1, 0, 0, 1}});

  VerificationReport report;
  report.checks.push_back({"demo", false, 0.5, 0.25, "a,b\nc"});
  std::ostringstream rep;
  write_csv(rep, report);
  CHECK(rep.str() == "check,status,residual,threshold,detail\ndemo,fail,0.5,0.25,a;b;c\n");
}

TEST_CASE("spectrum command") {
  auto c = small_config();
  c.format = OutputFormat::Json;
  std::ostringstream out, err;
  REQUIRE(cmd_spectrum(c, parse_symbol("radial:const(1)"), out, err) == Ok);
  const auto entries = spectrum_from_json(json::parse(out.str()));
  REQUIRE(entries.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(entries[static_cast<std::size_t>(k)].degree == k);
    CHECK(entries[static_cast<std::size_t>(k)].eigenvalue == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entries[static_cast<std::size_t>(k)].multiplicity == static_cast<std::uint64_t>(k + 1));
  }

  c.n = 3;
  std::ostringstream out3, err3;
  REQUIRE(cmd_spectrum(c, parse_symbol("radial:pow(2)"), out3, err3) == Ok);
  CHECK(spectrum_from_json(json::parse(out3.str()))[2].multiplicity == 6);

  std::ostringstream out_bad, err_bad;
  CHECK(cmd_spectrum(c, parse_symbol("seprad:pow(2)*const(1)*const(1)"), out_bad, err_bad) ==
        UsageError);
  CHECK(out_bad.str().empty());
  CHECK(json::parse(err_bad.str())["error"] == "usage");
}

TEST_CASE("eigens and matrix commands are deterministic") {
  auto c = small_config();
  const auto symbol = parse_symbol("seprad:step(0.5,1,0.25)*pow(2)");
  std::ostringstream a, b, err;
  REQUIRE(cmd_eigens(c, symbol, a, err) == Ok);
  REQUIRE(cmd_eigens(c, symbol, b, err) == Ok);
  CHECK(a.str() == b.str());

  c.format = OutputFormat::Json;
  std::ostringstream m1, m2, e1, e2;
  REQUIRE(cmd_matrix(c, symbol, MatrixMethod::Oracle, m1, e1) == Ok);
  REQUIRE(cmd_matrix(c, symbol, MatrixMethod::Oracle, m2, e2) == Ok);
  CHECK(m1.str() == m2.str());
  CHECK(e1.str().rfind("max_abs_diff_vs_diagonal ", 0) == 0);
  const auto doc = json::parse(m1.str());
  CHECK(doc["max_abs_diff_vs_diagonal"].get<double>() <= c.tolerance);
  CHECK(doc["symbol"] == symbol.to_string());
}

TEST_CASE("guarded maps errors to exit codes") {
  std::ostringstream err;
  CHECK(guarded([] { return 0; }, err) == Ok);
  CHECK(guarded([]() -> int { throw ParseError("p", 3); }, err) == UsageError);
  CHECK(guarded([]() -> int { throw ValidationError("v"); }, err) == UsageError);
  CHECK(guarded([]() -> int { throw DomainError("d"); }, err) == UsageError);
  CHECK(guarded([]() -> int { throw ArgumentError("a"); }, err) == UsageError);
  CHECK(guarded([]() -> int { throw NumericError("n"); }, err) == NumericFailure);
  CHECK(guarded([]() -> int { throw ConsistencyError("c"); }, err) == NumericFailure);
  std::ostringstream one;
  guarded([]() -> int { throw NumericError("boom"); }, one);
  const auto diag = json::parse(one.str());
  CHECK(diag["error"] == "numeric");
  CHECK(diag["message"] == "boom");
}

TEST_CASE("verification passes at default resolution and fails when under-resolved") {
  auto c = small_config();
  c.max_degree = 3;
  c.mc_samples = 20000;
  std::ostringstream out, err;
  CHECK(cmd_verify(c, out, err) == Ok);
  CHECK(err.str().empty());

  c.radial_points = 2;
  std::ostringstream out2, err2;
  CHECK(cmd_verify(c, out2, err2) == CheckFailed);
  CHECK(err2.str().find("FAIL refinement_convergence") != std::string::npos);
}
