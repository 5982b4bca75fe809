#pragma once

// CSV and JSON encodings of the computed objects. Doubles are written in the
// shortest form that parses back to the same bits, so identical inputs give
// byte-identical files and JSON round-trips exactly.
//
// CSV layouts (header line first):
//   separately radial sequence  m1,...,mn,degree,value
//   radial sequence / spectrum  degree,value,multiplicity
//   matrix                      row,m1,...,mn,degree,c0,...,c{D-1}
//   verification report         check,status,residual,threshold,detail

#include <ostream>
#include <vector>

#include <json.hpp>

#include "bergman/spectral.hpp"

namespace bergman::cli {

struct VerificationReport;

nlohmann::json to_json(const EigenvalueSequence& s);
/// Throws ArgumentError on a malformed document.
EigenvalueSequence sequence_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TruncatedOperator& op);
TruncatedOperator operator_from_json(const nlohmann::json& j);

nlohmann::json spectrum_to_json(const std::vector<SpectrumEntry>& spectrum, const Weight& w);
std::vector<SpectrumEntry> spectrum_from_json(const nlohmann::json& j);

nlohmann::json to_json(const VerificationReport& report);

void write_csv(std::ostream& os, const EigenvalueSequence& s);
void write_csv(std::ostream& os, const TruncatedOperator& op);
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumEntry>& spectrum);
void write_csv(std::ostream& os, const VerificationReport& report);

}  // namespace bergman::cli
