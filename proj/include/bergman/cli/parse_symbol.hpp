#pragma once

#include <string_view>

#include "bergman/symbol.hpp"

namespace bergman::cli {

/// Parses
///
///   symbol := "radial:" term | "seprad:" term ("*" term)*
///   term   := "const(" c ")" | "pow(" p ")" | "step(" t "," lo "," hi ")"
///           | "poly(" c0 ("," ci)* ")"
///
/// Whitespace between tokens is ignored. Throws ParseError (with byte
/// position) on grammar violations and ValidationError when the symbol is not
/// provably bounded.
SymbolSpec parse_symbol(std::string_view text);

}  // namespace bergman::cli
