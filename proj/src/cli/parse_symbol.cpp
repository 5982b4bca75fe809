#include "bergman/cli/parse_symbol.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "bergman/errors.hpp"

namespace bergman::cli {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SymbolSpec symbol() {
    skip_space();
    SymbolSpec spec = [&] {
      if (accept("radial:")) {
        auto term = this->term();
        skip_space();
        if (peek() == '*') fail("radial symbols take a single profile; '*' is only for seprad:");
        return SymbolSpec::radial(std::move(term));
      }
      if (accept("seprad:")) {
        std::vector<SymbolTerm> terms{term()};
        while (accept("*")) terms.push_back(term());
        return SymbolSpec::separately_radial(std::move(terms));
      }
      fail("expected 'radial:' or 'seprad:'");
    }();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return spec;
  }

 private:
  SymbolTerm term() {
    skip_space();
    const std::size_t start = pos_;
    std::string name;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      name += text_[pos_++];
    if (name.empty()) fail("expected a profile name");
    if (!accept("(")) fail("expected '(' after " + name);
    std::vector<double> args{number()};
    while (accept(",")) args.push_back(number());
    if (!accept(")")) fail("expected ',' or ')'");

    auto arity = [&](std::size_t expected) {
      if (args.size() != expected)
        throw ParseError(name + " takes " + std::to_string(expected) + " argument(s), got " +
                             std::to_string(args.size()),
                         start);
    };
    if (name == "const") {
      arity(1);
      return SymbolTerm::constant(args[0]);
    }
    if (name == "pow") {
      arity(1);
      return SymbolTerm::power(args[0]);
    }
    if (name == "step") {
      arity(3);
      return SymbolTerm::step(args[0], args[1], args[2]);
    }
    if (name == "poly") return SymbolTerm::polynomial(std::move(args));
    throw ParseError("unknown profile '" + name + "'", start);
  }

  double number() {
    skip_space();
    std::size_t at = pos_;
    if (at < text_.size() && text_[at] == '+') ++at;
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + at, text_.data() + text_.size(), value);
    if (res.ec != std::errc{}) fail("expected a number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return value;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SymbolSpec parse_symbol(std::string_view text) { return Parser(text).symbol(); }

}  // namespace bergman::cli
