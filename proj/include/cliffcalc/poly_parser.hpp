#pragma once

#include <cctype>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffcalc/multi_index.hpp"
#include "cliffcalc/quantization.hpp"

namespace cliffcalc {

class PolyParseError : public std::runtime_error {
 public:
  PolyParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parser for the plain-text polynomial grammar: terms made of an optional
/// decimal coefficient juxtaposed with powers like `x1^2 x3`, joined by + or
/// -, whitespace-insensitive. With variables = -1 the variable count is
/// inferred from the largest index that appears.
inline ClassicalPolynomial parse_classical_polynomial(const std::string& text,
                                                      int variables = -1) {
  struct Term {
    double coeff = 1.0;
    std::map<int, int> powers;
  };

  std::size_t i = 0;
  const std::size_t size = text.size();
  const auto skip_space = [&] {
    while (i < size && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  const auto parse_digits = [&](const char* kind) {
    if (i >= size || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw PolyParseError(std::string("expected ") + kind, i);
    long value = 0;
    while (i < size && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      if (value > 1000000) throw PolyParseError(std::string(kind) + " is too large", i);
      ++i;
    }
    return static_cast<int>(value);
  };

  std::vector<Term> terms;
  int max_index = 0;
  skip_space();
  if (i == size) throw PolyParseError("empty polynomial", 0);

  bool first = true;
  while (true) {
    skip_space();
    if (i == size) break;
    double sign = 1.0;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1.0 : 1.0;
      ++i;
      skip_space();
    } else if (!first) {
      throw PolyParseError("expected '+' or '-' between terms", i);
    }
    first = false;

    Term term;
    term.coeff = sign;
    bool has_body = false;
    if (i < size && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
      const char* begin = text.c_str() + i;
      char* end = nullptr;
      const double value = std::strtod(begin, &end);
      if (end == begin) throw PolyParseError("malformed number", i);
      term.coeff = sign * value;
      i += static_cast<std::size_t>(end - begin);
      has_body = true;
    }
    while (true) {
      skip_space();
      if (i >= size || (text[i] != 'x' && text[i] != 'X')) break;
      ++i;
      const std::size_t index_pos = i;
      const int index = parse_digits("a variable index after 'x'");
      if (index < 1)
        throw PolyParseError("variable indices start at 1", index_pos);
      if (variables >= 0 && index > variables)
        throw PolyParseError("variable index exceeds the variable count", index_pos);
      int exponent = 1;
      const std::size_t before_caret = i;
      skip_space();
      if (i < size && text[i] == '^') {
        ++i;
        skip_space();
        exponent = parse_digits("an exponent after '^'");
      } else {
        i = before_caret;
      }
      term.powers[index] += exponent;
      max_index = std::max(max_index, index);
      has_body = true;
    }
    if (!has_body) throw PolyParseError("expected a coefficient or a variable", i);
    terms.push_back(std::move(term));
  }

  const int m = variables < 0 ? max_index : variables;
  ClassicalPolynomial p(m);
  for (const Term& term : terms) {
    MultiIndex alpha(static_cast<std::size_t>(m), 0);
    for (const auto& [index, exponent] : term.powers)
      alpha[static_cast<std::size_t>(index - 1)] += exponent;
    p.add_coeff(alpha, term.coeff);
  }
  return p;
}

}  // namespace cliffcalc
