#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mrext/rational_function.hpp"

namespace mrext {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& what)
      : std::runtime_error("syntax error at position " + std::to_string(pos) + ": " + what),
        pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

// Parses a component expression over the given variables into canonical form.
// Grammar: identifiers from the table, nonnegative integer literals, + - * / ^,
// unary minus, parentheses; ^ takes a nonnegative integer literal exponent;
// whitespace is insignificant.
RationalFunction parse_field(std::string_view text, const VarNames& variables);

}  // namespace mrext
