#include "mrext/parser.hpp"

#include <cctype>

namespace mrext {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarNames& vars) : text_(text), vars_(vars) {}

  RationalFunction run() {
    RationalFunction v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "unexpected trailing input");
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  RationalFunction expr() {
    RationalFunction v = term();
    while (true) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  RationalFunction term() {
    RationalFunction v = unary();
    while (true) {
      if (eat('*')) {
        v = v * unary();
      } else if (peek() == '/') {
        const std::size_t at = pos_;
        ++pos_;
        RationalFunction d = unary();
        if (d.is_zero()) throw ParseError(at, "division by zero expression");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  RationalFunction unary() {
    if (eat('-')) return -unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (peek() == '^') {
      const std::size_t at = pos_;
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError(at, "'^' requires a nonnegative integer literal exponent");
      const std::string digits = read_digits();
      if (digits.size() > 3) throw ParseError(at, "exponent too large");
      const int e = std::stoi(digits);
      if (e > 255) throw ParseError(at, "exponent too large");
      base = base.pow(e);
    }
    return base;
  }

  RationalFunction primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction v = expr();
      if (!eat(')')) throw ParseError(pos_, "expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::string digits = read_digits();
      if (pos_ < text_.size() && text_[pos_] == '.')
        throw ParseError(pos_, "decimal literals are not part of the grammar");
      return RationalFunction::constant(vars_, Rational::from_digits(digits));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t at = pos_;
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name += text_[pos_++];
      const int idx = vars_.index_of(name);
      if (idx < 0) throw ParseError(at, "unknown identifier '" + name + "'");
      return RationalFunction::variable(vars_, idx);
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string read_digits() {
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) s += text_[pos_++];
    return s;
  }

  std::string_view text_;
  const VarNames& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_field(std::string_view text, const VarNames& variables) {
  return Parser(text, variables).run();
}

}  // namespace mrext
