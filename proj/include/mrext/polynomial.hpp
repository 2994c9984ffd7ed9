#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrext/rational.hpp"

namespace mrext {

// Ordered list of variable names shared by all expressions of one computation.
// Cheap to copy; content-compared.
class VarNames {
 public:
  static constexpr int kMaxVars = 8;

  VarNames() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit VarNames(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_->size()); }
  const std::string& operator[](int i) const { return (*names_)[static_cast<std::size_t>(i)]; }
  // -1 if the name is not present.
  int index_of(std::string_view name) const;
  bool same(const VarNames& o) const { return names_ == o.names_ || *names_ == *o.names_; }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

// Coordinate names x1..xn, p1..pn of an n-dimensional base and its cotangent fibers.
VarNames cotangent_vars(int n);
// Base-only names x1..xn.
VarNames base_vars(int n);

// Exponent vector, one byte per variable. Trailing entries stay zero.
struct Monomial {
  std::array<std::uint8_t, VarNames::kMaxVars> e{};

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  int degree_in(int var) const { return e[static_cast<std::size_t>(var)]; }
  bool is_constant() const { return key() == 0; }
  std::uint64_t key() const { return std::bit_cast<std::uint64_t>(e); }
  static Monomial from_key(std::uint64_t k) {
    Monomial m;
    m.e = std::bit_cast<std::array<std::uint8_t, VarNames::kMaxVars>>(k);
    return m;
  }

  // Throws on per-variable exponent overflow (cap 255).
  Monomial operator*(const Monomial& o) const;
  // Componentwise min; used for monomial gcd.
  Monomial gcd_with(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // Requires divides(o) in the caller's sense: this / o.
  Monomial divided_by(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return e == o.e; }
};

// Graded lexicographic order: total degree first, then lexicographic with the
// earliest variable most significant.
inline bool graded_lex_less(const Monomial& a, const Monomial& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.e < b.e;
}

// Multivariate polynomial with exact rational coefficients.
// Terms are kept in descending graded-lex order with no zero coefficients.
class Polynomial {
 public:
  struct Term {
    Monomial m;
    Rational c;
  };

  explicit Polynomial(VarNames vars) : vars_(std::move(vars)) {}
  static Polynomial constant(const VarNames& vars, Rational c);
  static Polynomial variable(const VarNames& vars, int index, int power = 1);
  static Polynomial from_terms(VarNames vars, std::vector<Term> terms);  // normalizes

  const VarNames& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_constant()); }
  // Requires is_constant().
  Rational constant_value() const;
  const Term& leading_term() const;  // requires nonzero
  int total_degree() const;          // -1 for the zero polynomial
  int degree_in(int var) const;      // -1 for the zero polynomial
  bool depends_on(int var) const { return degree_in(var) > 0; }

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& k) const;
  Polynomial pow(int k) const;  // k >= 0
  Polynomial derivative(int var) const;

  // point covers every variable of the table, in order.
  Rational evaluate(std::span<const Rational> point) const;
  double evaluate_double(std::span<const double> point) const;

  // Remaps this polynomial onto a larger variable table (matched by name).
  Polynomial extended(const VarNames& to) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  // P == content * primitive, primitive with coprime integer coefficients and a
  // positive leading coefficient. Zero yields (0, zero).
  std::pair<Rational, Polynomial> content_and_primitive() const;

  // Quotient if b divides a exactly (over Q), nullopt otherwise.
  static std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b);
  // Primitive integer gcd with positive leading coefficient; gcd(0,0) = 0.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);

  // Rendering in the expression grammar (parseable back).
  std::string str() const;

 private:
  friend class RationalFunction;

  VarNames vars_;
  std::vector<Term> terms_;
};

}  // namespace mrext
