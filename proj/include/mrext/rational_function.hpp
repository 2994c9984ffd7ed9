#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>

#include "mrext/polynomial.hpp"

namespace mrext {

// Raised when an evaluation point hits a vanishing denominator.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Quotient of polynomials in canonical form: numerator and denominator coprime
// (full multivariate gcd cancellation), denominator a primitive integer polynomial
// with positive leading coefficient. Zero is 0/1.
class RationalFunction {
 public:
  explicit RationalFunction(VarNames vars)
      : num_(Polynomial(vars)), den_(Polynomial::constant(vars, 1)) {}
  RationalFunction(Polynomial num, Polynomial den);  // canonicalizes; den must be nonzero

  static RationalFunction constant(const VarNames& vars, Rational c);
  static RationalFunction variable(const VarNames& vars, int index);
  static RationalFunction from_polynomial(Polynomial p);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const VarNames& vars() const { return num_.vars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_value().is_one(); }
  bool depends_on(int var) const { return num_.depends_on(var) || den_.depends_on(var); }

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;  // throws on zero divisor
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction scaled(const Rational& k) const;
  RationalFunction pow(int k) const;  // k >= 0

  RationalFunction derivative(int var) const;

  // Exact evaluation; point covers the whole variable table.
  Rational evaluate(std::span<const Rational> point) const;
  // Named-point evaluation; every variable this function depends on must be assigned.
  Rational evaluate(const std::map<std::string, Rational>& point) const;
  double evaluate_double(std::span<const double> point) const;

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  std::string str() const;

  friend class RfAccumulator;

 private:
  struct ReducedTag {};
  // Trusted constructor: num/den already coprime, den primitive with positive lead.
  RationalFunction(Polynomial num, Polynomial den, ReducedTag)
      : num_(std::move(num)), den_(std::move(den)) {}

  void canonicalize();

  Polynomial num_;
  Polynomial den_;
};

// Accumulator for long sums of rational functions: keeps an unreduced num/den
// pair with denominator-divisibility fast paths and reduces once on take().
// Cuts the per-addition gcd cost out of contraction-style inner loops.
class RfAccumulator {
 public:
  explicit RfAccumulator(const VarNames& vars)
      : num_(Polynomial(vars)), den_(Polynomial::constant(vars, 1)) {}

  void add(const RationalFunction& f) { add_raw(f.num_, f.den_); }
  void sub(const RationalFunction& f) { add_raw(-f.num_, f.den_); }
  // += a*b and -= a*b without reducing the intermediate product.
  void add_product(const RationalFunction& a, const RationalFunction& b);
  void sub_product(const RationalFunction& a, const RationalFunction& b);

  RationalFunction take() { return RationalFunction(std::move(num_), std::move(den_)); }

 private:
  void add_raw(const Polynomial& n, const Polynomial& d);

  Polynomial num_;
  Polynomial den_;
};

}  // namespace mrext
