#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace mrext {

// Exact rational scalar: arbitrary-precision numerator and positive denominator,
// always in lowest terms.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit from integers is intended
  Rational(long n, long d) : v_(n, d) {
    require_nonzero_den();
    v_.canonicalize();
  }
  explicit Rational(mpz_class n) : v_(std::move(n)) {}
  explicit Rational(mpq_class v) : v_(std::move(v)) {
    require_nonzero_den();
    v_.canonicalize();
  }

  // Parses a plain digit string (no sign).
  static Rational from_digits(const std::string& digits) { return Rational(mpz_class(digits)); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    return Rational(mpq_class(v_ / o.v_));
  }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(mpq_class(1 / v_));
  }

  bool operator==(const Rational& o) const { return v_ == o.v_; }
  bool operator!=(const Rational& o) const { return v_ != o.v_; }
  bool operator<(const Rational& o) const { return v_ < o.v_; }

  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }

  const mpq_class& raw() const { return v_; }

 private:
  void require_nonzero_den() {
    if (sgn(v_.get_den()) == 0) throw std::domain_error("rational with zero denominator");
  }

  mpq_class v_;
};

}  // namespace mrext
