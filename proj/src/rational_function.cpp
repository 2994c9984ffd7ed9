#include "mrext/rational_function.hpp"

#include <cmath>

#include <stdexcept>

namespace mrext {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (!num_.vars().same(den_.vars()))
    throw std::invalid_argument("numerator and denominator over different variable tables");
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  canonicalize();
}

RationalFunction RationalFunction::constant(const VarNames& vars, Rational c) {
  return RationalFunction(Polynomial::constant(vars, std::move(c)), Polynomial::constant(vars, 1));
}

RationalFunction RationalFunction::variable(const VarNames& vars, int index) {
  return RationalFunction(Polynomial::variable(vars, index), Polynomial::constant(vars, 1));
}

RationalFunction RationalFunction::from_polynomial(Polynomial p) {
  Polynomial one = Polynomial::constant(p.vars(), 1);
  return RationalFunction(std::move(p), std::move(one));
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.vars(), 1);
    return;
  }
  if (!den_.is_constant()) {
    const Polynomial g = Polynomial::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = Polynomial::exact_divide(num_, g).value();
      den_ = Polynomial::exact_divide(den_, g).value();
    }
  }
  // Denominator becomes primitive integer with positive lead; the scalar folds
  // into the numerator.
  auto [dc, dp] = den_.content_and_primitive();
  num_ = num_.scaled(dc.inverse());
  den_ = std::move(dp);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(vars());
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

// Both operands are kept fully reduced, so sums and products need only the
// small cross gcds (Henrici's algorithms), not a full reduction of the result.
RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    Polynomial t = num_ + o.num_;
    if (t.is_zero()) return RationalFunction(vars());
    if (den_.is_constant()) return RationalFunction(std::move(t), den_, ReducedTag{});
    const Polynomial g2 = Polynomial::gcd(t, den_);
    if (g2.is_constant()) return RationalFunction(std::move(t), den_, ReducedTag{});
    return RationalFunction(Polynomial::exact_divide(t, g2).value(),
                            Polynomial::exact_divide(den_, g2).value(), ReducedTag{});
  }
  const Polynomial g = Polynomial::gcd(den_, o.den_);
  if (g.is_constant()) {
    Polynomial t = num_ * o.den_ + o.num_ * den_;
    if (t.is_zero()) return RationalFunction(vars());
    return RationalFunction(std::move(t), den_ * o.den_, ReducedTag{});
  }
  const Polynomial da = Polynomial::exact_divide(den_, g).value();
  const Polynomial db = Polynomial::exact_divide(o.den_, g).value();
  Polynomial t = num_ * db + o.num_ * da;
  if (t.is_zero()) return RationalFunction(vars());
  // gcd(t, da*db) = 1, so only the common part g can still cancel.
  const Polynomial g2 = Polynomial::gcd(t, g);
  if (g2.is_constant()) return RationalFunction(std::move(t), den_ * db, ReducedTag{});
  return RationalFunction(Polynomial::exact_divide(t, g2).value(),
                          Polynomial::exact_divide(den_ * db, g2).value(), ReducedTag{});
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction(vars());
  if (is_one()) return o;
  if (o.is_one()) return *this;
  if (is_polynomial() && o.is_polynomial())
    return RationalFunction(num_ * o.num_, den_, ReducedTag{});
  // Cross-reduce: gcd(n1 n2, d1 d2) = gcd(n1,d2) gcd(n2,d1) for reduced inputs.
  const Polynomial g1 = Polynomial::gcd(num_, o.den_);
  const Polynomial g2 = Polynomial::gcd(o.num_, den_);
  const Polynomial n1 = g1.is_constant() ? num_ : Polynomial::exact_divide(num_, g1).value();
  const Polynomial d2 = g1.is_constant() ? o.den_ : Polynomial::exact_divide(o.den_, g1).value();
  const Polynomial n2 = g2.is_constant() ? o.num_ : Polynomial::exact_divide(o.num_, g2).value();
  const Polynomial d1 = g2.is_constant() ? den_ : Polynomial::exact_divide(den_, g2).value();
  return RationalFunction(n1 * n2, d1 * d2, ReducedTag{});
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero rational function");
  if (is_zero()) return RationalFunction(vars());
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  *this = *this + o;
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  *this = *this - o;
  return *this;
}

RationalFunction RationalFunction::scaled(const Rational& k) const {
  if (k.is_zero() || is_zero()) return RationalFunction(vars());
  RationalFunction r(vars());
  r.num_ = num_.scaled(k);
  r.den_ = den_;
  return r;
}

RationalFunction RationalFunction::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative rational-function power");
  RationalFunction r = constant(vars(), 1);
  RationalFunction base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

RationalFunction RationalFunction::derivative(int var) const {
  if (var < 0 || var >= vars().size()) throw std::invalid_argument("unknown variable");
  if (is_polynomial()) {
    // Canonical polynomial form has denominator exactly 1.
    RationalFunction r(vars());
    r.num_ = num_.derivative(var);
    r.den_ = den_;
    return r;
  }
  // Quotient rule with the repeated-factor part of the denominator cancelled up
  // front: with g = gcd(d, d_var), f' = (n' d1 - n (d'/g)) / (d d1), d1 = d/g.
  const Polynomial dprime = den_.derivative(var);
  if (dprime.is_zero()) {
    RationalFunction r(vars());
    r.num_ = num_.derivative(var);
    r.den_ = den_;
    return r;
  }
  const Polynomial g = Polynomial::gcd(den_, dprime);
  if (g.is_constant())
    return RationalFunction(num_.derivative(var) * den_ - num_ * dprime, den_ * den_);
  const Polynomial d1 = Polynomial::exact_divide(den_, g).value();
  const Polynomial dg = Polynomial::exact_divide(dprime, g).value();
  return RationalFunction(num_.derivative(var) * d1 - num_ * dg, den_ * d1);
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  const Rational d = den_.evaluate(point);
  if (d.is_zero()) throw PoleError("pole: denominator vanishes at evaluation point");
  return num_.evaluate(point) / d;
}

Rational RationalFunction::evaluate(const std::map<std::string, Rational>& point) const {
  std::vector<Rational> full(static_cast<std::size_t>(vars().size()), Rational(0));
  for (int v = 0; v < vars().size(); ++v) {
    const auto it = point.find(vars()[v]);
    if (it != point.end()) {
      full[static_cast<std::size_t>(v)] = it->second;
    } else if (depends_on(v)) {
      throw std::invalid_argument("missing assignment for variable " + vars()[v]);
    }
  }
  return evaluate(std::span<const Rational>(full));
}

double RationalFunction::evaluate_double(std::span<const double> point) const {
  const double d = den_.evaluate_double(point);
  if (d == 0.0) throw PoleError("pole: denominator vanishes at evaluation point");
  const double q = num_.evaluate_double(point) / d;
  if (!std::isfinite(q)) throw PoleError("pole: evaluation is not finite");
  return q;
}

std::string RationalFunction::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

void RfAccumulator::add_product(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return;
  if (a.is_polynomial() && b.is_polynomial())
    add_raw(a.num_ * b.num_, a.den_);
  else
    add_raw(a.num_ * b.num_, a.den_ * b.den_);
}

void RfAccumulator::sub_product(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return;
  if (a.is_polynomial() && b.is_polynomial())
    add_raw(-(a.num_ * b.num_), a.den_);
  else
    add_raw(-(a.num_ * b.num_), a.den_ * b.den_);
}

void RfAccumulator::add_raw(const Polynomial& n, const Polynomial& d) {
  if (n.is_zero()) return;
  if (den_ == d) {
    num_ = num_ + n;
    return;
  }
  if (den_.is_constant() && den_.constant_value().is_one()) {
    num_ = num_ * d + n;  // num_ may be zero; cheap either way
    den_ = d;
    return;
  }
  if (auto q = Polynomial::exact_divide(den_, d)) {
    num_ = num_ + n * *q;
    return;
  }
  if (auto q = Polynomial::exact_divide(d, den_)) {
    num_ = num_ * *q + n;
    den_ = d;
    return;
  }
  num_ = num_ * d + n * den_;
  den_ = den_ * d;
}

}  // namespace mrext
