#include "mrext/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mrext {

VarNames::VarNames(std::vector<std::string> names) {
  if (static_cast<int>(names.size()) > kMaxVars)
    throw std::invalid_argument("too many variables (max " + std::to_string(kMaxVars) + ")");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw std::invalid_argument("duplicate variable name " + names[i]);
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

int VarNames::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return static_cast<int>(i);
  return -1;
}

VarNames cotangent_vars(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) v.push_back("p" + std::to_string(i));
  return VarNames(std::move(v));
}

VarNames base_vars(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return VarNames(std::move(v));
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const int s = e[i] + o.e[i];
    if (s > 255) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

Monomial Monomial::gcd_with(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = std::min(e[i], o.e[i]);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < e.size(); ++i) {
    assert(e[i] >= o.e[i]);
    r.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
  }
  return r;
}

namespace {

void check_same_vars(const Polynomial& a, const Polynomial& b) {
  if (!a.vars().same(b.vars())) throw std::invalid_argument("polynomials over different variable tables");
}

void sort_normalize(std::vector<Polynomial::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Polynomial::Term& a, const Polynomial::Term& b) { return graded_lex_less(b.m, a.m); });
  std::vector<Polynomial::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().m == t.m)
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
    if (!out.empty() && out.back().c.is_zero()) out.pop_back();
  }
  terms = std::move(out);
}

}  // namespace

Polynomial Polynomial::constant(const VarNames& vars, Rational c) {
  Polynomial p(vars);
  if (!c.is_zero()) p.terms_.push_back({Monomial{}, std::move(c)});
  return p;
}

Polynomial Polynomial::variable(const VarNames& vars, int index, int power) {
  if (index < 0 || index >= vars.size()) throw std::invalid_argument("variable index out of range");
  if (power < 0) throw std::invalid_argument("negative power");
  if (power > 255) throw std::overflow_error("monomial exponent overflow");
  Polynomial p(vars);
  if (power == 0) return constant(vars, 1);
  Monomial m;
  m.e[static_cast<std::size_t>(index)] = static_cast<std::uint8_t>(power);
  p.terms_.push_back({m, Rational(1)});
  return p;
}

Polynomial Polynomial::from_terms(VarNames vars, std::vector<Term> terms) {
  Polynomial p(std::move(vars));
  sort_normalize(terms);
  p.terms_ = std::move(terms);
  return p;
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
  return terms_[0].c;
}

const Polynomial::Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_[0];
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_[0].m.degree();  // graded order: leading term has maximal degree
}

int Polynomial::degree_in(int var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.m.degree_in(var));
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(vars_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m, -t.c});
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_vars(*this, o);
  Polynomial r(vars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    const auto& a = terms_[i];
    const auto& b = o.terms_[j];
    if (a.m == b.m) {
      Rational c = a.c + b.c;
      if (!c.is_zero()) r.terms_.push_back({a.m, std::move(c)});
      ++i;
      ++j;
    } else if (graded_lex_less(b.m, a.m)) {
      r.terms_.push_back(a);
      ++i;
    } else {
      r.terms_.push_back(b);
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_vars(*this, o);
  Polynomial r(vars_);
  if (terms_.empty() || o.terms_.empty()) return r;
  std::unordered_map<std::uint64_t, Rational> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      const Monomial m = a.m * b.m;
      auto [it, fresh] = acc.try_emplace(m.key(), a.c * b.c);
      if (!fresh) it->second += a.c * b.c;
    }
  r.terms_.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (!c.is_zero()) r.terms_.push_back({Monomial::from_key(k), std::move(c)});
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& a, const Term& b) { return graded_lex_less(b.m, a.m); });
  return r;
}

Polynomial Polynomial::scaled(const Rational& k) const {
  Polynomial r(vars_);
  if (k.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m, t.c * k});
  return r;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial r = constant(vars_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= vars_.size()) throw std::invalid_argument("unknown variable");
  Polynomial r(vars_);
  const auto v = static_cast<std::size_t>(var);
  for (const auto& t : terms_) {
    if (t.m.e[v] == 0) continue;
    Monomial m = t.m;
    const int e = m.e[v];
    m.e[v] = static_cast<std::uint8_t>(e - 1);
    r.terms_.push_back({m, t.c * Rational(e)});
  }
  sort_normalize(r.terms_);  // order is preserved in fact, but keep it canonical
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != vars_.size())
    throw std::invalid_argument("evaluation point arity mismatch");
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational v = t.c;
    for (std::size_t i = 0; i < point.size(); ++i)
      for (int k = 0; k < t.m.e[i]; ++k) v *= point[i];
    sum += v;
  }
  return sum;
}

double Polynomial::evaluate_double(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != vars_.size())
    throw std::invalid_argument("evaluation point arity mismatch");
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.c.to_double();
    for (std::size_t i = 0; i < point.size(); ++i)
      for (int k = 0; k < t.m.e[i]; ++k) v *= point[i];
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::extended(const VarNames& to) const {
  std::array<int, VarNames::kMaxVars> remap{};
  for (int i = 0; i < vars_.size(); ++i) {
    const int j = to.index_of(vars_[i]);
    if (j < 0) throw std::invalid_argument("variable " + vars_[i] + " missing from target table");
    remap[static_cast<std::size_t>(i)] = j;
  }
  Polynomial r(to);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (int i = 0; i < vars_.size(); ++i)
      m.e[static_cast<std::size_t>(remap[static_cast<std::size_t>(i)])] = t.m.e[static_cast<std::size_t>(i)];
    r.terms_.push_back({m, t.c});
  }
  sort_normalize(r.terms_);
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!vars_.same(o.vars_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

std::pair<Rational, Polynomial> Polynomial::content_and_primitive() const {
  if (terms_.empty()) return {Rational(0), Polynomial(vars_)};
  mpz_class num_gcd(0), den_lcm(1);
  for (const auto& t : terms_) {
    mpz_class n = t.c.num();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    mpz_class d = t.c.den();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  Rational content{mpq_class(num_gcd, den_lcm)};
  if (terms_[0].c.sign() < 0) content = -content;
  Polynomial prim = scaled(content.inverse());
  return {content, std::move(prim)};
}

// ---------------------------------------------------------------------------
// Exact division and multivariate gcd (subresultant PRS).
// ---------------------------------------------------------------------------

std::optional<Polynomial> Polynomial::exact_divide(const Polynomial& a, const Polynomial& b) {
  check_same_vars(a, b);
  if (b.is_zero()) return std::nullopt;
  Polynomial q(a.vars());
  Polynomial r = a;
  const Term& bl = b.leading_term();
  while (!r.is_zero()) {
    const Term& rl = r.leading_term();
    if (!bl.m.divides(rl.m)) return std::nullopt;
    Term t{rl.m.divided_by(bl.m), rl.c / bl.c};
    Polynomial tp(a.vars());
    tp.terms_.push_back(t);
    q = q + tp;
    r = r - tp * b;
  }
  return q;
}

namespace {

// Decomposition of p as a univariate polynomial in var with polynomial coefficients.
std::map<int, Polynomial> coeffs_in(const Polynomial& p, int var) {
  std::map<int, Polynomial> out;
  const auto v = static_cast<std::size_t>(var);
  for (const auto& t : p.terms()) {
    const int k = t.m.e[v];
    Monomial m = t.m;
    m.e[v] = 0;
    auto it = out.find(k);
    if (it == out.end()) it = out.emplace(k, Polynomial(p.vars())).first;
    it->second = it->second + Polynomial::from_terms(p.vars(), {{m, t.c}});
  }
  return out;
}

int deg_in(const std::map<int, Polynomial>& coeffs) {
  return coeffs.empty() ? -1 : coeffs.rbegin()->first;
}

Polynomial shift_mul(const Polynomial& p, int var, int by) {
  Polynomial v = Polynomial::variable(p.vars(), var, by);
  return p * v;
}

// Pseudo-remainder of a by b in the given variable: lc(b)^(da-db+1) * a mod b.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, int var) {
  auto ca = coeffs_in(a, var);
  const auto cb = coeffs_in(b, var);
  const int db = deg_in(cb);
  const Polynomial& lcb = cb.rbegin()->second;
  Polynomial r = a;
  int dr = deg_in(ca);
  int steps = dr - db + 1;
  while (dr >= db && !r.is_zero()) {
    auto cr = coeffs_in(r, var);
    dr = deg_in(cr);
    if (dr < db) break;
    const Polynomial& lcr = cr.rbegin()->second;
    // r <- lc(b)*r - lc(r)*v^(dr-db)*b
    r = lcb * r - shift_mul(lcr * b, var, dr - db);
    --steps;
    auto cr2 = coeffs_in(r, var);
    dr = deg_in(cr2);
  }
  // Match the standard prem normalization lc(b)^(da-db+1) * a mod b.
  while (steps > 0) {
    r = lcb * r;
    --steps;
  }
  return r;
}

Polynomial primitive_of(const Polynomial& p) { return p.content_and_primitive().second; }

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

// gcd of the coefficient list of p viewed in var (its content w.r.t. var).
Polynomial content_wrt(const Polynomial& p, int var) {
  Polynomial g(p.vars());
  for (const auto& [k, c] : coeffs_in(p, var)) {
    g = gcd_impl(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

// Both arguments primitive integer polynomials. Result: primitive gcd, positive lead.
Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return primitive_of(b);
  if (b.is_zero()) return primitive_of(a);
  if (a == b) return a;
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.vars(), 1);

  // Monomial fast path.
  if (a.terms().size() == 1 && b.terms().size() == 1) {
    Monomial m = a.terms()[0].m.gcd_with(b.terms()[0].m);
    return Polynomial::from_terms(a.vars(), {{m, Rational(1)}});
  }
  // Cheap divisibility fast paths (common when denominators are powers of one det).
  if (auto q = Polynomial::exact_divide(a, b)) {
    (void)q;
    return primitive_of(b);
  }
  if (auto q = Polynomial::exact_divide(b, a)) {
    (void)q;
    return primitive_of(a);
  }

  // Pick a main variable present in both; if supports are disjoint the gcd is 1.
  int var = -1;
  for (int v = 0; v < a.vars().size(); ++v)
    if (a.degree_in(v) > 0 && b.degree_in(v) > 0) {
      var = v;
      break;
    }
  if (var < 0) return Polynomial::constant(a.vars(), 1);

  const Polynomial ca = content_wrt(a, var);
  const Polynomial cb = content_wrt(b, var);
  const Polynomial cg = gcd_impl(ca, cb);
  Polynomial f = *Polynomial::exact_divide(a, ca);
  Polynomial g = *Polynomial::exact_divide(b, cb);
  if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);

  // Subresultant polynomial remainder sequence.
  Polynomial hcoef = Polynomial::constant(a.vars(), 1);
  Polynomial gcoef = Polynomial::constant(a.vars(), 1);
  Polynomial result(a.vars());
  while (true) {
    const int df = f.degree_in(var);
    const int dg = g.degree_in(var);
    const int delta = df - dg;
    Polynomial rem = pseudo_remainder(f, g, var);
    if (rem.is_zero()) {
      result = g;
      break;
    }
    if (rem.degree_in(var) <= 0) {
      result = Polynomial::constant(a.vars(), 1);
      break;
    }
    Polynomial divisor = gcoef * hcoef.pow(delta);
    f = g;
    g = *Polynomial::exact_divide(rem, divisor);
    gcoef = coeffs_in(f, var).rbegin()->second;
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      hcoef = gcoef;
    } else {
      hcoef = *Polynomial::exact_divide(gcoef.pow(delta), hcoef.pow(delta - 1));
    }
  }
  // Strip the content in var picked up along the PRS.
  if (!result.is_constant()) {
    const Polynomial rc = content_wrt(result, var);
    result = *Polynomial::exact_divide(result, rc);
  }
  result = primitive_of(result);
  Polynomial full = cg * result;
  return primitive_of(full);
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  check_same_vars(a, b);
  if (a.is_zero() && b.is_zero()) return Polynomial(a.vars());
  const Polynomial pa = a.is_zero() ? Polynomial(a.vars()) : primitive_of(a);
  const Polynomial pb = b.is_zero() ? Polynomial(b.vars()) : primitive_of(b);
  Polynomial g = gcd_impl(pa, pb);
  assert(g.is_zero() || (Polynomial::exact_divide(pa, g) && Polynomial::exact_divide(pb, g)));
  return g;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = t.c.sign() < 0;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    const Rational mag = t.c.abs();
    std::string mono;
    for (int v = 0; v < vars_.size(); ++v) {
      const int e = t.m.e[static_cast<std::size_t>(v)];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[v];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      os << mag.str();
    else if (mag.is_one())
      os << mono;
    else
      os << mag.str() << "*" << mono;
  }
  return os.str();
}

}  // namespace mrext
