#pragma once

#include <random>
#include <string>
#include <vector>

#include "mrext/manifold_spec.hpp"
#include "mrext/parser.hpp"

namespace testutil {

using namespace mrext;

// Parses an expression over x1..xn,p1..pn.
inline RationalFunction rf(int n, const std::string& text) {
  return parse_field(text, cotangent_vars(n));
}

inline RationalFunction rf(const BaseGeometry& geom, const std::string& text) {
  return parse_field(text, geom.vars());
}

struct GammaEntry {
  int h, i, j;  // 1-based
  std::string expr;
};
struct PairEntry {
  int i, j;  // 1-based
  std::string expr;
};

inline TensorField make_gamma(int n, const std::vector<GammaEntry>& entries) {
  const VarNames vars = cotangent_vars(n);
  TensorField g(n, Valence{Variance::Up, Variance::Down, Variance::Down}, Frame::BaseNatural, vars);
  for (const auto& e : entries) {
    RationalFunction f = parse_field(e.expr, vars);
    g.set({e.h - 1, e.i - 1, e.j - 1}, f);
    g.set({e.h - 1, e.j - 1, e.i - 1}, std::move(f));
  }
  return g;
}

inline TensorField make_sym2(int n, const std::vector<PairEntry>& entries,
                             Variance kind = Variance::Down) {
  const VarNames vars = cotangent_vars(n);
  TensorField t(n, Valence{kind, kind}, Frame::BaseNatural, vars);
  for (const auto& e : entries) {
    RationalFunction f = parse_field(e.expr, vars);
    t.set({e.i - 1, e.j - 1}, f);
    t.set({e.j - 1, e.i - 1}, std::move(f));
  }
  return t;
}

inline TensorField make_11(int n, const std::vector<PairEntry>& entries) {
  const VarNames vars = cotangent_vars(n);
  TensorField t(n, Valence{Variance::Up, Variance::Down}, Frame::BaseNatural, vars);
  for (const auto& e : entries) t.set({e.i - 1, e.j - 1}, parse_field(e.expr, vars));
  return t;
}

inline BaseGeometry geometry(int n, const std::vector<GammaEntry>& gamma,
                             const std::vector<PairEntry>& c = {}) {
  return BaseGeometry::with_connection(n, make_gamma(n, gamma), make_sym2(n, c));
}

// The locally symmetric (but curved) workhorse: n=2, Gamma^1_22 = x1.
inline BaseGeometry curved_symmetric(const std::vector<PairEntry>& c = {}) {
  return geometry(2, {{1, 2, 2, "x1"}}, c);
}

// Randomized geometry: sparse polynomial connection and deformation tensor of
// degree <= 2 with coefficients in {-2..2}.
struct RandomSpec {
  int n = 2;
  unsigned long seed = 0;
  bool from_metric = false;  // derive the connection from a random metric instead
};

inline BaseGeometry random_geometry(const RandomSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const int n = spec.n;
  const VarNames vars = cotangent_vars(n);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> var_pick(0, n - 1);
  std::uniform_int_distribution<int> deg_pick(0, 2);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  auto random_poly = [&](double keep_prob) {
    Polynomial p(vars);
    if (u(rng) > keep_prob) return RationalFunction::from_polynomial(p);
    const int terms = 1 + (u(rng) < 0.35 ? 1 : 0);
    for (int t = 0; t < terms; ++t) {
      int c = coef(rng);
      if (c == 0) c = 1;
      Polynomial mono = Polynomial::constant(vars, c);
      const int d = deg_pick(rng);
      for (int k = 0; k < d; ++k) mono = mono * Polynomial::variable(vars, var_pick(rng));
      p = p + mono;
    }
    return RationalFunction::from_polynomial(p);
  };

  TensorField c(n, Valence{Variance::Down, Variance::Down}, Frame::BaseNatural, vars);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      RationalFunction f = random_poly(0.5);
      c.set({i, j}, f);
      c.set({j, i}, std::move(f));
    }

  if (spec.from_metric) {
    // Diagonal metric 1 + (small square) keeps the determinant nonzero.
    TensorField g(n, Valence{Variance::Down, Variance::Down}, Frame::BaseNatural, vars);
    for (int i = 0; i < n; ++i) {
      Polynomial e = Polynomial::constant(vars, 1);
      const int v = var_pick(rng);
      if (u(rng) < 0.8) e = e + Polynomial::variable(vars, v) * Polynomial::variable(vars, v);
      g.set({i, i}, RationalFunction::from_polynomial(e));
    }
    return BaseGeometry::from_metric(n, std::move(g), std::move(c));
  }

  TensorField gamma(n, Valence{Variance::Up, Variance::Down, Variance::Down}, Frame::BaseNatural,
                    vars);
  const double keep = spec.n == 2 ? 0.55 : 0.3;
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        RationalFunction f = random_poly(keep);
        gamma.set({h, i, j}, f);
        gamma.set({h, j, i}, std::move(f));
      }
  return BaseGeometry::with_connection(n, std::move(gamma), std::move(c));
}

}  // namespace testutil
