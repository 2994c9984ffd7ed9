#include "mrext/basegeo.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>

namespace mrext {

namespace {

void expect_valence(const TensorField& t, const Valence& v, const char* what) {
  if (t.valence() != v) throw std::invalid_argument(std::string(what) + ": wrong valence");
}

void expect_base_field(const TensorField& t, int n, const char* what) {
  if (t.dim() != n) throw std::invalid_argument(std::string(what) + ": wrong dimension");
  if (t.frame() != Frame::BaseNatural)
    throw std::invalid_argument(std::string(what) + ": expected the base natural frame");
  for (std::size_t i = 0; i < t.component_count(); ++i)
    for (int v = n; v < 2 * n; ++v)
      if (t.flat(i).depends_on(v))
        throw std::invalid_argument(std::string(what) + ": base field depends on fiber variable " +
                                    t.vars()[v]);
}

}  // namespace

BaseGeometry::BaseGeometry(int n, VarNames vars, TensorField gamma, TensorField c,
                           std::optional<TensorField> metric, std::optional<TensorField> j)
    : n_(n),
      vars_(std::move(vars)),
      gamma_(std::move(gamma)),
      c_(std::move(c)),
      metric_(std::move(metric)),
      j_(std::move(j)) {
  validate();
}

BaseGeometry BaseGeometry::with_connection(int n, TensorField gamma, TensorField c,
                                           std::optional<TensorField> metric,
                                           std::optional<TensorField> j) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  VarNames vars = gamma.vars();
  return BaseGeometry(n, std::move(vars), std::move(gamma), std::move(c), std::move(metric),
                      std::move(j));
}

BaseGeometry BaseGeometry::from_metric(int n, TensorField metric, TensorField c,
                                       std::optional<TensorField> j) {
  TensorField gamma = levi_civita_base(n, metric);
  return with_connection(n, std::move(gamma), std::move(c), std::move(metric), std::move(j));
}

void BaseGeometry::validate() const {
  if (vars_.size() != 2 * n_)
    throw std::invalid_argument("variable table must hold x1..xn,p1..pn");
  expect_valence(gamma_, Valence{Variance::Up, Variance::Down, Variance::Down}, "gamma");
  expect_base_field(gamma_, n_, "gamma");
  if (!is_symmetric_in(gamma_, 1, 2))
    throw std::invalid_argument("connection coefficients must be symmetric in the lower indices");
  expect_valence(c_, Valence{Variance::Down, Variance::Down}, "c");
  expect_base_field(c_, n_, "c");
  if (!is_symmetric_in(c_, 0, 1)) throw std::invalid_argument("c must be symmetric");
  if (metric_) {
    expect_valence(*metric_, Valence{Variance::Down, Variance::Down}, "metric");
    expect_base_field(*metric_, n_, "metric");
    if (!is_symmetric_in(*metric_, 0, 1)) throw std::invalid_argument("metric must be symmetric");
  }
  if (j_) {
    expect_valence(*j_, Valence{Variance::Up, Variance::Down}, "J");
    expect_base_field(*j_, n_, "J");
    // J^2 = -id, exactly.
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        RationalFunction s(vars_);
        for (int m = 0; m < n_; ++m) s += j_->at({i, m}) * j_->at({m, k});
        const RationalFunction want =
            i == k ? RationalFunction::constant(vars_, -1) : RationalFunction(vars_);
        if (s != want)
          throw std::invalid_argument("J^2 = -I fails at component (" + std::to_string(i + 1) +
                                      "," + std::to_string(k + 1) + "): " + s.str());
      }
  }
}

RationalFunction BaseGeometry::vertical_leg(int h, int i) const {
  RationalFunction b(vars_);
  for (int a = 0; a < n_; ++a)
    b += RationalFunction::variable(vars_, n_ + a) * gamma_.at({a, h, i});
  return b;
}

// ---------------------------------------------------------------------------
// Determinant / inverse
// ---------------------------------------------------------------------------

namespace {

// Laplace expansion with memoization on (row set, column set).
class MinorTable {
 public:
  explicit MinorTable(const TensorField& g) : g_(g), dim_(g.dim()) {}

  RationalFunction det(unsigned rows, unsigned cols) {
    const auto key = (static_cast<std::uint64_t>(rows) << 32) | cols;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    RationalFunction result(g_.vars());
    const int r = first_bit(rows);
    if (r < 0) {
      result = RationalFunction::constant(g_.vars(), 1);  // empty minor
    } else {
      RfAccumulator acc(g_.vars());
      int sign = 1;
      for (int c = 0; c < dim_; ++c) {
        if (!(cols & (1u << c))) continue;
        const RationalFunction& e = g_.at({r, c});
        if (!e.is_zero()) {
          const RationalFunction sub = det(rows & ~(1u << r), cols & ~(1u << c));
          if (sign > 0)
            acc.add_product(e, sub);
          else
            acc.sub_product(e, sub);
        }
        sign = -sign;
      }
      result = acc.take();
    }
    memo_.emplace(key, result);
    return result;
  }

  int dim() const { return dim_; }

 private:
  static int first_bit(unsigned bits) {
    for (int i = 0; i < 32; ++i)
      if (bits & (1u << i)) return i;
    return -1;
  }

  const TensorField& g_;
  int dim_;
  std::unordered_map<std::uint64_t, RationalFunction> memo_;
};

}  // namespace

RationalFunction tensor_determinant(const TensorField& g) {
  if (g.rank() != 2) throw std::invalid_argument("determinant needs a rank-2 field");
  MinorTable mt(g);
  const unsigned full = (1u << g.dim()) - 1u;
  return mt.det(full, full);
}

TensorField metric_inverse(const TensorField& g) {
  expect_valence(g, Valence{Variance::Down, Variance::Down}, "metric_inverse");
  MinorTable mt(g);
  const int dim = g.dim();
  const unsigned full = (1u << dim) - 1u;
  const RationalFunction det = mt.det(full, full);
  if (det.is_zero()) throw std::domain_error("singular metric: determinant is identically zero");
  TensorField inv(dim, Valence{Variance::Up, Variance::Up}, g.frame(), g.vars());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      // inv^ij = cofactor_ji / det = (-1)^(i+j) minor(j,i) / det.
      RationalFunction m = mt.det(full & ~(1u << j), full & ~(1u << i));
      if ((i + j) % 2 != 0) m = -m;
      inv.set({i, j}, m / det);
    }
  return inv;
}

// ---------------------------------------------------------------------------
// Connection, curvature, covariant derivative
// ---------------------------------------------------------------------------

TensorField levi_civita_base(int n, const TensorField& metric) {
  expect_valence(metric, Valence{Variance::Down, Variance::Down}, "levi_civita_base");
  if (!is_symmetric_in(metric, 0, 1)) throw std::invalid_argument("metric must be symmetric");
  const TensorField inv = metric_inverse(metric);
  TensorField gamma(n, Valence{Variance::Up, Variance::Down, Variance::Down}, Frame::BaseNatural,
                    metric.vars());
  std::vector<TensorField> dg;
  dg.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) dg.push_back(partial_derivative(metric, k));
  const Rational half(1, 2);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        RfAccumulator acc(metric.vars());
        for (int m = 0; m < n; ++m) {
          const RationalFunction& ghm = inv.at({h, m});
          if (ghm.is_zero()) continue;
          acc.add_product(ghm, dg[static_cast<std::size_t>(i)].at({m, j}));
          acc.add_product(ghm, dg[static_cast<std::size_t>(j)].at({m, i}));
          acc.sub_product(ghm, dg[static_cast<std::size_t>(m)].at({i, j}));
        }
        RationalFunction v = acc.take().scaled(half);
        gamma.set({h, i, j}, v);
        if (i != j) gamma.set({h, j, i}, std::move(v));
      }
  return gamma;
}

TensorField coordinate_curvature(const TensorField& gamma) {
  const int dim = gamma.dim();
  TensorField r(dim, Valence{Variance::Down, Variance::Down, Variance::Down, Variance::Up},
                gamma.frame(), gamma.vars());
  std::vector<TensorField> dgamma;
  dgamma.reserve(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) dgamma.push_back(partial_derivative(gamma, k));
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int h = 0; h < dim; ++h) {
          RfAccumulator acc(gamma.vars());
          acc.add(dgamma[static_cast<std::size_t>(i)].at({h, j, k}));
          acc.sub(dgamma[static_cast<std::size_t>(j)].at({h, i, k}));
          for (int m = 0; m < dim; ++m) {
            acc.add_product(gamma.at({h, i, m}), gamma.at({m, j, k}));
            acc.sub_product(gamma.at({h, j, m}), gamma.at({m, i, k}));
          }
          RationalFunction v = acc.take();
          r.set({j, i, k, h}, -v);
          r.set({i, j, k, h}, std::move(v));
        }
  return r;
}

TensorField curvature_base(const BaseGeometry& geom) { return coordinate_curvature(geom.gamma()); }

TensorField covariant_derivative(const BaseGeometry& geom, const TensorField& t) {
  if (t.frame() != Frame::BaseNatural)
    throw std::invalid_argument("covariant_derivative expects a base natural-frame tensor");
  const int n = geom.n();
  Valence out_val;
  out_val.push_back(Variance::Down);
  for (auto v : t.valence()) out_val.push_back(v);
  TensorField out(n, out_val, Frame::BaseNatural, t.vars());
  const TensorField& gamma = geom.gamma();
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  std::vector<int> oidx(static_cast<std::size_t>(t.rank()) + 1);
  std::vector<int> midx(static_cast<std::size_t>(t.rank()));
  for (int l = 0; l < n; ++l) {
    const TensorField dt = partial_derivative(t, l);
    for (std::size_t f = 0; f < t.component_count(); ++f) {
      t.unflatten(f, idx);
      oidx[0] = l;
      for (int s = 0; s < t.rank(); ++s) oidx[static_cast<std::size_t>(s) + 1] = idx[static_cast<std::size_t>(s)];
      RfAccumulator acc(t.vars());
      acc.add(dt.flat(f));
      for (int s = 0; s < t.rank(); ++s) {
        const int is = idx[static_cast<std::size_t>(s)];
        midx = idx;
        if (t.valence()[static_cast<std::size_t>(s)] == Variance::Up) {
          for (int m = 0; m < n; ++m) {
            const RationalFunction& gcoef = gamma.at({is, l, m});
            if (gcoef.is_zero()) continue;
            midx[static_cast<std::size_t>(s)] = m;
            acc.add_product(gcoef, t.at(midx));
          }
        } else {
          for (int m = 0; m < n; ++m) {
            const RationalFunction& gcoef = gamma.at({m, l, is});
            if (gcoef.is_zero()) continue;
            midx[static_cast<std::size_t>(s)] = m;
            acc.sub_product(gcoef, t.at(midx));
          }
        }
      }
      out.set(oidx, acc.take());
    }
  }
  return out;
}

TensorField ricci_from_curvature(const TensorField& curvature) {
  return self_trace(curvature, 0, 3);
}

// ---------------------------------------------------------------------------
// Lie machinery and the Tachibana operator
// ---------------------------------------------------------------------------

RationalFunction directional_derivative(const RationalFunction& f, const TensorField& v) {
  RationalFunction out(f.vars());
  for (int m = 0; m < v.dim(); ++m) {
    const RationalFunction& vm = v.at({m});
    if (vm.is_zero()) continue;
    out += vm * f.derivative(m);
  }
  return out;
}

TensorField lie_bracket(const TensorField& x, const TensorField& y) {
  TensorField out(x.dim(), valence_up(), x.frame(), x.vars());
  for (int a = 0; a < x.dim(); ++a) {
    RationalFunction v = directional_derivative(y.at({a}), x) - directional_derivative(x.at({a}), y);
    out.set({a}, std::move(v));
  }
  return out;
}

TensorField lie_derivative_endomorphism(const TensorField& y, const TensorField& j) {
  const int dim = j.dim();
  TensorField out(dim, Valence{Variance::Up, Variance::Down}, j.frame(), j.vars());
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      RationalFunction v = directional_derivative(j.at({a, b}), y);
      for (int m = 0; m < dim; ++m) {
        v -= j.at({m, b}) * y.at({a}).derivative(m);
        v += j.at({a, m}) * y.at({m}).derivative(b);
      }
      out.set({a, b}, std::move(v));
    }
  return out;
}

TensorField tachibana_coordinate(const TensorField& j, const TensorField& s) {
  const int dim = j.dim();
  TensorField out(dim, Valence{Variance::Down, Variance::Down, Variance::Down}, j.frame(), j.vars());
  std::vector<TensorField> ds, dj;
  for (int m = 0; m < dim; ++m) {
    ds.push_back(partial_derivative(s, m));
    dj.push_back(partial_derivative(j, m));
  }
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int jj = 0; jj < dim; ++jj) {
        RationalFunction v(j.vars());
        for (int m = 0; m < dim; ++m) {
          v += j.at({m, k}) * ds[static_cast<std::size_t>(m)].at({i, jj});
          v -= dj[static_cast<std::size_t>(k)].at({m, i}) * s.at({m, jj});
          v -= j.at({m, i}) * ds[static_cast<std::size_t>(k)].at({m, jj});
          v += dj[static_cast<std::size_t>(i)].at({m, k}) * s.at({m, jj});
          v += dj[static_cast<std::size_t>(jj)].at({m, k}) * s.at({i, m});
        }
        out.set({k, i, jj}, std::move(v));
      }
  return out;
}

TensorField tachibana(const BaseGeometry& geom, const TensorField& s) {
  if (!geom.j()) throw std::invalid_argument("tachibana requires an almost complex structure");
  if (s.frame() != Frame::BaseNatural)
    throw std::invalid_argument("tachibana expects a base natural-frame tensor");
  return tachibana_coordinate(*geom.j(), s);
}

RationalFunction tachibana_definitional(const TensorField& j, const TensorField& s,
                                        const TensorField& x, const TensorField& y,
                                        const TensorField& z) {
  const int dim = j.dim();
  const VarNames& vars = j.vars();
  auto apply_j = [&](const TensorField& v) {
    TensorField out(dim, valence_up(), v.frame(), vars);
    for (int a = 0; a < dim; ++a) {
      RationalFunction acc(vars);
      for (int b = 0; b < dim; ++b) acc += j.at({a, b}) * v.at({b});
      out.set({a}, std::move(acc));
    }
    return out;
  };
  auto s_of = [&](const TensorField& u, const TensorField& v) {
    RationalFunction acc(vars);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) acc += s.at({a, b}) * u.at({a}) * v.at({b});
    return acc;
  };
  const TensorField jx = apply_j(x);
  const TensorField jy = apply_j(y);
  const TensorField ly_j = lie_derivative_endomorphism(y, j);
  const TensorField lz_j = lie_derivative_endomorphism(z, j);
  auto endo_on = [&](const TensorField& endo, const TensorField& v) {
    TensorField out(dim, valence_up(), v.frame(), vars);
    for (int a = 0; a < dim; ++a) {
      RationalFunction acc(vars);
      for (int b = 0; b < dim; ++b) acc += endo.at({a, b}) * v.at({b});
      out.set({a}, std::move(acc));
    }
    return out;
  };
  return directional_derivative(s_of(y, z), jx) - directional_derivative(s_of(jy, z), x) +
         s_of(endo_on(ly_j, x), z) + s_of(y, endo_on(lz_j, x));
}

TensorField associated_vector(const BaseGeometry& geom, const TensorField& omega) {
  if (!geom.metric()) throw std::invalid_argument("associated vector requires a metric");
  if (omega.valence() != Valence{Variance::Down} || omega.dim() != geom.n())
    throw std::invalid_argument("associated vector expects a base 1-form");
  const TensorField inv = metric_inverse(*geom.metric());
  return contract(inv, omega, {{1, 0}});
}

PurityReport purity_and_holomorphy_check(const BaseGeometry& geom, const TensorField& s) {
  if (!geom.j()) throw std::invalid_argument("purity check requires J");
  const TensorField& j = *geom.j();
  const int n = geom.n();
  PurityReport rep;
  rep.pure = true;
  for (int i = 0; i < n && rep.pure; ++i)
    for (int k = 0; k < n && rep.pure; ++k) {
      RationalFunction lhs(geom.vars()), rhs(geom.vars());
      for (int m = 0; m < n; ++m) {
        lhs += s.at({m, k}) * j.at({m, i});
        rhs += s.at({i, m}) * j.at({m, k});
      }
      if (lhs != rhs) rep.pure = false;
    }
  rep.holomorphic = rep.pure && tachibana(geom, s).is_zero();
  return rep;
}

}  // namespace mrext
