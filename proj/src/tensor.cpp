#include "mrext/tensor.hpp"

#include <cmath>
#include <stdexcept>

#include "mrext/basegeo.hpp"

namespace mrext {

namespace {

std::size_t pow_size(int dim, int rank) {
  std::size_t s = 1;
  for (int i = 0; i < rank; ++i) s *= static_cast<std::size_t>(dim);
  return s;
}

void check_compatible(const TensorField& a, const TensorField& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("tensor dimension mismatch");
  if (a.frame() != b.frame()) throw std::invalid_argument("tensor frame mismatch");
  if (!a.vars().same(b.vars())) throw std::invalid_argument("tensor variable-table mismatch");
}

}  // namespace

TensorField::TensorField(int dim, Valence valence, Frame frame, VarNames vars)
    : dim_(dim),
      valence_(std::move(valence)),
      frame_(frame),
      vars_(std::move(vars)),
      comps_(pow_size(dim, static_cast<int>(valence_.size())), RationalFunction(vars_)) {
  if (dim <= 0) throw std::invalid_argument("tensor dimension must be positive");
}

TensorField TensorField::scalar(int dim, Frame frame, RationalFunction f) {
  TensorField t(dim, Valence{}, frame, f.vars());
  t.comps_[0] = std::move(f);
  return t;
}

TensorField TensorField::kronecker(int dim, Frame frame, const VarNames& vars) {
  TensorField t(dim, Valence{Variance::Up, Variance::Down}, frame, vars);
  for (int i = 0; i < dim; ++i) t.set({i, i}, RationalFunction::constant(vars, 1));
  return t;
}

std::size_t TensorField::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank()) throw std::invalid_argument("index arity mismatch");
  std::size_t off = 0;
  for (int k = 0; k < rank(); ++k) {
    const int i = idx[static_cast<std::size_t>(k)];
    if (i < 0 || i >= dim_) throw std::out_of_range("tensor index out of range");
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

void TensorField::unflatten(std::size_t off, std::span<int> idx) const {
  for (int k = rank() - 1; k >= 0; --k) {
    idx[static_cast<std::size_t>(k)] = static_cast<int>(off % static_cast<std::size_t>(dim_));
    off /= static_cast<std::size_t>(dim_);
  }
}

bool TensorField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

bool TensorField::operator==(const TensorField& o) const {
  if (dim_ != o.dim_ || valence_ != o.valence_ || frame_ != o.frame_) return false;
  for (std::size_t i = 0; i < comps_.size(); ++i)
    if (comps_[i] != o.comps_[i]) return false;
  return true;
}

TensorField tensor_add(const TensorField& a, const TensorField& b) {
  check_compatible(a, b);
  if (a.valence() != b.valence()) throw std::invalid_argument("tensor valence mismatch");
  TensorField r = a;
  for (std::size_t i = 0; i < r.component_count(); ++i) {
    std::vector<int> idx(static_cast<std::size_t>(r.rank()));
    r.unflatten(i, idx);
    r.set(idx, a.flat(i) + b.flat(i));
  }
  return r;
}

TensorField tensor_sub(const TensorField& a, const TensorField& b) { return tensor_add(a, tensor_negate(b)); }

TensorField tensor_negate(const TensorField& a) {
  TensorField r = a;
  std::vector<int> idx(static_cast<std::size_t>(r.rank()));
  for (std::size_t i = 0; i < r.component_count(); ++i) {
    r.unflatten(i, idx);
    r.set(idx, -a.flat(i));
  }
  return r;
}

TensorField tensor_scale(const TensorField& a, const RationalFunction& k) {
  TensorField r = a;
  std::vector<int> idx(static_cast<std::size_t>(r.rank()));
  for (std::size_t i = 0; i < r.component_count(); ++i) {
    r.unflatten(i, idx);
    r.set(idx, a.flat(i) * k);
  }
  return r;
}

TensorField contract(const TensorField& a, const TensorField& b,
                     const std::vector<std::pair<int, int>>& pairs) {
  check_compatible(a, b);
  std::vector<bool> a_bound(static_cast<std::size_t>(a.rank()), false);
  std::vector<bool> b_bound(static_cast<std::size_t>(b.rank()), false);
  for (const auto& [sa, sb] : pairs) {
    if (sa < 0 || sa >= a.rank() || sb < 0 || sb >= b.rank())
      throw std::invalid_argument("contraction slot out of range");
    if (a_bound[static_cast<std::size_t>(sa)] || b_bound[static_cast<std::size_t>(sb)])
      throw std::invalid_argument("slot contracted twice");
    if (a.valence()[static_cast<std::size_t>(sa)] == b.valence()[static_cast<std::size_t>(sb)])
      throw std::invalid_argument("contraction requires one up and one down slot");
    a_bound[static_cast<std::size_t>(sa)] = true;
    b_bound[static_cast<std::size_t>(sb)] = true;
  }
  Valence out_val;
  std::vector<int> a_free, b_free;
  for (int s = 0; s < a.rank(); ++s)
    if (!a_bound[static_cast<std::size_t>(s)]) {
      out_val.push_back(a.valence()[static_cast<std::size_t>(s)]);
      a_free.push_back(s);
    }
  for (int s = 0; s < b.rank(); ++s)
    if (!b_bound[static_cast<std::size_t>(s)]) {
      out_val.push_back(b.valence()[static_cast<std::size_t>(s)]);
      b_free.push_back(s);
    }
  TensorField out(a.dim(), out_val, a.frame(), a.vars());

  // Iterate nonzero components of a; for each, run over b's free indices.
  std::vector<int> ia(static_cast<std::size_t>(a.rank()));
  std::vector<int> ib(static_cast<std::size_t>(b.rank()));
  std::vector<int> io(static_cast<std::size_t>(out.rank()));
  for (std::size_t fa = 0; fa < a.component_count(); ++fa) {
    const RationalFunction& av = a.flat(fa);
    if (av.is_zero()) continue;
    a.unflatten(fa, ia);
    for (const auto& [sa, sb] : pairs) ib[static_cast<std::size_t>(sb)] = ia[static_cast<std::size_t>(sa)];
    for (std::size_t k = 0; k < a_free.size(); ++k)
      io[k] = ia[static_cast<std::size_t>(a_free[k])];
    for (IndexIter bi(static_cast<int>(b_free.size()), b.dim()); !bi.done(); bi.next()) {
      for (std::size_t k = 0; k < b_free.size(); ++k)
        ib[static_cast<std::size_t>(b_free[k])] = bi.idx()[k];
      const RationalFunction& bv = b.at(ib);
      if (bv.is_zero()) continue;
      for (std::size_t k = 0; k < b_free.size(); ++k) io[a_free.size() + k] = bi.idx()[k];
      out.add_to(io, av * bv);
    }
  }
  return out;
}

TensorField self_trace(const TensorField& t, int slot_a, int slot_b) {
  if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= t.rank() || slot_b >= t.rank())
    throw std::invalid_argument("bad trace slots");
  if (t.valence()[static_cast<std::size_t>(slot_a)] == t.valence()[static_cast<std::size_t>(slot_b)])
    throw std::invalid_argument("trace requires one up and one down slot");
  Valence out_val;
  std::vector<int> free;
  for (int s = 0; s < t.rank(); ++s)
    if (s != slot_a && s != slot_b) {
      out_val.push_back(t.valence()[static_cast<std::size_t>(s)]);
      free.push_back(s);
    }
  TensorField out(t.dim(), out_val, t.frame(), t.vars());
  std::vector<int> it(static_cast<std::size_t>(t.rank()));
  std::vector<int> io(static_cast<std::size_t>(out.rank()));
  for (IndexIter fi(out.rank(), t.dim()); !fi.done(); fi.next()) {
    for (std::size_t k = 0; k < free.size(); ++k) {
      it[static_cast<std::size_t>(free[k])] = fi.idx()[k];
      io[k] = fi.idx()[k];
    }
    RationalFunction sum(t.vars());
    for (int s = 0; s < t.dim(); ++s) {
      it[static_cast<std::size_t>(slot_a)] = s;
      it[static_cast<std::size_t>(slot_b)] = s;
      sum += t.at(it);
    }
    out.set(io, std::move(sum));
  }
  return out;
}

TensorField partial_derivative(const TensorField& t, int coord) {
  if (coord < 0 || coord >= t.dim())
    throw std::invalid_argument("coordinate index outside the frame's coordinate list");
  // Coordinates are aligned with the variable table: x1..xn(,p1..pn).
  TensorField r = t;
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  for (std::size_t i = 0; i < t.component_count(); ++i) {
    t.unflatten(i, idx);
    r.set(idx, t.flat(i).derivative(coord));
  }
  return r;
}

namespace {

// Dense matrix of rational functions.
using RfMatrix = std::vector<std::vector<RationalFunction>>;

RfMatrix zero_matrix(int dim, const VarNames& vars) {
  return RfMatrix(static_cast<std::size_t>(dim),
                  std::vector<RationalFunction>(static_cast<std::size_t>(dim), RationalFunction(vars)));
}

TensorField transform_slot(const TensorField& t, int slot, const RfMatrix& mat) {
  TensorField out(t.dim(), t.valence(), t.frame(), t.vars());
  std::vector<int> src(static_cast<std::size_t>(t.rank()));
  std::vector<int> dst(static_cast<std::size_t>(t.rank()));
  for (std::size_t i = 0; i < t.component_count(); ++i) {
    const RationalFunction& v = t.flat(i);
    if (v.is_zero()) continue;
    t.unflatten(i, src);
    dst = src;
    const int c = src[static_cast<std::size_t>(slot)];
    for (int r = 0; r < t.dim(); ++r) {
      const RationalFunction& m = mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (m.is_zero()) continue;
      dst[static_cast<std::size_t>(slot)] = r;
      out.add_to(dst, m * v);
    }
  }
  return out;
}

}  // namespace

TensorField frame_transform(const TensorField& t, Frame target, const BaseGeometry& geom) {
  if (t.frame() == target) return t;
  if (t.frame() == Frame::BaseNatural || target == Frame::BaseNatural)
    throw std::invalid_argument("frame_transform operates on total-space tensors");
  const int n = geom.n();
  const int dim = 2 * n;
  if (t.dim() != dim) throw std::invalid_argument("tensor does not live on the total space");
  const VarNames& vars = t.vars();

  // Adapted frame in terms of the natural frame: E_i = d_i + B_hi d_hbar,
  // E_ibar = d_ibar, with B_hi = p_a Gamma^a_hi.
  RfMatrix a = zero_matrix(dim, vars);
  RfMatrix a_inv = zero_matrix(dim, vars);
  const RationalFunction one = RationalFunction::constant(vars, 1);
  for (int i = 0; i < dim; ++i) {
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = one;
    a_inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = one;
  }
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i) {
      RationalFunction b(vars);
      for (int s = 0; s < n; ++s)
        b += RationalFunction::variable(vars, n + s) * geom.gamma().at({s, h, i});
      a[static_cast<std::size_t>(n + h)][static_cast<std::size_t>(i)] = b;
      a_inv[static_cast<std::size_t>(n + h)][static_cast<std::size_t>(i)] = -b;
    }

  auto transpose = [&](const RfMatrix& m) {
    RfMatrix r = zero_matrix(dim, vars);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return r;
  };

  const bool to_induced = (target == Frame::InducedNatural);
  const RfMatrix up_mat = to_induced ? a : a_inv;
  const RfMatrix down_mat = to_induced ? transpose(a_inv) : transpose(a);

  TensorField out = t;
  for (int s = 0; s < t.rank(); ++s)
    out = transform_slot(out, s,
                         t.valence()[static_cast<std::size_t>(s)] == Variance::Up ? up_mat : down_mat);
  // Rebuild with the right frame tag.
  TensorField tagged(dim, t.valence(), target, vars);
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  for (std::size_t i = 0; i < out.component_count(); ++i) {
    out.unflatten(i, idx);
    tagged.set(idx, out.flat(i));
  }
  return tagged;
}

bool is_symmetric_in(const TensorField& t, int slot_a, int slot_b) {
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  for (std::size_t i = 0; i < t.component_count(); ++i) {
    t.unflatten(i, idx);
    std::vector<int> sw = idx;
    std::swap(sw[static_cast<std::size_t>(slot_a)], sw[static_cast<std::size_t>(slot_b)]);
    if (t.flat(i) != t.at(sw)) return false;
  }
  return true;
}

bool is_antisymmetric_in(const TensorField& t, int slot_a, int slot_b) {
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  for (std::size_t i = 0; i < t.component_count(); ++i) {
    t.unflatten(i, idx);
    std::vector<int> sw = idx;
    std::swap(sw[static_cast<std::size_t>(slot_a)], sw[static_cast<std::size_t>(slot_b)]);
    if (t.flat(i) != -t.at(sw)) return false;
  }
  return true;
}

std::optional<NonzeroWitness> first_nonzero(const TensorField& t) {
  std::vector<int> idx(static_cast<std::size_t>(t.rank()));
  for (std::size_t i = 0; i < t.component_count(); ++i) {
    if (t.flat(i).is_zero()) continue;
    t.unflatten(i, idx);
    return NonzeroWitness{idx, t.flat(i)};
  }
  return std::nullopt;
}

}  // namespace mrext
