#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "mrext/rational_function.hpp"

namespace mrext {

class BaseGeometry;

enum class Variance : std::uint8_t { Up, Down };

// Ordered slot signature; empty = scalar field.
using Valence = std::vector<Variance>;

inline Valence valence_up() { return {Variance::Up}; }
inline Valence valence_down() { return {Variance::Down}; }

// BaseNatural: indices 1..n over d_i on M.
// InducedNatural: indices 1..2n over (d_i, d_ibar) on the cotangent bundle.
// Adapted: indices 1..2n over the connection-adapted frame (E_i, E_ibar).
enum class Frame : std::uint8_t { BaseNatural, InducedNatural, Adapted };

// Dense indexed field of exact rational functions. Treated as immutable once
// built; operations are pure and return fresh values.
class TensorField {
 public:
  TensorField(int dim, Valence valence, Frame frame, VarNames vars);

  static TensorField scalar(int dim, Frame frame, RationalFunction f);
  // Kronecker delta as the identity (up,down) field.
  static TensorField kronecker(int dim, Frame frame, const VarNames& vars);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(valence_.size()); }
  const Valence& valence() const { return valence_; }
  Frame frame() const { return frame_; }
  const VarNames& vars() const { return vars_; }
  std::size_t component_count() const { return comps_.size(); }

  const RationalFunction& at(std::span<const int> idx) const { return comps_[offset(idx)]; }
  const RationalFunction& at(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }
  const RationalFunction& flat(std::size_t i) const { return comps_[i]; }

  void set(std::span<const int> idx, RationalFunction f) { comps_[offset(idx)] = std::move(f); }
  void set(std::initializer_list<int> idx, RationalFunction f) {
    set(std::span<const int>(idx.begin(), idx.size()), std::move(f));
  }
  void add_to(std::span<const int> idx, const RationalFunction& f) {
    auto& c = comps_[offset(idx)];
    c += f;
  }
  void add_to(std::initializer_list<int> idx, const RationalFunction& f) {
    add_to(std::span<const int>(idx.begin(), idx.size()), f);
  }

  std::size_t offset(std::span<const int> idx) const;
  void unflatten(std::size_t off, std::span<int> idx) const;

  bool is_zero() const;
  bool operator==(const TensorField& o) const;
  bool operator!=(const TensorField& o) const { return !(*this == o); }

 private:
  int dim_;
  Valence valence_;
  Frame frame_;
  VarNames vars_;
  std::vector<RationalFunction> comps_;
};

// Odometer over index tuples in [0, dim)^rank.
class IndexIter {
 public:
  IndexIter(int rank, int dim) : idx_(static_cast<std::size_t>(rank), 0), dim_(dim), done_(rank >= 0 && dim > 0 ? false : true) {}
  bool done() const { return done_; }
  std::span<const int> operator*() const { return idx_; }
  const std::vector<int>& idx() const { return idx_; }
  void next() {
    for (int k = static_cast<int>(idx_.size()) - 1; k >= 0; --k) {
      if (++idx_[static_cast<std::size_t>(k)] < dim_) return;
      idx_[static_cast<std::size_t>(k)] = 0;
    }
    done_ = true;
  }

 private:
  std::vector<int> idx_;
  int dim_;
  bool done_;
};

TensorField tensor_add(const TensorField& a, const TensorField& b);
TensorField tensor_sub(const TensorField& a, const TensorField& b);
TensorField tensor_negate(const TensorField& a);
TensorField tensor_scale(const TensorField& a, const RationalFunction& k);

// Einstein summation of paired slots (one Up with one Down per pair); remaining
// slots are ordered a-then-b.
TensorField contract(const TensorField& a, const TensorField& b,
                     const std::vector<std::pair<int, int>>& pairs);
// Trace of two slots of one tensor (one Up, one Down).
TensorField self_trace(const TensorField& t, int slot_a, int slot_b);

// Componentwise coordinate derivative; coord indexes the frame's coordinate list.
TensorField partial_derivative(const TensorField& t, int coord);

// Change of total-space frame between Adapted and InducedNatural, using the
// adapted-frame change-of-basis matrix built from the base connection.
TensorField frame_transform(const TensorField& t, Frame target, const BaseGeometry& geom);

bool is_symmetric_in(const TensorField& t, int slot_a, int slot_b);
bool is_antisymmetric_in(const TensorField& t, int slot_a, int slot_b);

// First index tuple with a nonzero component, if any (for failure witnesses).
struct NonzeroWitness {
  std::vector<int> index;  // 0-based
  RationalFunction value;
};
std::optional<NonzeroWitness> first_nonzero(const TensorField& t);

}  // namespace mrext
