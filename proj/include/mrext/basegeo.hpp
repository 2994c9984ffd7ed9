#pragma once

#include <optional>
#include <utility>

#include "mrext/tensor.hpp"

namespace mrext {

// Base-manifold data bundle: dimension, a symmetric affine connection, the
// deformation tensor c, and optionally a metric and an almost complex structure.
// All component fields live over the coordinate table x1..xn,p1..pn but must not
// involve the fiber variables.
class BaseGeometry {
 public:
  static BaseGeometry with_connection(int n, TensorField gamma, TensorField c,
                                      std::optional<TensorField> metric = std::nullopt,
                                      std::optional<TensorField> j = std::nullopt);
  // Derives the Levi-Civita connection of the metric.
  static BaseGeometry from_metric(int n, TensorField metric, TensorField c,
                                  std::optional<TensorField> j = std::nullopt);

  int n() const { return n_; }
  const VarNames& vars() const { return vars_; }
  const TensorField& gamma() const { return gamma_; }
  const TensorField& c() const { return c_; }
  const std::optional<TensorField>& metric() const { return metric_; }
  const std::optional<TensorField>& j() const { return j_; }

  // p_a Gamma^a_{hi} as a rational function; the vertical leg of the adapted frame.
  RationalFunction vertical_leg(int h, int i) const;

 private:
  BaseGeometry(int n, VarNames vars, TensorField gamma, TensorField c,
               std::optional<TensorField> metric, std::optional<TensorField> j);
  void validate() const;

  int n_;
  VarNames vars_;
  TensorField gamma_;
  TensorField c_;
  std::optional<TensorField> metric_;
  std::optional<TensorField> j_;
};

// Determinant and adjugate-based inverse of a (0,2) field; throws on identically
// singular input.
RationalFunction tensor_determinant(const TensorField& g);
TensorField metric_inverse(const TensorField& g);  // (0,2) -> (2,0)

// Gamma^h_ij = 1/2 g^hm (d_i g_mj + d_j g_mi - d_m g_ij).
TensorField levi_civita_base(int n, const TensorField& metric);

// R_ijk^h = d_i Gamma^h_jk - d_j Gamma^h_ik + Gamma^h_im Gamma^m_jk - Gamma^h_jm Gamma^m_ik,
// slots (i,j,k,h) = (down,down,down,up). Works for any coordinate frame/dimension.
TensorField coordinate_curvature(const TensorField& gamma);

TensorField curvature_base(const BaseGeometry& geom);

// nabla t with the new derivative slot in position 0.
TensorField covariant_derivative(const BaseGeometry& geom, const TensorField& t);

// R_jk = R_sjk^s.
TensorField ricci_from_curvature(const TensorField& curvature);

// Directional derivative of a scalar along a vector field (componentwise partials).
RationalFunction directional_derivative(const RationalFunction& f, const TensorField& v);
// [x, y] for vector fields in a coordinate frame.
TensorField lie_bracket(const TensorField& x, const TensorField& y);
// (L_y j)^a_b for a (1,1) field in a coordinate frame.
TensorField lie_derivative_endomorphism(const TensorField& y, const TensorField& j);

// Tachibana operator on a (0,2) field, slot order (X,Y,Z):
// (Phi_J S)_kij = J^m_k d_m S_ij - (d_k J^m_i) S_mj - J^m_i d_k S_mj
//               + (d_i J^m_k) S_mj + (d_j J^m_k) S_im.
TensorField tachibana(const BaseGeometry& geom, const TensorField& s);
// Same operator for any coordinate frame, with an explicit (1,1) structure field.
TensorField tachibana_coordinate(const TensorField& j, const TensorField& s);
// Definitional form evaluated on explicit vector fields (test oracle):
// (JX)(S(Y,Z)) - X(S(JY,Z)) + S((L_Y J)X, Z) + S(Y, (L_Z J)X).
RationalFunction tachibana_definitional(const TensorField& j, const TensorField& s,
                                        const TensorField& x, const TensorField& y,
                                        const TensorField& z);

// Metric dual of a 1-form: w~^i = g^{ij} w_j, so that g_{ij} w~^j = w_i.
TensorField associated_vector(const BaseGeometry& geom, const TensorField& omega);

struct PurityReport {
  bool pure = false;
  bool holomorphic = false;
};
// pure  <=> S_mj J^m_i == S_im J^m_j; holomorphic <=> pure and Phi_J S == 0.
PurityReport purity_and_holomorphy_check(const BaseGeometry& geom, const TensorField& s);

}  // namespace mrext
