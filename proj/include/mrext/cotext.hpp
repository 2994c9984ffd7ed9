#pragma once

#include "mrext/basegeo.hpp"

namespace mrext {

// The deformed Riemannian extension in its three stored representations.
// Adapted blocks: ((c_ij, delta), (delta, 0)); inverse: ((0, delta), (delta, -c)).
struct ExtensionMetric {
  TensorField adapted;          // (0,2), Adapted frame
  TensorField induced;          // (0,2), InducedNatural frame
  TensorField inverse_adapted;  // (2,0), Adapted frame
};

ExtensionMetric build_extension_metric(const BaseGeometry& geom);

// Connection coefficients over the total space in the adapted frame, together
// with the torsion they generate through the frame's structure functions.
struct TotalConnection {
  TensorField coeffs;   // (up,down,down): coeffs(gamma, alpha, beta)
  TensorField torsion;  // (up,down,down), antisymmetric in the lower pair
  bool levi_civita = false;
};

// gamma Z = p_i Z^i for a base vector field.
RationalFunction gamma_z(const BaseGeometry& geom, const TensorField& z);

enum class LiftKind { Vertical, Horizontal, Complete };

// Vertical lift of a 1-form / horizontal or complete lift of a vector field,
// returned in the requested frame.
TensorField lift(const BaseGeometry& geom, LiftKind kind, const TensorField& object,
                 Frame frame = Frame::Adapted);
// Horizontal lift of a (1,1) field (block diag(J, J^T) in the adapted frame).
TensorField lift_endomorphism(const BaseGeometry& geom, const TensorField& j,
                              Frame frame = Frame::Adapted);

// Structure functions C^lambda_{alpha beta} of the adapted frame:
// [E_alpha, E_beta] = C^lambda_{alpha beta} E_lambda.
TensorField bracket_structure(const BaseGeometry& geom);

// Derivative of a scalar along an adapted frame leg.
RationalFunction frame_derivative(const BaseGeometry& geom, const RationalFunction& f, int alpha);

// Covariant derivative in the adapted frame; new slot in position 0.
TensorField adapted_covariant_derivative(const BaseGeometry& geom, const TotalConnection& conn,
                                         const TensorField& t);

// Curvature of an arbitrary adapted-frame connection via
// R(E_a,E_b)E_c = grad_a grad_b E_c - grad_b grad_a E_c - grad_[E_a,E_b] E_c,
// slots (a,b,c,up).
TensorField curvature_from_connection(const BaseGeometry& geom, const TotalConnection& conn);

// Torsion T^c_{ab} = coeffs^c_{ab} - coeffs^c_{ba} - C^c_{ab}.
TensorField torsion_from_connection(const BaseGeometry& geom, const TensorField& coeffs);

// Levi-Civita connection of the deformed extension. Nonzero coefficients:
// G~^h_ij = G^h_ij, G~^hbar_ij = p_s R_hji^s + Csym_hij, G~^hbar_i jbar = -G^j_ih.
TotalConnection lc_connection_total(const BaseGeometry& geom);

struct TotalCurvature {
  TensorField mixed;    // (down,down,down,up)
  TensorField lowered;  // (0,4)
};

// Closed-form curvature of the Levi-Civita connection (rejects other input).
TotalCurvature curvature_total(const TotalConnection& conn, const BaseGeometry& geom);

// Ricci R~_{ab} = R~_{s a b}^s and scalar gbar^{ab} R~_{ab}, computed by contraction.
std::pair<TensorField, RationalFunction> ricci_scalar_total(const TensorField& mixed,
                                                            const ExtensionMetric& metric);

TensorField weyl_total(const TensorField& lowered, const TensorField& ricci,
                       const RationalFunction& scalar, const ExtensionMetric& metric, int n);

TensorField projective_total(const TensorField& lowered, const TensorField& ricci,
                             const ExtensionMetric& metric, int n);

// Closed-form covariant derivative of the curvature, cross-checked internally
// against the generic adapted-frame recipe; slots (l; a,b,c; up).
TensorField nabla_curvature_total(const BaseGeometry& geom, const TotalConnection& conn,
                                  const TensorField& mixed);

// Metric connection with prescribed skew torsion T^rbar_ij = -p_s R_ijr^s and its
// curvature package.
struct MetricConnectionTotal {
  TotalConnection conn;
  TensorField u_mixed;  // the torsion correction U~^c_{ab} added to the Levi-Civita coefficients
  TensorField curvature_mixed;
  TensorField ricci;
  RationalFunction scalar;
};

MetricConnectionTotal metric_connection_total(const BaseGeometry& geom);

// 1/2 (nabla_i c_jh + nabla_j c_ih - nabla_h c_ij), slots (h,i,j).
TensorField c_symmetrized_gradient(const BaseGeometry& geom);

}  // namespace mrext
