#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mrext/cotext.hpp"

namespace mrext {

enum class Verdict { Pass, Fail, NotApplicable };

struct Witness {
  std::vector<int> index;  // 1-based; total-space entries n+1..2n are fiber legs
  std::string expression;
};

struct CheckReport {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::optional<Witness> witness;
  std::string note;
};

const char* verdict_name(Verdict v);
bool all_pass(const std::vector<CheckReport>& reports);  // NotApplicable does not fail

CheckReport report_tensor_zero(const std::string& name, const TensorField& t,
                               const std::string& note = "");

// Brute-force geometry computed from the induced-coordinate matrix of the
// extension metric by the textbook Christoffel/curvature formulas, then moved to
// the adapted frame.
struct OracleGeometry {
  TensorField gamma_induced;     // (1,2), InducedNatural
  TensorField gamma_adapted;     // (1,2), Adapted
  TensorField curvature_adapted; // (d,d,d,u), Adapted
  TensorField ricci_adapted;     // (0,2), Adapted
  RationalFunction scalar;
};

OracleGeometry induced_frame_oracle(const BaseGeometry& geom);

// Connection coefficient transport between the natural and adapted frames
// (inhomogeneous transformation).
TensorField connection_induced_to_adapted(const BaseGeometry& geom, const TensorField& induced);
TensorField connection_adapted_to_induced(const BaseGeometry& geom, const TensorField& adapted);

// Lie brackets of the adapted frame recomputed from raw induced components,
// compared against the structure functions.
std::vector<CheckReport> frame_bracket_check(const BaseGeometry& geom);

// Closed forms versus the induced-coordinate brute force, component by component.
std::vector<CheckReport> oracle_equivalence(const BaseGeometry& geom);

// (R(X,Y)R)(Z,W)U for a (d,d,d,u) curvature field; slots (a,b,c,d,e,up f).
TensorField curvature_action_on_curvature(const TensorField& r);
// (R(X,Y)Ric)(Z,W); slots (a,b,c,d).
TensorField curvature_action_on_ricci(const TensorField& r, const TensorField& ricci);

// Case identities of the bundle curvature operator and the Ricci-action claims.
std::vector<CheckReport> rr_and_rric(const BaseGeometry& geom);

enum class ConditionKind { Flatness, LocalSymmetry, SemiSymmetry, ConformalFlatness, ProjectiveFlatness };
const char* condition_name(ConditionKind k);

// The deformation-tensor condition paired with its base condition, plus the
// equivalence cross-check against the matching total-space tensor.
std::vector<CheckReport> condition_check(ConditionKind kind, const BaseGeometry& geom);

// Purity of the extension metric under the lifted structure, the component
// equations of the bundle Tachibana operator on lift triples, and the final
// Kaehler-Norden verdict.
std::vector<CheckReport> kahler_norden_check(const BaseGeometry& geom);

// The three structural hypotheses (c = 0, parallel c, flat base with an exact
// 2-form potential) under which every condition passes identically.
std::vector<CheckReport> remark_suite(const BaseGeometry& geom);

// Metricity, torsion, scalar flatness, Ricci block structure, antisymmetry,
// closed-form vs generic curvature, and purity transfer.
std::vector<CheckReport> invariant_suite(const BaseGeometry& geom);

}  // namespace mrext
