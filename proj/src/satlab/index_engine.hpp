#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satlab/crossed_product.hpp"
#include "satlab/hopf.hpp"

namespace satlab {

/// A conditional expectation of M onto a unital *-subalgebra, stored as an
/// N x N matrix on StarAlgebra coordinates together with its range.
struct ConditionalExpectation {
  StarAlgebra algebra;
  Matrix map;
  Subspace range;

  AlgebraElement operator()(const AlgebraElement& x) const { return algebra.element(map * algebra.coords(x)); }
};

struct ExpectationCheck {
  double idempotence = 0.0;
  double range = 0.0;        // E maps into and fixes the range
  double unitality = 0.0;
  double bimodule = 0.0;     // E(a x b) = a E(x) b for a, b in the range
  double self_adjointness = 0.0;
  double positivity = 0.0;   // most negative eigenvalue of E(x^* x) on probes
  bool ok() const;
};

ExpectationCheck verify_expectation(const ConditionalExpectation& e);

ConditionalExpectation identity_expectation(const StarAlgebra& algebra);
/// E(x) = (1/|G|) sum_g alpha_g(x) onto M^alpha
ConditionalExpectation group_expectation(const GroupAction& action);
/// E(x) = e . x onto M^A
ConditionalExpectation hopf_expectation(const HopfAction& action);

struct QuasiBasis {
  std::vector<AlgebraElement> elements;
  double residual = 0.0;        // max_b || sum v E(v^* b) - b ||
  double right_residual = 0.0;  // max_b || sum E(b v) v^* - b ||
  double frame_min_eigenvalue = 0.0;
  double frame_max_eigenvalue = 0.0;
};

struct QuasiBasisResidual {
  double left = 0.0;
  double right = 0.0;
  double max() const { return left > right ? left : right; }
};

/// Frame-operator quasi-basis v_j = S^{-1/2} m_j with S b = sum_j m_j E(m_j^* b),
/// where S^{-1/2} is taken for the inner product tau(E(x^* y)).
QuasiBasis solve_quasi_basis(const ConditionalExpectation& e);
/// Reconstruction residual of a candidate family over the matrix units.
QuasiBasisResidual check_quasi_basis(const std::vector<AlgebraElement>& candidate, const ConditionalExpectation& e);

struct IndexReport {
  AlgebraElement index_element = StarAlgebra().zero();
  bool is_central = false;
  double trace_value = 0.0;       // c = tau(Index)
  double scalar_residual = 0.0;   // || Index - c 1 ||
  std::optional<double> scalar_value;
  double self_adjoint_residual = 0.0;
  double min_eigenvalue = 0.0;
  std::optional<bool> matches_group_order;
};

IndexReport compute_index(const std::vector<AlgebraElement>& quasi_basis);

/// Family b^j_g stored as members[j][g].
struct WitnessFamily {
  std::vector<std::vector<AlgebraElement>> members;
};

struct WitnessCheck {
  double equivariance_residual = 0.0;   // max_{g,h} sum_j || alpha_g(b^j_h) - b^j_{gh} ||
  double orthogonality_residual = 0.0;  // max_{g,h} || sum_j b^j_g (b^j_h)^* - delta_gh ||
  bool within(double eps) const { return equivariance_residual < eps && orthogonality_residual < eps; }
};

WitnessCheck check_witness_family(const GroupAction& action, const WitnessFamily& family);
/// b_j = u_j / sqrt|G|, b^j_g = alpha_g(b_j)
WitnessFamily witness_from_quasi_basis(const GroupAction& action, const QuasiBasis& qb);

struct ConditionResult {
  bool holds = false;
  double residual = 0.0;
};

struct EpsilonCheck {
  double epsilon = 0.0;
  bool holds = false;
};

struct SaturationVerdict {
  int group_order = 0;
  int crossed_dimension = 0;
  int j_alpha_dimension = 0;
  ConditionResult ideal_full;        // (i), residual = dim deficit
  IndexReport index;
  ConditionResult index_is_order;    // (ii), residual = || Index - |G| 1 ||
  ConditionResult qb_orthogonality;  // (iii), residual = max_{g != iota} || sum u alpha_g(u^*) ||
  ConditionResult exact_witness;     // (iv)
  WitnessCheck witness;
  double epsilon = 1e-6;
  ConditionResult approx_witness;    // (v) at epsilon
  std::vector<EpsilonCheck> epsilon_trend;
  std::optional<WitnessCheck> supplied_witness;
  double phi_one_projection_residual = 0.0;
  QuasiBasis quasi_basis;
  bool consistent = false;
  bool saturated = false;
  std::vector<std::string> disagreements;
};

/// Evaluates the five equivalent conditions independently. Disagreements are
/// reported in the verdict, never thrown.
SaturationVerdict saturation_battery(const GroupAction& action, double epsilon = 1e-6,
                                     const std::optional<WitnessFamily>& extra_witness = std::nullopt);

/// phi(1) = sum_i f_{u_i, u_i^*} in M x G.
Vector quasi_basis_phi_one(const CrossedProduct& cp, const QuasiBasis& qb);

struct HopfSaturationVerdict {
  int span_dimension = 0;  // dim span{ x e y }
  int full_dimension = 0;  // N D
  bool span_full = false;
  IndexReport index;
  double index_residual = 0.0;  // || Index - D 1 ||
  bool index_is_dimension = false;
  bool saturated = false;
  QuasiBasis quasi_basis;
};

/// Span fullness and Index(E) = D 1 computed separately; a disagreement raises
/// a Consistency error.
HopfSaturationVerdict hopf_saturation(const HopfAction& action);

struct RokhlinReport {
  double projection_residual = 0.0;
  double orthogonality_residual = 0.0;  // max_{g != h} || e_g e_h ||
  double partition_residual = 0.0;      // || sum e_g - 1 ||
  double equivariance_residual = 0.0;   // max || alpha_g(e_h) - e_{gh} ||
  bool is_rokhlin = false;
  /// Literal single-member family b^1_g = e_g.
  WitnessCheck single_family;
  /// |G|-member family b^j_g = e_{gj}, which satisfies sum_j b^j_g (b^j_h)^* = delta_gh.
  WitnessCheck spread_family;
  bool condition_v = false;
  std::optional<bool> battery_saturated;
  bool agrees = false;
};

RokhlinReport rokhlin_witness_check(const GroupAction& action, const std::vector<AlgebraElement>& family,
                                    double epsilon);

}  // namespace satlab
