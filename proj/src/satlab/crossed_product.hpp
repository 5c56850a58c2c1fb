#pragma once

#include <vector>

#include "satlab/group_action.hpp"

namespace satlab {

/// The crossed product M x_alpha G of a finite group action.
///
/// An element sum_g x_g lambda_g is held as a coefficient vector whose g-th
/// block of length N carries the StarAlgebra coordinates of x_g (index
/// g*N + p). The standard basis vectors are the monomials m_p lambda_g for
/// the tau-orthonormal matrix units m_p.
///
/// A faithful copy lives on l^2(G, C^{sum d}): x lambda_g acts by the block
/// matrix whose (h, g^{-1}h) entry is alpha_{h^{-1}}(x).
class CrossedProduct {
 public:
  /// Builds the product and checks that the represented copy is a faithful
  /// *-homomorphism on generators.
  explicit CrossedProduct(GroupAction action);

  const GroupAction& action() const { return action_; }
  const FiniteGroup& group() const { return action_.group(); }
  const StarAlgebra& algebra() const { return action_.algebra(); }
  int group_order() const { return action_.group().order(); }
  int dimension() const { return dim_; }
  int represented_size() const { return algebra().hilbert_dimension() * group_order(); }

  Vector multiply(const Vector& xi, const Vector& eta) const;
  Vector adjoint(const Vector& xi) const;
  Vector one() const { return embed(algebra().one()); }
  /// x lambda_g
  Vector monomial(const AlgebraElement& x, int g) const;
  /// x lambda_iota
  Vector embed(const AlgebraElement& x) const { return monomial(x, group().identity()); }
  Vector lambda(int g) const { return monomial(algebra().one(), g); }
  AlgebraElement coefficient(const Vector& xi, int g) const;

  Matrix represent(const Vector& xi) const;
  /// Operator norm in the represented copy.
  double norm(const Vector& xi) const;

  double homomorphism_residual() const { return hom_residual_; }

 private:
  GroupAction action_;
  int n_ = 0;
  int dim_ = 0;
  double hom_residual_ = 0.0;
};

/// e = (1/|G|) sum_g lambda_g
Vector distinguished_projection(const CrossedProduct& cp);
/// E(x) = (1/|G|) sum_g alpha_g(x)
AlgebraElement expectation_E(const GroupAction& action, const AlgebraElement& x);
/// Coordinate matrix of E.
Matrix expectation_E_matrix(const GroupAction& action);
/// F(sum_g x_g lambda_g) = x_iota
AlgebraElement expectation_F(const CrossedProduct& cp, const Vector& xi);
/// f_{x,y} = (1/|G|) sum_g x alpha_g(y) lambda_g, so f_{1,1} = e and x e y = f_{x,y}.
Vector f_pair(const CrossedProduct& cp, const AlgebraElement& x, const AlgebraElement& y);

struct IdealReport {
  Subspace span;            // span{ f_{b_j, b_k} }
  int dimension = 0;
  int full_dimension = 0;   // N |G|
  int generated_dimension = 0;  // ideal generated by e
  int polarized_dimension = 0;  // span{ f_{x, x^*} }
  bool full() const { return dimension == full_dimension; }
};

/// J_alpha computed three ways; any mismatch raises a Consistency error.
IdealReport ideal_J_alpha(const CrossedProduct& cp);

struct CornerReport {
  int corner_dimension = 0;       // dim e (M x G) e
  int fixed_point_dimension = 0;  // dim M^alpha
  int image_dimension = 0;        // dim { f_{x,1} : x in M^alpha }
  double containment_residual = 0.0;
  double multiplicativity_residual = 0.0;
  double involution_residual = 0.0;
  bool isomorphic = false;
};

/// e (M x G) e together with the check that x -> f_{x,1} maps M^alpha onto it
/// as a *-isomorphism.
CornerReport hereditary_corner(const CrossedProduct& cp);

/// || sum_g sum_j x_j alpha_g(x_j^*) lambda_g - 1 || in the represented norm.
double unit_decomposition_residual(const CrossedProduct& cp, const std::vector<AlgebraElement>& xs);

}  // namespace satlab
