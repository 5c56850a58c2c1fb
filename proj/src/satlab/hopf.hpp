#pragma once

#include <optional>
#include <string>
#include <vector>

#include "satlab/group_action.hpp"

namespace satlab {

/// A finite-dimensional *-algebra presented by a linear basis inside a
/// StarAlgebra. Coordinates are taken with respect to that basis.
class BasedAlgebra {
 public:
  BasedAlgebra(StarAlgebra ambient, std::vector<AlgebraElement> basis);

  const StarAlgebra& ambient() const { return ambient_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<AlgebraElement>& basis() const { return basis_; }

  /// Coordinates of an element of the subalgebra; Precondition error if x is
  /// not in the span of the basis.
  Vector coords(const AlgebraElement& x) const;
  AlgebraElement element(const Vector& a) const;

  Vector multiply(const Vector& a, const Vector& b) const;
  Vector adjoint(const Vector& a) const;
  const Vector& unit() const { return unit_; }
  /// Column j of left_mult(i) holds the coordinates of b_i b_j.
  const Matrix& left_mult(int i) const { return left_[static_cast<std::size_t>(i)]; }
  /// Column i holds the coordinates of b_i^*.
  const Matrix& star_matrix() const { return star_; }

 private:
  StarAlgebra ambient_;
  std::vector<AlgebraElement> basis_;
  Matrix basis_coords_;
  Eigen::ColPivHouseholderQR<Matrix> solver_;
  std::vector<Matrix> left_;
  Matrix star_;
  Vector unit_;
};

struct AxiomCheck {
  std::string identity;
  double residual = 0.0;
  bool pass = false;
};

struct HopfAxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const;
  double max_residual() const;
  /// Checks that are reported but not required (currently none for built-ins).
  std::vector<std::string> flagged;
};

/// Finite-dimensional Hopf *-algebra with Haar trace and distinguished
/// projection. Comultiplication is a D^2 x D matrix: column i holds the
/// coordinates of Delta(b_i) with b_k (x) b_l at index k*D + l.
class HopfAlgebra {
 public:
  /// Builds from raw structure tensors; locates the Haar trace when not given
  /// and the distinguished projection, then verifies every axiom.
  static HopfAlgebra from_structure(BasedAlgebra algebra, Matrix comultiplication,
                                    Eigen::RowVectorXcd counit, Matrix antipode,
                                    std::optional<Eigen::RowVectorXcd> haar = std::nullopt,
                                    std::string name = {});

  const std::string& name() const { return name_; }
  const BasedAlgebra& algebra() const { return algebra_; }
  int dimension() const { return algebra_.dimension(); }
  const Matrix& comultiplication() const { return delta_; }
  /// Delta(b_i) as a D x D coefficient matrix (row k, column l).
  Matrix coproduct_of(int i) const;
  const Eigen::RowVectorXcd& counit() const { return counit_; }
  const Matrix& antipode() const { return antipode_; }
  const Eigen::RowVectorXcd& haar_trace() const { return haar_; }
  const Vector& distinguished_projection() const { return e_; }

  cplx counit_of(const Vector& a) const { return (counit_ * a)(0); }
  cplx haar_of(const Vector& a) const { return (haar_ * a)(0); }
  Vector antipode_of(const Vector& a) const { return antipode_ * a; }

  HopfAxiomReport check_axioms() const;

 private:
  HopfAlgebra(BasedAlgebra algebra, Matrix delta, Eigen::RowVectorXcd counit, Matrix antipode,
              Eigen::RowVectorXcd haar, Vector e, std::string name);

  BasedAlgebra algebra_;
  Matrix delta_;
  Eigen::RowVectorXcd counit_;
  Matrix antipode_;
  Eigen::RowVectorXcd haar_;
  Vector e_;
  std::string name_;
};

/// C*(G) realized in the regular representation, basis lambda_g.
HopfAlgebra group_hopf(const FiniteGroup& group);
/// C(G) with pointwise product, basis delta_g.
HopfAlgebra dual_function_hopf(const FiniteGroup& group);

/// Solves the two-sided invariance equations for the normalized Haar trace.
Eigen::RowVectorXcd locate_haar_trace(const BasedAlgebra& algebra, const Matrix& comultiplication);
/// Solves a e = eps(a) e and normalizes e to a projection.
Vector locate_distinguished_projection(const BasedAlgebra& algebra, const Eigen::RowVectorXcd& counit);

/// Action a . x of a Hopf algebra on M, stored per basis element of A as an
/// N x N matrix on StarAlgebra coordinates.
class HopfAction {
 public:
  HopfAction(HopfAlgebra hopf, StarAlgebra algebra, std::vector<Matrix> operators);

  const HopfAlgebra& hopf() const { return hopf_; }
  const StarAlgebra& algebra() const { return algebra_; }
  const Matrix& basis_operator(int i) const { return ops_[static_cast<std::size_t>(i)]; }
  Matrix operator_of(const Vector& a) const;
  AlgebraElement act(const Vector& a, const AlgebraElement& x) const;
  AlgebraElement act_basis(int i, const AlgebraElement& x) const;

 private:
  HopfAlgebra hopf_;
  StarAlgebra algebra_;
  std::vector<Matrix> ops_;
};

HopfAction hopf_action_from_group_action(const GroupAction& action);
/// a . x = eps(a) x
HopfAction trivial_hopf_action(const HopfAlgebra& hopf, const StarAlgebra& algebra);

/// The smash product M # A on M (x) A. Coordinates: the block for basis
/// element b_a holds StarAlgebra coordinates of x_a, i.e. index a*N + p.
class SmashProduct {
 public:
  /// Builds the multiplication table and verifies associativity and
  /// *-anti-multiplicativity on basis pairs (sampled above 32 dimensions).
  explicit SmashProduct(HopfAction action, unsigned seed = 0);

  const HopfAction& action() const { return action_; }
  int dimension() const { return dim_; }

  Vector multiply(const Vector& xi, const Vector& eta) const;
  Vector adjoint(const Vector& xi) const;
  Vector embed_m(const AlgebraElement& x) const;
  Vector embed_a(const Vector& a) const;
  Vector one() const { return embed_m(action_.algebra().one()); }
  Vector basis_vector(int i) const;

  /// x_a component of xi.
  AlgebraElement component(const Vector& xi, int a) const;

  double associativity_residual() const { return assoc_residual_; }
  double involution_residual() const { return star_residual_; }

 private:
  HopfAction action_;
  int n_ = 0;
  int d_ = 0;
  int dim_ = 0;
  double assoc_residual_ = 0.0;
  double star_residual_ = 0.0;
};

/// E(x) = e . x
AlgebraElement expectation_E_hopf(const HopfAction& action, const AlgebraElement& x);
/// F(sum x_j (x) a_j) = sum tau(a_j) x_j
AlgebraElement expectation_F_hopf(const SmashProduct& smash, const Vector& xi);

}  // namespace satlab
