#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "satlab/tolerances.hpp"

namespace satlab {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A linear subspace of C^n held as an orthonormal column basis.
///
/// Coordinates handed to a Subspace are expected to be scaled so that the
/// Euclidean inner product is the relevant trace inner product (see
/// StarAlgebra::coords), which makes the basis trace-orthonormal.
class Subspace {
 public:
  explicit Subspace(Eigen::Index ambient = 0);

  /// Gram-Schmidt with re-orthogonalization. A vector is discarded when its
  /// residual norm is at most rank_tol times the largest input norm.
  static Subspace spanned_by(std::span<const Vector> vectors,
                             double rank_tol = tol::kRank);
  static Subspace spanned_by(Eigen::Index ambient,
                             std::span<const Vector> vectors,
                             double rank_tol = tol::kRank);
  static Subspace from_orthonormal(Matrix basis);

  Eigen::Index ambient_dimension() const { return ambient_; }
  int dimension() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  Vector basis_vector(int i) const { return basis_.col(i); }

  Vector project(const Vector& v) const;
  double residual(const Vector& v) const;
  bool contains(const Vector& v, double tol) const;
  bool contains(const Subspace& other, double tol) const;
  bool same_as(const Subspace& other, double tol) const;

  /// max |<b_i, b_j> - delta_ij| over the stored basis.
  double orthonormality_defect() const;

 private:
  Eigen::Index ambient_;
  Matrix basis_;
};

}  // namespace satlab
