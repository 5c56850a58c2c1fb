#include "satlab/subspace.hpp"

#include <algorithm>

#include "satlab/error.hpp"

namespace satlab {

Subspace::Subspace(Eigen::Index ambient) : ambient_(ambient), basis_(ambient, 0) {}

Subspace Subspace::spanned_by(std::span<const Vector> vectors, double rank_tol) {
  if (vectors.empty()) return Subspace(0);
  return spanned_by(vectors.front().size(), vectors, rank_tol);
}

Subspace Subspace::spanned_by(Eigen::Index ambient, std::span<const Vector> vectors,
                              double rank_tol) {
  double largest = 0.0;
  for (const auto& v : vectors) {
    if (v.size() != ambient) fail(ErrorKind::Structural, "span: vector length mismatch");
    largest = std::max(largest, v.norm());
  }
  Subspace out(ambient);
  if (largest == 0.0) return out;
  const double cutoff = rank_tol * largest;

  Matrix basis(ambient, std::min<Eigen::Index>(ambient, static_cast<Eigen::Index>(vectors.size())));
  Eigen::Index rank = 0;
  for (const auto& v : vectors) {
    if (rank == ambient) break;
    Vector r = v;
    // two passes of classical Gram-Schmidt
    for (int pass = 0; pass < 2 && rank > 0; ++pass) {
      const auto q = basis.leftCols(rank);
      r -= q * (q.adjoint() * r);
    }
    const double n = r.norm();
    if (n <= cutoff) continue;
    basis.col(rank++) = r / n;
  }
  out.basis_ = basis.leftCols(rank);
  return out;
}

Subspace Subspace::from_orthonormal(Matrix basis) {
  Subspace out(basis.rows());
  out.basis_ = std::move(basis);
  return out;
}

Vector Subspace::project(const Vector& v) const {
  if (v.size() != ambient_) fail(ErrorKind::Structural, "project: vector length mismatch");
  if (basis_.cols() == 0) return Vector::Zero(ambient_);
  return basis_ * (basis_.adjoint() * v);
}

double Subspace::residual(const Vector& v) const { return (v - project(v)).norm(); }

bool Subspace::contains(const Vector& v, double tol) const {
  return residual(v) <= tol * std::max(1.0, v.norm());
}

bool Subspace::contains(const Subspace& other, double tol) const {
  if (other.ambient_ != ambient_) return false;
  for (int i = 0; i < other.dimension(); ++i) {
    if (residual(other.basis_.col(i)) > tol) return false;
  }
  return true;
}

bool Subspace::same_as(const Subspace& other, double tol) const {
  return dimension() == other.dimension() && contains(other, tol) && other.contains(*this, tol);
}

double Subspace::orthonormality_defect() const {
  if (basis_.cols() == 0) return 0.0;
  const Matrix gram = basis_.adjoint() * basis_;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace satlab
