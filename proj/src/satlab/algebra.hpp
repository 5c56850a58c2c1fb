#pragma once

#include <span>
#include <vector>

#include "satlab/subspace.hpp"

namespace satlab {

class AlgebraElement;

/// A finite-dimensional C*-algebra M_{d_1} (+) ... (+) M_{d_k}.
///
/// The algebra carries the faithful tracial state
///   tau(x) = sum_i tr(x_i) / sum_j d_j,
/// i.e. block i is weighted by d_i / sum_j d_j against its normalized trace.
/// Element coordinates are the row-major block entries scaled by
/// 1/sqrt(sum_j d_j), so that <x, y> = tau(x^* y) is the Euclidean product.
class StarAlgebra {
 public:
  StarAlgebra() : StarAlgebra(std::vector<int>{1}) {}
  explicit StarAlgebra(std::vector<int> block_dims);

  /// C(X) for a finite set X: |X| one-dimensional blocks.
  static StarAlgebra commutative(int points);

  const std::vector<int>& block_dims() const { return dims_; }
  int block_count() const { return static_cast<int>(dims_.size()); }
  int block_dim(int i) const { return dims_[static_cast<std::size_t>(i)]; }
  /// Linear dimension N = sum d_i^2.
  int dimension() const { return dimension_; }
  /// Size of the defining representation, sum d_i.
  int hilbert_dimension() const { return hilbert_dim_; }
  int block_offset(int i) const { return offsets_[static_cast<std::size_t>(i)]; }

  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement matrix_unit(int block, int row, int col) const;
  /// Matrix units in coordinate order.
  std::vector<AlgebraElement> matrix_units() const;
  /// Matrix units rescaled to be tau-orthonormal, in coordinate order.
  std::vector<AlgebraElement> orthonormal_basis() const;

  Vector coords(const AlgebraElement& x) const;
  AlgebraElement element(const Vector& coords) const;
  double coordinate_scale() const { return scale_; }

  bool operator==(const StarAlgebra& other) const { return dims_ == other.dims_; }
  bool operator!=(const StarAlgebra& other) const { return !(*this == other); }

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;  // coordinate offset of each block
  int dimension_ = 0;
  int hilbert_dim_ = 0;
  double scale_ = 1.0;
};

class AlgebraElement {
 public:
  AlgebraElement(StarAlgebra parent, std::vector<Matrix> blocks);

  const StarAlgebra& parent() const { return parent_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  Matrix& block(int i) { return blocks_[static_cast<std::size_t>(i)]; }

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(cplx c);

 private:
  StarAlgebra parent_;
  std::vector<Matrix> blocks_;
};

AlgebraElement operator+(AlgebraElement x, const AlgebraElement& y);
AlgebraElement operator-(AlgebraElement x, const AlgebraElement& y);
AlgebraElement operator-(AlgebraElement x);
AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator*(cplx c, AlgebraElement x);
inline AlgebraElement operator*(double c, AlgebraElement x) { return cplx(c) * std::move(x); }

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scalar_mul(cplx c, const AlgebraElement& x);
AlgebraElement adjoint(const AlgebraElement& x);

/// Block-diagonal matrix of size hilbert_dimension().
Matrix to_dense(const AlgebraElement& x);

cplx trace_state(const AlgebraElement& x);
/// tau(x^* y)
cplx trace_inner(const AlgebraElement& x, const AlgebraElement& y);
double operator_norm(const AlgebraElement& x);
double distance(const AlgebraElement& x, const AlgebraElement& y);

/// Largest singular value of a dense matrix.
double spectral_norm(const Matrix& m);

Subspace span(std::span<const AlgebraElement> elements);
/// The ideal generated by the given elements: span{ b_j g b_k }.
Subspace two_sided_ideal(std::span<const AlgebraElement> generators);
std::vector<AlgebraElement> elements_of(const StarAlgebra& algebra, const Subspace& s);

bool is_self_adjoint(const AlgebraElement& x, double tol = tol::kEqual);
bool is_projection(const AlgebraElement& x, double tol = tol::kEqual);
bool is_unitary(const AlgebraElement& x, double tol = tol::kEqual);
bool is_central(const AlgebraElement& x, double tol = tol::kEqual);

/// Rank of each block (singular values above the relative rank cutoff).
std::vector<int> block_ranks(const AlgebraElement& x);
/// Murray-von Neumann equivalence of projections: equal rank in every block.
bool mvn_equivalent(const AlgebraElement& p, const AlgebraElement& q);

}  // namespace satlab
