#include "satlab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "satlab/error.hpp"
#include "satlab/ideal_closure.hpp"

namespace satlab {

StarAlgebra::StarAlgebra(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) fail(ErrorKind::Structural, "StarAlgebra: at least one block is required");
  offsets_.reserve(dims_.size());
  for (int d : dims_) {
    if (d < 1) fail(ErrorKind::Structural, "StarAlgebra: block dimensions must be positive");
    offsets_.push_back(dimension_);
    dimension_ += d * d;
    hilbert_dim_ += d;
  }
  scale_ = 1.0 / std::sqrt(static_cast<double>(hilbert_dim_));
}

StarAlgebra StarAlgebra::commutative(int points) {
  if (points < 1) fail(ErrorKind::Structural, "C(X) needs at least one point");
  return StarAlgebra(std::vector<int>(static_cast<std::size_t>(points), 1));
}

AlgebraElement StarAlgebra::zero() const {
  std::vector<Matrix> blocks;
  blocks.reserve(dims_.size());
  for (int d : dims_) blocks.push_back(Matrix::Zero(d, d));
  return AlgebraElement(*this, std::move(blocks));
}

AlgebraElement StarAlgebra::one() const {
  std::vector<Matrix> blocks;
  blocks.reserve(dims_.size());
  for (int d : dims_) blocks.push_back(Matrix::Identity(d, d));
  return AlgebraElement(*this, std::move(blocks));
}

AlgebraElement StarAlgebra::matrix_unit(int block, int row, int col) const {
  if (block < 0 || block >= block_count()) fail(ErrorKind::Structural, "matrix_unit: bad block");
  const int d = block_dim(block);
  if (row < 0 || row >= d || col < 0 || col >= d)
    fail(ErrorKind::Structural, "matrix_unit: index out of range");
  AlgebraElement x = zero();
  x.block(block)(row, col) = 1.0;
  return x;
}

std::vector<AlgebraElement> StarAlgebra::matrix_units() const {
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(dimension_));
  for (int b = 0; b < block_count(); ++b) {
    const int d = block_dim(b);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) out.push_back(matrix_unit(b, r, c));
  }
  return out;
}

std::vector<AlgebraElement> StarAlgebra::orthonormal_basis() const {
  auto units = matrix_units();
  const double s = std::sqrt(static_cast<double>(hilbert_dim_));
  for (auto& u : units) u *= s;
  return units;
}

Vector StarAlgebra::coords(const AlgebraElement& x) const {
  if (x.parent() != *this) fail(ErrorKind::Structural, "coords: element belongs to another algebra");
  Vector v(dimension_);
  for (int b = 0; b < block_count(); ++b) {
    const int d = block_dim(b);
    const Matrix& m = x.block(b);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) v(offsets_[static_cast<std::size_t>(b)] + r * d + c) = m(r, c) * scale_;
  }
  return v;
}

AlgebraElement StarAlgebra::element(const Vector& v) const {
  if (v.size() != dimension_) fail(ErrorKind::Structural, "element: coordinate length mismatch");
  AlgebraElement x = zero();
  for (int b = 0; b < block_count(); ++b) {
    const int d = block_dim(b);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) x.block(b)(r, c) = v(offsets_[static_cast<std::size_t>(b)] + r * d + c) / scale_;
  }
  return x;
}

AlgebraElement::AlgebraElement(StarAlgebra parent, std::vector<Matrix> blocks)
    : parent_(std::move(parent)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != parent_.block_count())
    fail(ErrorKind::Structural, "AlgebraElement: wrong number of blocks");
  for (int b = 0; b < parent_.block_count(); ++b) {
    const Matrix& m = block(b);
    const int d = parent_.block_dim(b);
    if (m.rows() != d || m.cols() != d)
      fail(ErrorKind::Structural, "AlgebraElement: block " + std::to_string(b) + " has the wrong shape");
    if (!m.allFinite()) fail(ErrorKind::Structural, "AlgebraElement: non-finite coordinate");
  }
}

namespace {

void require_same_parent(const AlgebraElement& x, const AlgebraElement& y, const char* op) {
  if (x.parent() != y.parent())
    fail(ErrorKind::Structural, std::string(op) + ": operands belong to different algebras");
}

}  // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_parent(*this, other, "add");
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] += other.blocks_[b];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_parent(*this, other, "subtract");
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] -= other.blocks_[b];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx c) {
  for (auto& m : blocks_) m *= c;
  return *this;
}

AlgebraElement operator+(AlgebraElement x, const AlgebraElement& y) { return x += y; }
AlgebraElement operator-(AlgebraElement x, const AlgebraElement& y) { return x -= y; }
AlgebraElement operator-(AlgebraElement x) { return x *= -1.0; }
AlgebraElement operator*(cplx c, AlgebraElement x) { return x *= c; }

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_parent(x, y, "mul");
  std::vector<Matrix> blocks;
  blocks.reserve(x.blocks().size());
  for (std::size_t b = 0; b < x.blocks().size(); ++b) blocks.push_back(x.blocks()[b] * y.blocks()[b]);
  return AlgebraElement(x.parent(), std::move(blocks));
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) { return x + y; }
AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) { return x * y; }
AlgebraElement scalar_mul(cplx c, const AlgebraElement& x) { return c * x; }

AlgebraElement adjoint(const AlgebraElement& x) {
  std::vector<Matrix> blocks;
  blocks.reserve(x.blocks().size());
  for (const auto& m : x.blocks()) blocks.push_back(m.adjoint());
  return AlgebraElement(x.parent(), std::move(blocks));
}

Matrix to_dense(const AlgebraElement& x) {
  const int n = x.parent().hilbert_dimension();
  Matrix out = Matrix::Zero(n, n);
  int at = 0;
  for (const auto& m : x.blocks()) {
    out.block(at, at, m.rows(), m.cols()) = m;
    at += static_cast<int>(m.rows());
  }
  return out;
}

cplx trace_state(const AlgebraElement& x) {
  cplx t = 0.0;
  for (const auto& m : x.blocks()) t += m.trace();
  return t / static_cast<double>(x.parent().hilbert_dimension());
}

cplx trace_inner(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_parent(x, y, "trace_inner");
  cplx t = 0.0;
  for (std::size_t b = 0; b < x.blocks().size(); ++b)
    t += (x.blocks()[b].array().conjugate() * y.blocks()[b].array()).sum();
  return t / static_cast<double>(x.parent().hilbert_dimension());
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  if (m.rows() <= 16) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double operator_norm(const AlgebraElement& x) {
  double n = 0.0;
  for (const auto& m : x.blocks()) n = std::max(n, spectral_norm(m));
  return n;
}

double distance(const AlgebraElement& x, const AlgebraElement& y) { return operator_norm(x - y); }

Subspace span(std::span<const AlgebraElement> elements) {
  if (elements.empty()) return Subspace(0);
  const StarAlgebra& a = elements.front().parent();
  std::vector<Vector> vs;
  vs.reserve(elements.size());
  for (const auto& x : elements) vs.push_back(a.coords(x));
  return Subspace::spanned_by(a.dimension(), vs);
}

Subspace two_sided_ideal(std::span<const AlgebraElement> generators) {
  if (generators.empty()) return Subspace(0);
  const StarAlgebra a = generators.front().parent();
  std::vector<Vector> gens;
  for (const auto& g : generators) gens.push_back(a.coords(g));
  std::vector<Vector> basis;
  for (const auto& u : a.matrix_units()) basis.push_back(a.coords(u));
  return detail::ideal_closure(a.dimension(), gens, basis, [&](const Vector& x, const Vector& y) {
    return a.coords(a.element(x) * a.element(y));
  });
}

std::vector<AlgebraElement> elements_of(const StarAlgebra& algebra, const Subspace& s) {
  if (s.dimension() > 0 && s.ambient_dimension() != algebra.dimension())
    fail(ErrorKind::Structural, "elements_of: subspace does not live in this algebra");
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(s.dimension()));
  for (int i = 0; i < s.dimension(); ++i) out.push_back(algebra.element(s.basis_vector(i)));
  return out;
}

bool is_self_adjoint(const AlgebraElement& x, double tol) { return distance(x, adjoint(x)) <= tol; }

bool is_projection(const AlgebraElement& x, double tol) {
  return is_self_adjoint(x, tol) && distance(x * x, x) <= tol;
}

bool is_unitary(const AlgebraElement& x, double tol) {
  const AlgebraElement one = x.parent().one();
  return distance(adjoint(x) * x, one) <= tol && distance(x * adjoint(x), one) <= tol;
}

bool is_central(const AlgebraElement& x, double tol) {
  for (const auto& b : x.parent().matrix_units()) {
    if (distance(x * b, b * x) > tol) return false;
  }
  return true;
}

std::vector<int> block_ranks(const AlgebraElement& x) {
  std::vector<int> ranks;
  for (const auto& m : x.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    const double top = s.size() ? s(0) : 0.0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > tol::kRank * std::max(1.0, top)) ++r;
    ranks.push_back(r);
  }
  return ranks;
}

bool mvn_equivalent(const AlgebraElement& p, const AlgebraElement& q) {
  require_same_parent(p, q, "mvn_equivalent");
  if (!is_projection(p) || !is_projection(q))
    fail(ErrorKind::Precondition, "mvn_equivalent: both arguments must be projections");
  return block_ranks(p) == block_ranks(q);
}

}  // namespace satlab
