#include "satlab/crossed_product.hpp"

#include <algorithm>
#include <cmath>

#include "satlab/error.hpp"
#include "satlab/ideal_closure.hpp"

namespace satlab {

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::vector<Vector> standard_basis(int dim) {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) out.push_back(Vector::Unit(dim, i));
  return out;
}

}  // namespace

CrossedProduct::CrossedProduct(GroupAction action) : action_(std::move(action)) {
  n_ = algebra().dimension();
  dim_ = n_ * group_order();
  const int r = represented_size();
  if (r > tol::kRepresentedDimensionBudget)
    fail(ErrorKind::Capacity, "represented crossed product needs size " + std::to_string(r) +
                                  ", above the budget " + std::to_string(tol::kRepresentedDimensionBudget));

  // faithfulness: the identity block row of the representation reads off every
  // coefficient, so its span over the monomial basis must be N |G|
  const int hd = algebra().hilbert_dimension();
  std::vector<Vector> rows;
  rows.reserve(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    const Matrix rep = represent(Vector::Unit(dim_, i));
    const Matrix top = rep.topRows(hd);
    rows.push_back(Eigen::Map<const Vector>(top.data(), top.size()));
  }
  const int rank = Subspace::spanned_by(static_cast<Eigen::Index>(hd) * r, rows).dimension();
  if (rank != dim_)
    fail(ErrorKind::Internal, "crossed product representation is not faithful (rank " + std::to_string(rank) +
                                  " of " + std::to_string(dim_) + ")");

  // *-homomorphism on generators m_p lambda_iota and lambda_g
  std::vector<Vector> gens;
  for (const auto& u : algebra().matrix_units()) gens.push_back(embed(u));
  for (int g = 0; g < group_order(); ++g) gens.push_back(lambda(g));
  std::vector<Matrix> reps;
  for (const auto& x : gens) reps.push_back(represent(x));
  const double cost = static_cast<double>(gens.size()) * static_cast<double>(gens.size()) * r * r * static_cast<double>(r);
  const std::size_t stride = cost > 2e9 ? static_cast<std::size_t>(std::ceil(cost / 2e9)) : 1;
  std::size_t counter = 0;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    hom_residual_ = std::max(hom_residual_, max_abs(represent(adjoint(gens[a])) - reps[a].adjoint()));
    for (std::size_t b = 0; b < gens.size(); ++b) {
      if (counter++ % stride != 0) continue;
      hom_residual_ = std::max(hom_residual_, max_abs(represent(multiply(gens[a], gens[b])) - reps[a] * reps[b]));
    }
  }
  if (hom_residual_ > tol::kEqual)
    fail(ErrorKind::Internal, "crossed product representation is not a *-homomorphism (residual " +
                                  std::to_string(hom_residual_) + ")");
}

Vector CrossedProduct::monomial(const AlgebraElement& x, int g) const {
  if (x.parent() != algebra()) fail(ErrorKind::Structural, "monomial coefficient from a different algebra");
  Vector out = Vector::Zero(dim_);
  out.segment(static_cast<Eigen::Index>(g) * n_, n_) = algebra().coords(x);
  return out;
}

AlgebraElement CrossedProduct::coefficient(const Vector& xi, int g) const {
  return algebra().element(xi.segment(static_cast<Eigen::Index>(g) * n_, n_));
}

Vector CrossedProduct::multiply(const Vector& xi, const Vector& eta) const {
  if (xi.size() != dim_ || eta.size() != dim_) fail(ErrorKind::Structural, "crossed product operand has the wrong size");
  const int order = group_order();
  Vector out = Vector::Zero(dim_);
  for (int g = 0; g < order; ++g) {
    const auto xg = xi.segment(static_cast<Eigen::Index>(g) * n_, n_);
    if (xg.isZero(0.0)) continue;
    const AlgebraElement x = algebra().element(xg);
    for (int h = 0; h < order; ++h) {
      const auto yh = eta.segment(static_cast<Eigen::Index>(h) * n_, n_);
      if (yh.isZero(0.0)) continue;
      const AlgebraElement y = algebra().element(action_.map(g) * yh);
      out.segment(static_cast<Eigen::Index>(group().mul(g, h)) * n_, n_) += algebra().coords(x * y);
    }
  }
  return out;
}

Vector CrossedProduct::adjoint(const Vector& xi) const {
  Vector out = Vector::Zero(dim_);
  for (int g = 0; g < group_order(); ++g) {
    const auto xg = xi.segment(static_cast<Eigen::Index>(g) * n_, n_);
    if (xg.isZero(0.0)) continue;
    const int gi = group().inverse(g);
    const Vector star = algebra().coords(satlab::adjoint(algebra().element(xg)));
    out.segment(static_cast<Eigen::Index>(gi) * n_, n_) += action_.map(gi) * star;
  }
  return out;
}

Matrix CrossedProduct::represent(const Vector& xi) const {
  const int hd = algebra().hilbert_dimension();
  const int order = group_order();
  Matrix out = Matrix::Zero(represented_size(), represented_size());
  for (int g = 0; g < order; ++g) {
    const auto xg = xi.segment(static_cast<Eigen::Index>(g) * n_, n_);
    if (xg.isZero(0.0)) continue;
    const int gi = group().inverse(g);
    for (int h = 0; h < order; ++h) {
      const int col = group().mul(gi, h);
      const AlgebraElement moved = algebra().element(action_.map(group().inverse(h)) * xg);
      out.block(static_cast<Eigen::Index>(h) * hd, static_cast<Eigen::Index>(col) * hd, hd, hd) += to_dense(moved);
    }
  }
  return out;
}

double CrossedProduct::norm(const Vector& xi) const { return spectral_norm(represent(xi)); }

Vector distinguished_projection(const CrossedProduct& cp) {
  Vector out = Vector::Zero(cp.dimension());
  const double w = 1.0 / cp.group_order();
  for (int g = 0; g < cp.group_order(); ++g) out += w * cp.lambda(g);
  return out;
}

Matrix expectation_E_matrix(const GroupAction& action) {
  const int n = action.algebra().dimension();
  Matrix m = Matrix::Zero(n, n);
  for (const auto& a : action.maps()) m += a;
  return m / static_cast<double>(action.group().order());
}

AlgebraElement expectation_E(const GroupAction& action, const AlgebraElement& x) {
  const StarAlgebra& alg = action.algebra();
  return alg.element(expectation_E_matrix(action) * alg.coords(x));
}

AlgebraElement expectation_F(const CrossedProduct& cp, const Vector& xi) {
  return cp.coefficient(xi, cp.group().identity());
}

Vector f_pair(const CrossedProduct& cp, const AlgebraElement& x, const AlgebraElement& y) {
  Vector out = Vector::Zero(cp.dimension());
  const double w = 1.0 / cp.group_order();
  for (int g = 0; g < cp.group_order(); ++g) out += cp.monomial(w * (x * cp.action().apply(g, y)), g);
  return out;
}

IdealReport ideal_J_alpha(const CrossedProduct& cp) {
  const auto units = cp.algebra().matrix_units();
  const int dim = cp.dimension();

  std::vector<Vector> pairs;
  pairs.reserve(units.size() * units.size());
  for (const auto& x : units)
    for (const auto& y : units) pairs.push_back(f_pair(cp, x, y));

  IdealReport report;
  report.span = Subspace::spanned_by(dim, pairs);
  report.dimension = report.span.dimension();
  report.full_dimension = dim;

  const Subspace generated = detail::ideal_closure(
      dim, {distinguished_projection(cp)}, standard_basis(dim),
      [&](const Vector& a, const Vector& b) { return cp.multiply(a, b); });
  report.generated_dimension = generated.dimension();

  // f_{a, b^*} is recovered from f_{x, x^*} with x = a + i^k b by polarization
  const cplx phases[4] = {1.0, cplx(0.0, 1.0), -1.0, cplx(0.0, -1.0)};
  std::vector<Vector> polarized;
  polarized.reserve(4 * units.size() * units.size());
  for (const auto& a : units)
    for (const auto& b : units)
      for (const cplx& ph : phases) {
        const AlgebraElement x = a + ph * b;
        polarized.push_back(f_pair(cp, x, adjoint(x)));
      }
  const Subspace pol = Subspace::spanned_by(dim, polarized);
  report.polarized_dimension = pol.dimension();

  const double t = tol::kQuasiBasis;
  if (!report.span.same_as(generated, t) || !report.span.same_as(pol, t))
    fail(ErrorKind::Consistency, "J_alpha computations disagree: span f_{x,y} has dimension " +
                                     std::to_string(report.dimension) + ", ideal generated by e has dimension " +
                                     std::to_string(report.generated_dimension) + ", span f_{x,x*} has dimension " +
                                     std::to_string(report.polarized_dimension));
  return report;
}

CornerReport hereditary_corner(const CrossedProduct& cp) {
  const int dim = cp.dimension();
  const Vector e = distinguished_projection(cp);
  std::vector<Vector> corner;
  corner.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) corner.push_back(cp.multiply(cp.multiply(e, Vector::Unit(dim, i)), e));
  const Subspace corner_span = Subspace::spanned_by(dim, corner);

  const Subspace fixed = fixed_point_algebra(cp.action());
  const auto fixed_elems = elements_of(cp.algebra(), fixed);
  const AlgebraElement one = cp.algebra().one();
  std::vector<Vector> images;
  for (const auto& x : fixed_elems) images.push_back(f_pair(cp, x, one));

  CornerReport report;
  report.corner_dimension = corner_span.dimension();
  report.fixed_point_dimension = fixed.dimension();
  report.image_dimension = Subspace::spanned_by(dim, images).dimension();
  for (std::size_t i = 0; i < images.size(); ++i) {
    report.containment_residual = std::max(report.containment_residual, corner_span.residual(images[i]));
    report.involution_residual = std::max(
        report.involution_residual, max_abs(cp.adjoint(images[i]) - f_pair(cp, adjoint(fixed_elems[i]), one)));
    for (std::size_t j = 0; j < images.size(); ++j)
      report.multiplicativity_residual =
          std::max(report.multiplicativity_residual,
                   max_abs(cp.multiply(images[i], images[j]) - f_pair(cp, fixed_elems[i] * fixed_elems[j], one)));
  }
  report.isomorphic = report.corner_dimension == report.fixed_point_dimension &&
                      report.image_dimension == report.fixed_point_dimension &&
                      report.containment_residual <= tol::kEqual && report.multiplicativity_residual <= tol::kEqual &&
                      report.involution_residual <= tol::kEqual;
  return report;
}

double unit_decomposition_residual(const CrossedProduct& cp, const std::vector<AlgebraElement>& xs) {
  Vector sum = -cp.one();
  for (int g = 0; g < cp.group_order(); ++g)
    for (const auto& x : xs) sum += cp.monomial(x * cp.action().apply(g, adjoint(x)), g);
  return cp.norm(sum);
}

}  // namespace satlab
