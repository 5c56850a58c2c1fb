#include "satlab/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "satlab/error.hpp"

namespace satlab {

namespace {

Vector null_space_vector(const Matrix& system, const char* what) {
  Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index n = system.cols();
  const double top = s.size() ? s(0) : 0.0;
  const double cutoff = tol::kRank * std::max(1.0, top);
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sv = i < s.size() ? s(i) : 0.0;
    if (sv <= cutoff) kernel.push_back(i);
  }
  if (kernel.size() != 1)
    fail(ErrorKind::Construction, std::string(what) + ": solution space has dimension " +
                                      std::to_string(kernel.size()) + ", expected 1");
  return svd.matrixV().col(kernel.front());
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

BasedAlgebra::BasedAlgebra(StarAlgebra ambient, std::vector<AlgebraElement> basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  const int d = dimension();
  if (d < 1) fail(ErrorKind::Construction, "BasedAlgebra: empty basis");
  basis_coords_.resize(ambient_.dimension(), d);
  for (int i = 0; i < d; ++i) basis_coords_.col(i) = ambient_.coords(basis_[static_cast<std::size_t>(i)]);
  solver_.compute(basis_coords_);
  if (solver_.rank() != d) fail(ErrorKind::Construction, "BasedAlgebra: basis is linearly dependent");

  unit_ = coords(ambient_.one());
  star_.resize(d, d);
  left_.assign(static_cast<std::size_t>(d), Matrix(d, d));
  for (int i = 0; i < d; ++i) {
    const auto& bi = basis_[static_cast<std::size_t>(i)];
    star_.col(i) = coords(satlab::adjoint(bi));
    for (int j = 0; j < d; ++j) left_[static_cast<std::size_t>(i)].col(j) = coords(bi * basis_[static_cast<std::size_t>(j)]);
  }
}

Vector BasedAlgebra::coords(const AlgebraElement& x) const {
  const Vector v = ambient_.coords(x);
  Vector c = solver_.solve(v);
  if ((basis_coords_ * c - v).norm() > tol::kEqual * std::max(1.0, v.norm()))
    fail(ErrorKind::Precondition, "element is not in the span of the algebra basis");
  return c;
}

AlgebraElement BasedAlgebra::element(const Vector& a) const { return ambient_.element(basis_coords_ * a); }

Vector BasedAlgebra::multiply(const Vector& a, const Vector& b) const {
  Vector out = Vector::Zero(dimension());
  for (int i = 0; i < dimension(); ++i)
    if (a(i) != cplx(0.0)) out += a(i) * (left_[static_cast<std::size_t>(i)] * b);
  return out;
}

Vector BasedAlgebra::adjoint(const Vector& a) const { return star_ * a.conjugate(); }

bool HopfAxiomReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

double HopfAxiomReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.residual);
  return m;
}

HopfAlgebra::HopfAlgebra(BasedAlgebra algebra, Matrix delta, Eigen::RowVectorXcd counit, Matrix antipode,
                         Eigen::RowVectorXcd haar, Vector e, std::string name)
    : algebra_(std::move(algebra)),
      delta_(std::move(delta)),
      counit_(std::move(counit)),
      antipode_(std::move(antipode)),
      haar_(std::move(haar)),
      e_(std::move(e)),
      name_(std::move(name)) {}

Matrix HopfAlgebra::coproduct_of(int i) const {
  const int d = dimension();
  Matrix m(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) m(k, l) = delta_(k * d + l, i);
  return m;
}

HopfAlgebra HopfAlgebra::from_structure(BasedAlgebra algebra, Matrix comultiplication, Eigen::RowVectorXcd counit,
                                        Matrix antipode, std::optional<Eigen::RowVectorXcd> haar,
                                        std::string name) {
  const int d = algebra.dimension();
  if (comultiplication.rows() != d * d || comultiplication.cols() != d)
    fail(ErrorKind::Construction, "comultiplication must be a D^2 x D matrix");
  if (counit.size() != d) fail(ErrorKind::Construction, "counit must have D entries");
  if (antipode.rows() != d || antipode.cols() != d) fail(ErrorKind::Construction, "antipode must be D x D");
  if (haar && haar->size() != d) fail(ErrorKind::Construction, "Haar trace must have D entries");

  Eigen::RowVectorXcd tau = haar ? *haar : locate_haar_trace(algebra, comultiplication);
  Vector e = locate_distinguished_projection(algebra, counit);
  HopfAlgebra h(std::move(algebra), std::move(comultiplication), std::move(counit), std::move(antipode),
                std::move(tau), std::move(e), std::move(name));
  const auto report = h.check_axioms();
  for (const auto& c : report.checks)
    if (!c.pass)
      fail(ErrorKind::Construction, "Hopf axiom violated: " + c.identity + " (residual " +
                                        std::to_string(c.residual) + ")");
  return h;
}

namespace {

// Product in A (x) A of two D x D coefficient matrices.
Matrix tensor_multiply(const BasedAlgebra& a, const Matrix& x, const Matrix& y) {
  const int d = a.dimension();
  Matrix z = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      if (x(k, l) == cplx(0.0)) continue;
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
          if (y(p, q) == cplx(0.0)) continue;
          z += (x(k, l) * y(p, q)) * (a.left_mult(k).col(p) * a.left_mult(l).col(q).transpose());
        }
    }
  return z;
}

Matrix tensor_adjoint(const BasedAlgebra& a, const Matrix& x) {
  return a.star_matrix() * x.conjugate() * a.star_matrix().transpose();
}

}  // namespace

HopfAxiomReport HopfAlgebra::check_axioms() const {
  const BasedAlgebra& a = algebra_;
  const int d = dimension();
  const Vector& one = a.unit();
  const Matrix id = Matrix::Identity(d, d);
  HopfAxiomReport report;
  auto add = [&](std::string name, double residual) {
    report.checks.push_back({std::move(name), residual, residual <= tol::kEqual});
  };
  auto basis = [&](int i) { return Vector(id.col(i)); };
  std::vector<Matrix> cop;
  for (int i = 0; i < d; ++i) cop.push_back(coproduct_of(i));
  auto coproduct = [&](const Vector& v) {
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m += v(i) * cop[static_cast<std::size_t>(i)];
    return m;
  };

  // (i) Delta and eps are *-homomorphisms, S is a *-preserving anti-multiplicative involution
  double r_delta_mul = 0, r_delta_star = 0, r_eps_mul = 0, r_eps_star = 0, r_s_mul = 0, r_s_star = 0;
  for (int i = 0; i < d; ++i) {
    const Vector bi = basis(i);
    const Vector bi_star = a.adjoint(bi);
    r_delta_star = std::max(r_delta_star, max_abs(coproduct(bi_star) - tensor_adjoint(a, cop[static_cast<std::size_t>(i)])));
    r_eps_star = std::max(r_eps_star, std::abs(counit_of(bi_star) - std::conj(counit_of(bi))));
    r_s_star = std::max(r_s_star, max_abs(antipode_of(bi_star) - a.adjoint(antipode_of(bi))));
    for (int j = 0; j < d; ++j) {
      const Vector bj = basis(j);
      const Vector prod = a.multiply(bi, bj);
      r_delta_mul = std::max(r_delta_mul, max_abs(coproduct(prod) - tensor_multiply(a, cop[static_cast<std::size_t>(i)], cop[static_cast<std::size_t>(j)])));
      r_eps_mul = std::max(r_eps_mul, std::abs(counit_of(prod) - counit_of(bi) * counit_of(bj)));
      r_s_mul = std::max(r_s_mul, max_abs(antipode_of(prod) - a.multiply(antipode_of(bj), antipode_of(bi))));
    }
  }
  add("Delta(ab) = Delta(a)Delta(b)", r_delta_mul);
  add("Delta(a*) = Delta(a)*", r_delta_star);
  add("eps(ab) = eps(a)eps(b)", r_eps_mul);
  add("eps(a*) = conj eps(a)", r_eps_star);
  add("S(ab) = S(b)S(a)", r_s_mul);
  add("S(a*) = S(a)*", r_s_star);
  add("S(S(a)) = a", max_abs(antipode_ * antipode_ - id));

  // (ii) unit conditions
  add("Delta(1) = 1 (x) 1", max_abs(coproduct(one) - one * one.transpose()));
  add("eps(1) = 1", std::abs(counit_of(one) - 1.0));
  add("S(1) = 1", max_abs(antipode_of(one) - one));

  // (iii) coassociativity
  double r_coassoc = 0;
  for (int i = 0; i < d; ++i) {
    const Matrix& ci = cop[static_cast<std::size_t>(i)];
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        for (int z = 0; z < d; ++z) {
          cplx left = 0.0, right = 0.0;
          for (int k = 0; k < d; ++k) left += ci(k, z) * cop[static_cast<std::size_t>(k)](x, y);
          for (int l = 0; l < d; ++l) right += ci(x, l) * cop[static_cast<std::size_t>(l)](y, z);
          r_coassoc = std::max(r_coassoc, std::abs(left - right));
        }
  }
  add("(Delta (x) id)Delta = (id (x) Delta)Delta", r_coassoc);

  // counit laws and antipode laws
  double r_cl = 0, r_cr = 0, r_sl = 0, r_sr = 0, r_sl2 = 0, r_sr2 = 0, r_hl = 0, r_hr = 0;
  for (int i = 0; i < d; ++i) {
    const Matrix& ci = cop[static_cast<std::size_t>(i)];
    const Vector bi = basis(i);
    r_cl = std::max(r_cl, max_abs(Vector((counit_ * ci).transpose()) - bi));
    r_cr = std::max(r_cr, max_abs(ci * counit_.transpose() - bi));
    Vector s_id = Vector::Zero(d), id_s = Vector::Zero(d), r_s = Vector::Zero(d), s_r = Vector::Zero(d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        if (ci(k, l) == cplx(0.0)) continue;
        const Vector bk = basis(k), bl = basis(l);
        s_id += ci(k, l) * a.multiply(antipode_of(bk), bl);
        id_s += ci(k, l) * a.multiply(bk, antipode_of(bl));
        r_s += ci(k, l) * a.multiply(bl, antipode_of(bk));
        s_r += ci(k, l) * a.multiply(antipode_of(bl), bk);
      }
    const Vector target = counit_of(bi) * one;
    r_sl = std::max(r_sl, max_abs(s_id - target));
    r_sr = std::max(r_sr, max_abs(id_s - target));
    r_sl2 = std::max(r_sl2, max_abs(r_s - target));
    r_sr2 = std::max(r_sr2, max_abs(s_r - target));
    const Vector haar_target = haar_of(bi) * one;
    r_hl = std::max(r_hl, max_abs(Vector((haar_ * ci).transpose()) - haar_target));
    r_hr = std::max(r_hr, max_abs(ci * haar_.transpose() - haar_target));
  }
  add("sum eps(a^L) a^R = a", r_cl);
  add("sum eps(a^R) a^L = a", r_cr);
  add("m(S (x) id)Delta(a) = eps(a)1", r_sl);
  add("m(id (x) S)Delta(a) = eps(a)1", r_sr);
  add("sum a^R S(a^L) = eps(a)1", r_sl2);
  add("sum S(a^R) a^L = eps(a)1", r_sr2);

  // Haar trace
  add("sum tau(a^L) a^R = tau(a)1", r_hl);
  add("sum tau(a^R) a^L = tau(a)1", r_hr);
  add("tau(1) = 1", std::abs(haar_of(one) - 1.0));
  double r_trace = 0;
  Matrix gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      r_trace = std::max(r_trace, std::abs(haar_of(a.multiply(basis(i), basis(j))) - haar_of(a.multiply(basis(j), basis(i)))));
      gram(i, j) = haar_of(a.multiply(a.adjoint(basis(i)), basis(j)));
    }
  add("tau(ab) = tau(ba)", r_trace);
  {
    const Matrix herm = 0.5 * (gram + gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    const double lo = es.eigenvalues().minCoeff();
    const double hermiticity = max_abs(gram - gram.adjoint());
    // faithful: tau(x* x) > 0 for x != 0
    report.checks.push_back({"tau faithful positive", std::max(hermiticity, std::max(0.0, -lo)),
                             hermiticity <= tol::kEqual && lo > tol::kRank});
  }

  // distinguished projection
  const Vector& e = e_;
  add("e = e*", max_abs(a.adjoint(e) - e));
  add("e e = e", max_abs(a.multiply(e, e) - e));
  double r_central = 0, r_absorb = 0;
  std::vector<Vector> corner;
  for (int i = 0; i < d; ++i) {
    const Vector bi = basis(i);
    r_central = std::max(r_central, max_abs(a.multiply(bi, e) - a.multiply(e, bi)));
    r_absorb = std::max(r_absorb, max_abs(a.multiply(bi, e) - counit_of(bi) * e));
    corner.push_back(a.multiply(a.multiply(e, bi), e));
  }
  add("e central", r_central);
  add("a e = eps(a) e", r_absorb);
  add("S(e) = e", max_abs(antipode_of(e) - e));
  add("tau(e) = 1/dim A", std::abs(haar_of(e) - 1.0 / d));
  add("eps(e) = 1", std::abs(counit_of(e) - 1.0));
  add("e minimal (dim eAe = 1)", std::abs(Subspace::spanned_by(d, corner).dimension() - 1.0));

  for (int i = 0; i < d; ++i) {
    if (std::abs(counit_of(basis(i)) - 1.0) > tol::kEqual) {
      report.flagged.push_back("eps(a) = 1 holds only for a = e, not for every basis element");
      break;
    }
  }
  return report;
}

Eigen::RowVectorXcd locate_haar_trace(const BasedAlgebra& algebra, const Matrix& comultiplication) {
  const int d = algebra.dimension();
  const Vector& one = algebra.unit();
  Matrix system = Matrix::Zero(2 * d * d, d);
  int row = 0;
  for (int i = 0; i < d; ++i) {
    // sum_k Delta_i(k,l) tau_k - tau_i 1_l = 0
    for (int l = 0; l < d; ++l, ++row) {
      for (int k = 0; k < d; ++k) system(row, k) += comultiplication(k * d + l, i);
      system(row, i) -= one(l);
    }
    // sum_l Delta_i(k,l) tau_l - tau_i 1_k = 0
    for (int k = 0; k < d; ++k, ++row) {
      for (int l = 0; l < d; ++l) system(row, l) += comultiplication(k * d + l, i);
      system(row, i) -= one(k);
    }
  }
  Vector tau = null_space_vector(system, "Haar trace");
  const cplx norm = (tau.transpose() * one)(0);
  if (std::abs(norm) < tol::kRank) fail(ErrorKind::Construction, "Haar trace cannot be normalized");
  return (tau / norm).transpose();
}

Vector locate_distinguished_projection(const BasedAlgebra& algebra, const Eigen::RowVectorXcd& counit) {
  const int d = algebra.dimension();
  Matrix system(d * d, d);
  for (int i = 0; i < d; ++i)
    system.middleRows(i * d, d) = algebra.left_mult(i) - counit(i) * Matrix::Identity(d, d);
  Vector e0 = null_space_vector(system, "distinguished projection");
  const cplx eps = (counit * e0)(0);
  if (std::abs(eps) < tol::kRank)
    fail(ErrorKind::Construction, "distinguished projection: integral has zero counit (not semisimple)");
  Vector e = e0 / eps;
  if ((algebra.multiply(e, e) - e).cwiseAbs().maxCoeff() > tol::kEqual)
    fail(ErrorKind::Construction, "distinguished projection: normalized integral is not idempotent");
  return e;
}

HopfAlgebra group_hopf(const FiniteGroup& group) {
  const int n = group.order();
  const StarAlgebra ambient({n});
  std::vector<AlgebraElement> basis;
  for (int g = 0; g < n; ++g) {
    AlgebraElement lam = ambient.zero();
    for (int h = 0; h < n; ++h) lam.block(0)(group.mul(g, h), h) = 1.0;
    basis.push_back(std::move(lam));
  }
  Matrix delta = Matrix::Zero(n * n, n);
  Eigen::RowVectorXcd counit = Eigen::RowVectorXcd::Ones(n);
  Matrix antipode = Matrix::Zero(n, n);
  Eigen::RowVectorXcd haar = Eigen::RowVectorXcd::Zero(n);
  for (int g = 0; g < n; ++g) {
    delta(g * n + g, g) = 1.0;
    antipode(group.inverse(g), g) = 1.0;
  }
  haar(group.identity()) = 1.0;
  return HopfAlgebra::from_structure(BasedAlgebra(ambient, std::move(basis)), std::move(delta), std::move(counit),
                                     std::move(antipode), std::move(haar), "C*(" + group.name() + ")");
}

HopfAlgebra dual_function_hopf(const FiniteGroup& group) {
  const int n = group.order();
  const StarAlgebra ambient = StarAlgebra::commutative(n);
  std::vector<AlgebraElement> basis;
  for (int g = 0; g < n; ++g) basis.push_back(ambient.matrix_unit(g, 0, 0));
  Matrix delta = Matrix::Zero(n * n, n);
  Eigen::RowVectorXcd counit = Eigen::RowVectorXcd::Zero(n);
  Matrix antipode = Matrix::Zero(n, n);
  Eigen::RowVectorXcd haar = Eigen::RowVectorXcd::Constant(n, 1.0 / n);
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k) delta(h * n + k, group.mul(h, k)) = 1.0;
  for (int g = 0; g < n; ++g) antipode(group.inverse(g), g) = 1.0;
  counit(group.identity()) = 1.0;
  return HopfAlgebra::from_structure(BasedAlgebra(ambient, std::move(basis)), std::move(delta), std::move(counit),
                                     std::move(antipode), std::move(haar), "C(" + group.name() + ")");
}

HopfAction::HopfAction(HopfAlgebra hopf, StarAlgebra algebra, std::vector<Matrix> operators)
    : hopf_(std::move(hopf)), algebra_(std::move(algebra)), ops_(std::move(operators)) {
  const int d = hopf_.dimension();
  const int n = algebra_.dimension();
  if (static_cast<int>(ops_.size()) != d) fail(ErrorKind::Construction, "Hopf action needs one operator per basis element");
  for (const auto& m : ops_)
    if (m.rows() != n || m.cols() != n) fail(ErrorKind::Construction, "Hopf action operator has the wrong shape");

  const BasedAlgebra& a = hopf_.algebra();
  const Matrix id = Matrix::Identity(n, n);
  if (max_abs(operator_of(a.unit()) - id) > tol::kEqual) fail(ErrorKind::Construction, "Hopf action: 1 . x != x");
  const Vector one = algebra_.coords(algebra_.one());
  for (int i = 0; i < d; ++i)
    if ((ops_[static_cast<std::size_t>(i)] * one - hopf_.counit()(i) * one).norm() > tol::kEqual)
      fail(ErrorKind::Construction, "Hopf action: a . 1 != eps(a) 1 for basis element " + std::to_string(i));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Matrix lhs = operator_of(a.left_mult(i).col(j));
      if (max_abs(lhs - ops_[static_cast<std::size_t>(i)] * ops_[static_cast<std::size_t>(j)]) > tol::kEqual)
        fail(ErrorKind::Construction, "Hopf action: ab . x != a . (b . x) for (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
    }

  const auto units = algebra_.matrix_units();
  for (int i = 0; i < d; ++i) {
    const Matrix ci = hopf_.coproduct_of(i);
    for (const auto& x : units) {
      for (const auto& y : units) {
        AlgebraElement rhs = algebra_.zero();
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            if (ci(k, l) != cplx(0.0)) rhs += ci(k, l) * (act_basis(k, x) * act_basis(l, y));
        if (distance(act_basis(i, x * y), rhs) > tol::kEqual)
          fail(ErrorKind::Construction, "Hopf action: a . xy != sum (a^L . x)(a^R . y) for basis element " +
                                            std::to_string(i));
      }
    }
    // (a . x)* = S(a*) . x*
    const Vector s_of_star = hopf_.antipode_of(a.star_matrix().col(i));
    for (const auto& x : units)
      if (distance(adjoint(act_basis(i, x)), act(s_of_star, adjoint(x))) > tol::kEqual)
        fail(ErrorKind::Construction, "Hopf action: (a . x)* != S(a*) . x* for basis element " + std::to_string(i));
  }
}

Matrix HopfAction::operator_of(const Vector& a) const {
  const int n = algebra_.dimension();
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < hopf_.dimension(); ++i)
    if (a(i) != cplx(0.0)) m += a(i) * ops_[static_cast<std::size_t>(i)];
  return m;
}

AlgebraElement HopfAction::act(const Vector& a, const AlgebraElement& x) const {
  return algebra_.element(operator_of(a) * algebra_.coords(x));
}

AlgebraElement HopfAction::act_basis(int i, const AlgebraElement& x) const {
  return algebra_.element(ops_[static_cast<std::size_t>(i)] * algebra_.coords(x));
}

HopfAction hopf_action_from_group_action(const GroupAction& action) {
  return HopfAction(group_hopf(action.group()), action.algebra(), action.maps());
}

HopfAction trivial_hopf_action(const HopfAlgebra& hopf, const StarAlgebra& algebra) {
  std::vector<Matrix> ops;
  for (int i = 0; i < hopf.dimension(); ++i)
    ops.push_back(hopf.counit()(i) * Matrix::Identity(algebra.dimension(), algebra.dimension()));
  return HopfAction(hopf, algebra, std::move(ops));
}

SmashProduct::SmashProduct(HopfAction action, unsigned seed) : action_(std::move(action)) {
  n_ = action_.algebra().dimension();
  d_ = action_.hopf().dimension();
  dim_ = n_ * d_;

  std::vector<Vector> basis;
  std::vector<Vector> stars;
  for (int p = 0; p < dim_; ++p) {
    basis.push_back(basis_vector(p));
    stars.push_back(adjoint(basis.back()));
  }
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < dim_; ++p)
    for (int q = 0; q < dim_; ++q) pairs.emplace_back(p, q);
  if (dim_ > 32) {
    std::mt19937 rng(seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(64);
  }

  // associativity through left-regular matrices: L_{PQ} = L_P L_Q
  std::vector<Matrix> left(static_cast<std::size_t>(dim_), Matrix(dim_, dim_));
  for (int p = 0; p < dim_; ++p)
    for (int q = 0; q < dim_; ++q) left[static_cast<std::size_t>(p)].col(q) = multiply(basis[static_cast<std::size_t>(p)], basis[static_cast<std::size_t>(q)]);
  for (auto [p, q] : pairs) {
    const Vector pq = left[static_cast<std::size_t>(p)].col(q);
    Matrix lpq = Matrix::Zero(dim_, dim_);
    for (int s = 0; s < dim_; ++s)
      if (pq(s) != cplx(0.0)) lpq += pq(s) * left[static_cast<std::size_t>(s)];
    assoc_residual_ = std::max(assoc_residual_, max_abs(lpq - left[static_cast<std::size_t>(p)] * left[static_cast<std::size_t>(q)]));
    const Vector lhs = adjoint(pq);
    const Vector rhs = multiply(stars[static_cast<std::size_t>(q)], stars[static_cast<std::size_t>(p)]);
    star_residual_ = std::max(star_residual_, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  if (assoc_residual_ > tol::kEqual)
    fail(ErrorKind::Construction, "smash product is not associative (residual " + std::to_string(assoc_residual_) + ")");
  if (star_residual_ > tol::kEqual)
    fail(ErrorKind::Construction, "smash product involution is not anti-multiplicative (residual " +
                                      std::to_string(star_residual_) + ")");
}

Vector SmashProduct::basis_vector(int i) const {
  Vector v = Vector::Zero(dim_);
  // basis element m_p (x) b_a: m_p is the tau-orthonormal matrix unit
  v(i) = 1.0;
  return v;
}

AlgebraElement SmashProduct::component(const Vector& xi, int a) const {
  return action_.algebra().element(xi.segment(static_cast<Eigen::Index>(a) * n_, n_));
}

Vector SmashProduct::multiply(const Vector& xi, const Vector& eta) const {
  const HopfAlgebra& h = action_.hopf();
  const BasedAlgebra& alg = h.algebra();
  const StarAlgebra& m = action_.algebra();
  Vector out = Vector::Zero(dim_);
  for (int a = 0; a < d_; ++a) {
    const Vector xa = xi.segment(static_cast<Eigen::Index>(a) * n_, n_);
    if (xa.isZero(0.0)) continue;
    const AlgebraElement x = m.element(xa);
    const Matrix ca = h.coproduct_of(a);
    for (int b = 0; b < d_; ++b) {
      const Vector yb = eta.segment(static_cast<Eigen::Index>(b) * n_, n_);
      if (yb.isZero(0.0)) continue;
      for (int k = 0; k < d_; ++k)
        for (int l = 0; l < d_; ++l) {
          if (ca(k, l) == cplx(0.0)) continue;
          const Vector acted = action_.basis_operator(k) * yb;
          const Vector prod = ca(k, l) * m.coords(x * m.element(acted));
          const auto& lb = alg.left_mult(l);
          for (int c = 0; c < d_; ++c)
            if (lb(c, b) != cplx(0.0)) out.segment(static_cast<Eigen::Index>(c) * n_, n_) += lb(c, b) * prod;
        }
    }
  }
  return out;
}

Vector SmashProduct::adjoint(const Vector& xi) const {
  const HopfAlgebra& h = action_.hopf();
  const Matrix& star = h.algebra().star_matrix();
  const StarAlgebra& m = action_.algebra();
  Vector out = Vector::Zero(dim_);
  for (int a = 0; a < d_; ++a) {
    const Vector xa = xi.segment(static_cast<Eigen::Index>(a) * n_, n_);
    if (xa.isZero(0.0)) continue;
    const Vector x_star = m.coords(satlab::adjoint(m.element(xa)));
    const Matrix ca = h.coproduct_of(a);
    for (int k = 0; k < d_; ++k)
      for (int l = 0; l < d_; ++l) {
        if (ca(k, l) == cplx(0.0)) continue;
        const Vector acted = std::conj(ca(k, l)) * (action_.operator_of(star.col(k)) * x_star);
        for (int c = 0; c < d_; ++c)
          if (star(c, l) != cplx(0.0)) out.segment(static_cast<Eigen::Index>(c) * n_, n_) += star(c, l) * acted;
      }
  }
  return out;
}

Vector SmashProduct::embed_m(const AlgebraElement& x) const {
  const Vector& unit = action_.hopf().algebra().unit();
  const Vector cx = action_.algebra().coords(x);
  Vector out(dim_);
  for (int a = 0; a < d_; ++a) out.segment(static_cast<Eigen::Index>(a) * n_, n_) = unit(a) * cx;
  return out;
}

Vector SmashProduct::embed_a(const Vector& a) const {
  const Vector one = action_.algebra().coords(action_.algebra().one());
  Vector out(dim_);
  for (int c = 0; c < d_; ++c) out.segment(static_cast<Eigen::Index>(c) * n_, n_) = a(c) * one;
  return out;
}

AlgebraElement expectation_E_hopf(const HopfAction& action, const AlgebraElement& x) {
  return action.act(action.hopf().distinguished_projection(), x);
}

AlgebraElement expectation_F_hopf(const SmashProduct& smash, const Vector& xi) {
  const HopfAlgebra& h = smash.action().hopf();
  AlgebraElement out = smash.action().algebra().zero();
  for (int a = 0; a < h.dimension(); ++a) out += h.haar_trace()(a) * smash.component(xi, a);
  return out;
}

}  // namespace satlab
