#include "satlab/index_engine.hpp"

#include <algorithm>
#include <cmath>

#include "satlab/error.hpp"
#include "satlab/ideal_closure.hpp"

namespace satlab {

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double most_negative_eigenvalue(const AlgebraElement& x) {
  double lo = 0.0;
  for (const auto& b : x.blocks()) {
    const Matrix h = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
  }
  return lo;
}

struct HermitianRoots {
  Matrix half;
  Matrix inverse_half;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

HermitianRoots hermitian_roots(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& ev = es.eigenvalues();
  HermitianRoots r;
  r.min_eigenvalue = ev.minCoeff();
  r.max_eigenvalue = ev.maxCoeff();
  if (r.min_eigenvalue <= tol::kRank * std::max(r.max_eigenvalue, 0.0)) return r;
  const Matrix& u = es.eigenvectors();
  const Eigen::VectorXd s = ev.cwiseSqrt();
  r.half = u * s.cast<cplx>().asDiagonal() * u.adjoint();
  r.inverse_half = u * s.cwiseInverse().cast<cplx>().asDiagonal() * u.adjoint();
  return r;
}

}  // namespace

bool ExpectationCheck::ok() const {
  return idempotence <= tol::kEqual && range <= tol::kEqual && unitality <= tol::kEqual &&
         bimodule <= tol::kEqual && self_adjointness <= tol::kEqual && positivity <= tol::kEqual;
}

ExpectationCheck verify_expectation(const ConditionalExpectation& e) {
  const StarAlgebra& alg = e.algebra;
  const int n = alg.dimension();
  if (e.map.rows() != n || e.map.cols() != n || e.range.ambient_dimension() != n)
    fail(ErrorKind::Structural, "conditional expectation has the wrong shape");

  ExpectationCheck c;
  c.idempotence = max_abs(e.map * e.map - e.map);
  const Matrix& q = e.range.basis();
  const Matrix off_range = Matrix::Identity(n, n) - q * q.adjoint();
  c.range = std::max(max_abs(e.map * q - q), max_abs(off_range * e.map));
  const Vector one = alg.coords(alg.one());
  c.unitality = (e.map * one - one).cwiseAbs().maxCoeff();

  const auto units = alg.matrix_units();
  const auto fixed = elements_of(alg, e.range);
  AlgebraElement probe = alg.zero();
  for (const auto& x : units) {
    const AlgebraElement ex = e(x);
    c.self_adjointness = std::max(c.self_adjointness, distance(e(adjoint(x)), adjoint(ex)));
    c.positivity = std::max(c.positivity, -most_negative_eigenvalue(e(adjoint(x) * x)));
    probe += x;
  }
  c.positivity = std::max(c.positivity, -most_negative_eigenvalue(e(adjoint(probe) * probe)));

  const double work = static_cast<double>(fixed.size()) * static_cast<double>(fixed.size()) * units.size();
  const std::size_t stride = work > 40000 ? static_cast<std::size_t>(std::ceil(work / 40000)) : 1;
  std::size_t counter = 0;
  for (const auto& a : fixed)
    for (const auto& b : fixed)
      for (const auto& x : units) {
        if (counter++ % stride != 0) continue;
        c.bimodule = std::max(c.bimodule, distance(e(a * x * b), a * e(x) * b));
      }
  return c;
}

ConditionalExpectation identity_expectation(const StarAlgebra& algebra) {
  const int n = algebra.dimension();
  return {algebra, Matrix::Identity(n, n), Subspace::from_orthonormal(Matrix::Identity(n, n))};
}

ConditionalExpectation group_expectation(const GroupAction& action) {
  return {action.algebra(), expectation_E_matrix(action), fixed_point_algebra(action)};
}

ConditionalExpectation hopf_expectation(const HopfAction& action) {
  const Matrix map = action.operator_of(action.hopf().distinguished_projection());
  std::vector<Vector> cols;
  for (Eigen::Index j = 0; j < map.cols(); ++j) cols.push_back(map.col(j));
  return {action.algebra(), map, Subspace::spanned_by(map.rows(), cols)};
}

QuasiBasis solve_quasi_basis(const ConditionalExpectation& e) {
  const ExpectationCheck check = verify_expectation(e);
  if (!check.ok())
    fail(ErrorKind::Precondition,
         "map is not a conditional expectation (idempotence " + std::to_string(check.idempotence) + ", range " +
             std::to_string(check.range) + ", unit " + std::to_string(check.unitality) + ", bimodule " +
             std::to_string(check.bimodule) + ", adjoint " + std::to_string(check.self_adjointness) +
             ", positivity " + std::to_string(check.positivity) + ")");

  const StarAlgebra& alg = e.algebra;
  const int n = alg.dimension();
  std::vector<AlgebraElement> m;
  m.reserve(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) m.push_back(alg.element(Vector::Unit(n, p)));

  // W is the Gram matrix of tau(E(x^* y)); theta is the frame operator
  Matrix w(n, n);
  Matrix theta = Matrix::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    const AlgebraElement mp_star = adjoint(m[static_cast<std::size_t>(p)]);
    for (int q = 0; q < n; ++q) {
      const AlgebraElement epq = e(mp_star * m[static_cast<std::size_t>(q)]);
      w(p, q) = trace_state(epq);
      theta.col(q) += alg.coords(m[static_cast<std::size_t>(p)] * epq);
    }
  }
  const HermitianRoots wr = hermitian_roots(0.5 * (w + w.adjoint()));
  if (wr.half.size() == 0) fail(ErrorKind::Precondition, "expectation is not faithful: tau o E is degenerate");

  const Matrix st = wr.half * theta * wr.inverse_half;
  const double scale = std::max(1.0, max_abs(st));
  if (max_abs(st - st.adjoint()) > 1e3 * tol::kEqual * scale)
    fail(ErrorKind::Precondition, "frame operator is not self-adjoint for tau o E");
  const Matrix sym = 0.5 * (st + st.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const auto& ev = es.eigenvalues();

  QuasiBasis qb;
  qb.frame_min_eigenvalue = ev.minCoeff();
  qb.frame_max_eigenvalue = ev.maxCoeff();
  if (qb.frame_min_eigenvalue <= tol::kRank * std::max(qb.frame_max_eigenvalue, 0.0))
    fail(ErrorKind::Precondition, "expectation not of index-finite type");
  const Matrix& u = es.eigenvectors();
  const Matrix root_inv = u * ev.cwiseSqrt().cwiseInverse().cast<cplx>().asDiagonal() * u.adjoint();
  const Matrix t = wr.inverse_half * root_inv * wr.half;

  for (int j = 0; j < n; ++j) qb.elements.push_back(alg.element(t.col(j)));
  const auto res = check_quasi_basis(qb.elements, e);
  qb.residual = res.left;
  qb.right_residual = res.right;
  return qb;
}

QuasiBasisResidual check_quasi_basis(const std::vector<AlgebraElement>& candidate,
                                     const ConditionalExpectation& e) {
  QuasiBasisResidual r;
  for (const auto& v : candidate)
    if (v.parent() != e.algebra) fail(ErrorKind::Structural, "quasi-basis element from a different algebra");
  for (const auto& b : e.algebra.matrix_units()) {
    AlgebraElement left = -b;
    AlgebraElement right = -b;
    for (const auto& v : candidate) {
      left += v * e(adjoint(v) * b);
      right += e(b * v) * adjoint(v);
    }
    r.left = std::max(r.left, operator_norm(left));
    r.right = std::max(r.right, operator_norm(right));
  }
  return r;
}

IndexReport compute_index(const std::vector<AlgebraElement>& quasi_basis) {
  if (quasi_basis.empty()) fail(ErrorKind::Precondition, "empty quasi-basis");
  const StarAlgebra& alg = quasi_basis.front().parent();
  AlgebraElement index = alg.zero();
  for (const auto& v : quasi_basis) index += v * adjoint(v);

  IndexReport r;
  r.index_element = index;
  r.self_adjoint_residual = distance(index, adjoint(index));
  r.min_eigenvalue = 0.0;
  bool first = true;
  for (const auto& b : index.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (b + b.adjoint()), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    r.min_eigenvalue = first ? lo : std::min(r.min_eigenvalue, lo);
    first = false;
  }
  r.is_central = is_central(index);
  r.trace_value = trace_state(index).real();
  r.scalar_residual = distance(index, r.trace_value * alg.one());
  if (r.scalar_residual <= tol::kEqual * std::max(1.0, std::abs(r.trace_value))) r.scalar_value = r.trace_value;
  return r;
}

WitnessCheck check_witness_family(const GroupAction& action, const WitnessFamily& family) {
  const FiniteGroup& g = action.group();
  const int order = g.order();
  for (const auto& row : family.members)
    if (static_cast<int>(row.size()) != order)
      fail(ErrorKind::Precondition, "witness family needs one element per group element");
  const AlgebraElement one = action.algebra().one();
  WitnessCheck c;
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      double eq = 0.0;
      AlgebraElement sum = (a == b ? -1.0 : 0.0) * one;
      for (const auto& row : family.members) {
        const auto& bb = row[static_cast<std::size_t>(b)];
        eq += distance(action.apply(a, bb), row[static_cast<std::size_t>(g.mul(a, b))]);
        sum += row[static_cast<std::size_t>(a)] * adjoint(bb);
      }
      c.equivariance_residual = std::max(c.equivariance_residual, eq);
      c.orthogonality_residual = std::max(c.orthogonality_residual, operator_norm(sum));
    }
  return c;
}

WitnessFamily witness_from_quasi_basis(const GroupAction& action, const QuasiBasis& qb) {
  const int order = action.group().order();
  const double w = 1.0 / std::sqrt(static_cast<double>(order));
  WitnessFamily f;
  for (const auto& u : qb.elements) {
    const AlgebraElement b = w * u;
    std::vector<AlgebraElement> row;
    for (int g = 0; g < order; ++g) row.push_back(action.apply(g, b));
    f.members.push_back(std::move(row));
  }
  return f;
}

Vector quasi_basis_phi_one(const CrossedProduct& cp, const QuasiBasis& qb) {
  Vector out = Vector::Zero(cp.dimension());
  for (const auto& u : qb.elements) out += f_pair(cp, u, adjoint(u));
  return out;
}

SaturationVerdict saturation_battery(const GroupAction& action, double epsilon,
                                     const std::optional<WitnessFamily>& extra_witness) {
  if (!(epsilon > 0.0)) fail(ErrorKind::Precondition, "epsilon must be positive");
  const FiniteGroup& group = action.group();
  const int order = group.order();
  const CrossedProduct cp(action);

  SaturationVerdict v;
  v.group_order = order;
  v.epsilon = epsilon;

  // (i)
  const IdealReport ideal = ideal_J_alpha(cp);
  v.crossed_dimension = ideal.full_dimension;
  v.j_alpha_dimension = ideal.dimension;
  v.ideal_full = {ideal.full(), static_cast<double>(ideal.full_dimension - ideal.dimension)};

  // (ii)
  v.quasi_basis = solve_quasi_basis(group_expectation(action));
  v.index = compute_index(v.quasi_basis.elements);
  const double index_res = distance(v.index.index_element, static_cast<double>(order) * action.algebra().one());
  v.index_is_order = {index_res <= tol::kEqual * order, index_res};
  v.index.matches_group_order = v.index_is_order.holds;

  // (iii)
  double orth = 0.0;
  for (int g = 0; g < order; ++g) {
    if (g == group.identity()) continue;
    AlgebraElement sum = action.algebra().zero();
    for (const auto& u : v.quasi_basis.elements) sum += u * action.apply(g, adjoint(u));
    orth = std::max(orth, operator_norm(sum));
  }
  v.qb_orthogonality = {v.index_is_order.holds && orth <= tol::kEqual * order, orth};

  // (iv)
  const WitnessFamily family = witness_from_quasi_basis(action, v.quasi_basis);
  v.witness = check_witness_family(action, family);
  const double witness_res = std::max(v.witness.equivariance_residual, v.witness.orthogonality_residual);
  v.exact_witness = {witness_res <= tol::kEqual * order, witness_res};

  // (v)
  if (extra_witness) v.supplied_witness = check_witness_family(action, *extra_witness);
  auto approx = [&](double eps) {
    return v.witness.within(eps) || (v.supplied_witness && v.supplied_witness->within(eps));
  };
  for (double eps : {1e-2, 1e-4, 1e-6}) v.epsilon_trend.push_back({eps, approx(eps)});
  double best = witness_res;
  if (v.supplied_witness)
    best = std::min(best, std::max(v.supplied_witness->equivariance_residual, v.supplied_witness->orthogonality_residual));
  v.approx_witness = {approx(epsilon), best};

  const Vector phi = quasi_basis_phi_one(cp, v.quasi_basis);
  v.phi_one_projection_residual =
      std::max(cp.norm(cp.multiply(phi, phi) - phi), cp.norm(cp.adjoint(phi) - phi));

  const bool reference = v.ideal_full.holds;
  const std::pair<const char*, bool> others[] = {
      {"(ii) Index(E) = |G|", v.index_is_order.holds},
      {"(iii) quasi-basis orthogonality", v.qb_orthogonality.holds},
      {"(iv) exact witness", v.exact_witness.holds},
      {"(v) approximate witness", v.approx_witness.holds},
  };
  for (const auto& [name, value] : others)
    if (value != reference)
      v.disagreements.push_back(std::string(name) + " is " + (value ? "true" : "false") + " while (i) ideal fullness is " +
                                (reference ? "true" : "false"));
  v.consistent = v.disagreements.empty();
  v.saturated = v.consistent && reference;
  return v;
}

HopfSaturationVerdict hopf_saturation(const HopfAction& action) {
  const SmashProduct smash(action);
  const HopfAlgebra& hopf = action.hopf();
  const StarAlgebra& m = action.algebra();
  const int dim = smash.dimension();

  std::vector<Vector> xs;
  for (const auto& u : m.matrix_units()) xs.push_back(smash.embed_m(u));
  const Vector e = smash.embed_a(hopf.distinguished_projection());
  const Subspace xey =
      detail::ideal_closure(dim, {e}, xs, [&](const Vector& a, const Vector& b) { return smash.multiply(a, b); });

  HopfSaturationVerdict v;
  v.span_dimension = xey.dimension();
  v.full_dimension = dim;
  v.span_full = v.span_dimension == dim;
  v.quasi_basis = solve_quasi_basis(hopf_expectation(action));
  v.index = compute_index(v.quasi_basis.elements);
  const int d = hopf.dimension();
  v.index_residual = distance(v.index.index_element, static_cast<double>(d) * m.one());
  v.index_is_dimension = v.index_residual <= tol::kEqual * d;
  if (v.span_full != v.index_is_dimension)
    fail(ErrorKind::Consistency, "span{xey} has dimension " + std::to_string(v.span_dimension) + " of " +
                                     std::to_string(dim) + " but ||Index(E) - D 1|| = " +
                                     std::to_string(v.index_residual));
  v.saturated = v.span_full;
  return v;
}

RokhlinReport rokhlin_witness_check(const GroupAction& action, const std::vector<AlgebraElement>& family,
                                    double epsilon) {
  const FiniteGroup& g = action.group();
  const int order = g.order();
  if (static_cast<int>(family.size()) != order)
    fail(ErrorKind::Precondition, "Rokhlin family needs one projection per group element");
  const StarAlgebra& alg = action.algebra();

  RokhlinReport r;
  AlgebraElement total = -alg.one();
  for (int a = 0; a < order; ++a) {
    const auto& ea = family[static_cast<std::size_t>(a)];
    r.projection_residual = std::max({r.projection_residual, distance(ea * ea, ea), distance(adjoint(ea), ea)});
    total += ea;
    for (int b = 0; b < order; ++b) {
      if (a != b) r.orthogonality_residual = std::max(r.orthogonality_residual, operator_norm(ea * family[static_cast<std::size_t>(b)]));
      r.equivariance_residual = std::max(
          r.equivariance_residual,
          distance(action.apply(a, family[static_cast<std::size_t>(b)]), family[static_cast<std::size_t>(g.mul(a, b))]));
    }
  }
  r.partition_residual = operator_norm(total);
  r.is_rokhlin = r.projection_residual < epsilon && r.orthogonality_residual < epsilon &&
                 r.partition_residual < epsilon && r.equivariance_residual < epsilon;

  WitnessFamily single;
  single.members.push_back(family);
  r.single_family = check_witness_family(action, single);

  WitnessFamily spread;
  for (int j = 0; j < order; ++j) {
    std::vector<AlgebraElement> row;
    for (int a = 0; a < order; ++a) row.push_back(family[static_cast<std::size_t>(g.mul(a, j))]);
    spread.members.push_back(std::move(row));
  }
  r.spread_family = check_witness_family(action, spread);
  // each residual of the spread family is a sum of at most |G| + 1 Rokhlin defects
  r.condition_v = r.spread_family.within((order + 1) * epsilon);

  if (r.is_rokhlin && epsilon <= 1e-6) r.battery_saturated = saturation_battery(action).saturated;
  r.agrees = !r.is_rokhlin || (r.condition_v && r.battery_saturated.value_or(true));
  return r;
}

}  // namespace satlab
