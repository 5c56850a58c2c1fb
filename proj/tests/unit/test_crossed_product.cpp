#include <doctest.h>

#include "satlab/crossed_product.hpp"
#include "satlab/error.hpp"
#include "support/oracles.hpp"

using namespace satlab;

namespace {

AlgebraElement diag2(const StarAlgebra& alg, cplx a, cplx b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return AlgebraElement(alg, {m});
}

struct Inner {
  oracle::Rep rep;
  GroupAction action;
};

Inner inner(const StarAlgebra& alg, const FiniteGroup& g, oracle::Rep rep) {
  std::vector<AlgebraElement> us;
  for (const auto& u : rep) us.push_back(AlgebraElement(alg, u));
  return {rep, make_inner_action(alg, g, us)};
}

Inner sign() {
  const StarAlgebra m2({2});
  Matrix w = Matrix::Identity(2, 2);
  w(1, 1) = -1.0;
  return inner(m2, FiniteGroup::cyclic(2), {{Matrix::Identity(2, 2)}, {w}});
}

Inner z3_rotation() {
  const StarAlgebra m2({2});
  const cplx l = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  Matrix w = Matrix::Zero(2, 2);
  w(0, 0) = l;
  w(1, 1) = std::conj(l);
  return inner(m2, FiniteGroup::cyclic(3), {{Matrix::Identity(2, 2)}, {w}, {w * w}});
}

/// Coefficient-level product sum_{g,h} x_g alpha_g(y_h) lambda_{gh}.
std::vector<AlgebraElement> oracle_product(const Inner& in, const std::vector<AlgebraElement>& x,
                                           const std::vector<AlgebraElement>& y) {
  const FiniteGroup& g = in.action.group();
  std::vector<AlgebraElement> out(x.size(), in.action.algebra().zero());
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) {
      const auto& u = in.rep[static_cast<std::size_t>(a)];
      out[static_cast<std::size_t>(g.mul(a, b))] +=
          oracle::times(x[static_cast<std::size_t>(a)], oracle::conj(y[static_cast<std::size_t>(b)], u));
    }
  return out;
}

std::vector<AlgebraElement> coeffs(const CrossedProduct& cp, const Vector& xi) {
  std::vector<AlgebraElement> out;
  for (int g = 0; g < cp.group_order(); ++g) out.push_back(cp.coefficient(xi, g));
  return out;
}

Vector assemble(const CrossedProduct& cp, const std::vector<AlgebraElement>& xs) {
  Vector v = Vector::Zero(cp.dimension());
  for (int g = 0; g < cp.group_order(); ++g) v += cp.monomial(xs[static_cast<std::size_t>(g)], g);
  return v;
}

/// dim span{ f_{b_j, b_k} } computed from the oracle action and an SVD.
int oracle_j_alpha(const Inner& in) {
  const StarAlgebra& alg = in.action.algebra();
  const int n = in.action.group().order();
  std::vector<Vector> vs;
  for (const auto& x : oracle::units(alg))
    for (const auto& y : oracle::units(alg)) {
      Vector v(static_cast<Eigen::Index>(n) * alg.dimension());
      for (int g = 0; g < n; ++g)
        v.segment(static_cast<Eigen::Index>(g) * alg.dimension(), alg.dimension()) =
            oracle::flatten(oracle::times(x, oracle::conj(y, in.rep[static_cast<std::size_t>(g)])));
      vs.push_back(v);
    }
  return oracle::rank(vs);
}

std::vector<Inner> suite(oracle::Rng& rng) {
  std::vector<Inner> out;
  for (const auto& dims : std::vector<std::vector<int>>{{2}, {2, 1}, {1, 1}})
    for (int n : {2, 3, 4}) {
      const StarAlgebra alg(dims);
      out.push_back(inner(alg, FiniteGroup::cyclic(n), oracle::cyclic_rep(alg, n, rng)));
    }
  const StarAlgebra m2({2});
  out.push_back(inner(m2, FiniteGroup::named("Z2xZ2"), oracle::klein_rep(m2, rng)));
  return out;
}

}  // namespace

TEST_CASE("crossed product dimensions") {
  const StarAlgebra m2({2});
  CHECK(CrossedProduct(trivial_action(m2, FiniteGroup::cyclic(1))).dimension() == 4);
  const StarAlgebra c({1});
  const CrossedProduct group_algebra(trivial_action(c, FiniteGroup::cyclic(2)));
  CHECK(group_algebra.dimension() == 2);
  // commutative: lambda_1 lambda_1 = 1
  const Vector l = group_algebra.lambda(1);
  CHECK(oracle::max_abs(group_algebra.multiply(l, l) - group_algebra.one()) < 1e-14);
  CHECK(CrossedProduct(sign().action).dimension() == 8);
  CHECK(CrossedProduct(z3_rotation().action).dimension() == 12);
}

TEST_CASE("property: product and involution follow the coefficient rules") {
  oracle::Rng rng(41);
  for (const Inner& in : suite(rng)) {
    const CrossedProduct cp(in.action);
    CHECK(cp.homomorphism_residual() <= tol::kEqual);
    for (int t = 0; t < 3; ++t) {
      std::vector<AlgebraElement> x, y;
      for (int g = 0; g < cp.group_order(); ++g) {
        x.push_back(oracle::random_element(cp.algebra(), rng));
        y.push_back(oracle::random_element(cp.algebra(), rng));
      }
      const Vector xi = assemble(cp, x), eta = assemble(cp, y);
      const auto prod = coeffs(cp, cp.multiply(xi, eta));
      const auto expect = oracle_product(in, x, y);
      for (int g = 0; g < cp.group_order(); ++g) CHECK(oracle::diff(prod[static_cast<std::size_t>(g)],
                                                                   expect[static_cast<std::size_t>(g)]) < 1e-10);
      // (x lambda_g)^* = alpha_{g^{-1}}(x^*) lambda_{g^{-1}}
      const FiniteGroup& G = cp.group();
      for (int g = 0; g < G.order(); ++g) {
        const Vector m = cp.monomial(x[0], g);
        const int gi = G.inverse(g);
        const AlgebraElement want = oracle::conj(oracle::star(x[0]), in.rep[static_cast<std::size_t>(gi)]);
        CHECK(oracle::diff(cp.coefficient(cp.adjoint(m), gi), want) < 1e-12);
      }
      // represented copy is multiplicative and norms dominate coefficients
      CHECK(oracle::max_abs(cp.represent(cp.multiply(xi, eta)) - cp.represent(xi) * cp.represent(eta)) < 1e-9);
      const double nrm = cp.norm(xi);
      for (const auto& c : x) CHECK(oracle::norm(c) <= nrm + 1e-8);
    }
  }
}

TEST_CASE("distinguished projection and expectations") {
  const Inner in = sign();
  const CrossedProduct cp(in.action);
  const Vector e = distinguished_projection(cp);
  CHECK(oracle::max_abs(cp.multiply(e, e) - e) < 1e-14);
  for (int h = 0; h < 2; ++h) {
    CHECK(oracle::max_abs(cp.multiply(cp.lambda(h), e) - e) < 1e-14);
    CHECK(oracle::max_abs(cp.multiply(e, cp.lambda(h)) - e) < 1e-14);
  }
  const StarAlgebra& m = cp.algebra();
  CHECK(oracle::diff(expectation_F(cp, e), 0.5 * m.one()) < 1e-14);
  CHECK(oracle::diff(expectation_E(in.action, m.matrix_unit(0, 0, 1)), m.zero()) < 1e-14);
  const AlgebraElement d = diag2(m, 2, 3);
  CHECK(oracle::diff(expectation_E(in.action, d), d) < 1e-14);

  oracle::Rng rng(42);
  const std::vector<AlgebraElement> x{oracle::random_element(m, rng), oracle::random_element(m, rng)};
  const Vector xi = assemble(cp, x);
  for (int g = 0; g < 2; ++g)
    CHECK(oracle::diff(expectation_F(cp, cp.multiply(xi, cp.lambda(cp.group().inverse(g)))), x[static_cast<std::size_t>(g)]) <
          1e-12);
  const CrossedProduct trivial(trivial_action(m, FiniteGroup::cyclic(1)));
  CHECK(oracle::max_abs(distinguished_projection(trivial) - trivial.one()) < 1e-15);
}

TEST_CASE("property: f_pair identities") {
  oracle::Rng rng(43);
  for (const Inner& in : suite(rng)) {
    const CrossedProduct cp(in.action);
    const StarAlgebra& m = cp.algebra();
    CHECK(oracle::max_abs(f_pair(cp, m.one(), m.one()) - distinguished_projection(cp)) < 1e-14);
    const Vector e = distinguished_projection(cp);
    for (int t = 0; t < 3; ++t) {
      const AlgebraElement x = oracle::random_element(m, rng), y = oracle::random_element(m, rng);
      const Vector f = f_pair(cp, x, y);
      CHECK(oracle::max_abs(cp.adjoint(f) - f_pair(cp, adjoint(y), adjoint(x))) < 1e-12);
      CHECK(oracle::max_abs(cp.multiply(f_pair(cp, x, m.one()), f_pair(cp, m.one(), y)) - f) < 1e-12);
      CHECK(oracle::max_abs(cp.multiply(cp.multiply(cp.embed(x), e), cp.embed(y)) - f) < 1e-12);
    }
  }
}

TEST_CASE("ideal J_alpha on the reference actions") {
  const StarAlgebra m2({2});
  const IdealReport trivial = ideal_J_alpha(CrossedProduct(trivial_action(m2, FiniteGroup::cyclic(2))));
  CHECK(trivial.dimension == 4);
  CHECK(trivial.full_dimension == 8);
  CHECK_FALSE(trivial.full());
  const IdealReport s = ideal_J_alpha(CrossedProduct(sign().action));
  CHECK(s.dimension == 8);
  CHECK(s.full());
  const IdealReport r = ideal_J_alpha(CrossedProduct(z3_rotation().action));
  CHECK(r.dimension < 12);
  CHECK(r.dimension == oracle_j_alpha(z3_rotation()));
}

TEST_CASE("property: J_alpha agrees with brute force and is a *-closed ideal") {
  oracle::Rng rng(44);
  for (const Inner& in : suite(rng)) {
    const CrossedProduct cp(in.action);
    const IdealReport j = ideal_J_alpha(cp);
    CHECK(j.dimension == oracle_j_alpha(in));
    CHECK(j.generated_dimension == j.dimension);
    CHECK(j.polarized_dimension == j.dimension);
    for (int k = 0; k < j.span.dimension(); ++k) {
      const Vector y = j.span.basis_vector(k);
      CHECK(j.span.residual(cp.adjoint(y)) <= tol::kEqual);
      for (int g = 0; g < cp.group_order(); ++g) {
        CHECK(j.span.residual(cp.multiply(cp.lambda(g), y)) <= tol::kEqual);
        CHECK(j.span.residual(cp.multiply(y, cp.lambda(g))) <= tol::kEqual);
      }
      for (const auto& b : cp.algebra().matrix_units()) {
        CHECK(j.span.residual(cp.multiply(cp.embed(b), y)) <= tol::kEqual);
        CHECK(j.span.residual(cp.multiply(y, cp.embed(b))) <= tol::kEqual);
      }
    }
  }
}

TEST_CASE("hereditary corner") {
  const StarAlgebra m2({2});
  const CornerReport trivial = hereditary_corner(CrossedProduct(trivial_action(m2, FiniteGroup::cyclic(2))));
  CHECK(trivial.corner_dimension == 4);
  CHECK(trivial.isomorphic);
  const CornerReport swap =
      hereditary_corner(CrossedProduct(make_permutation_action(2, FiniteGroup::cyclic(2), {{0, 1}, {1, 0}})));
  CHECK(swap.corner_dimension == 1);
  const CornerReport s = hereditary_corner(CrossedProduct(sign().action));
  CHECK(s.corner_dimension == 2);
  CHECK(s.isomorphic);
}

TEST_CASE("property: the corner is isomorphic to the fixed point algebra") {
  oracle::Rng rng(45);
  for (const Inner& in : suite(rng)) {
    const CornerReport c = hereditary_corner(CrossedProduct(in.action));
    CHECK(c.corner_dimension == fixed_point_algebra(in.action).dimension());
    CHECK(c.image_dimension == c.corner_dimension);
    CHECK(c.multiplicativity_residual <= tol::kEqual);
    CHECK(c.involution_residual <= tol::kEqual);
    CHECK(c.isomorphic);
  }
}

TEST_CASE("explicit unit decomposition for the sign action") {
  const CrossedProduct cp(sign().action);
  const StarAlgebra& m = cp.algebra();
  const double r = 1.0 / std::sqrt(2.0);
  Matrix x1 = Matrix::Zero(2, 2), x2 = Matrix::Zero(2, 2);
  x1(0, 0) = x1(0, 1) = r;
  x2(1, 0) = x2(1, 1) = r;
  CHECK(unit_decomposition_residual(cp, {AlgebraElement(m, {x1}), AlgebraElement(m, {x2})}) <= 1e-9);
  CHECK(unit_decomposition_residual(cp, {m.one()}) > 0.5);
}
