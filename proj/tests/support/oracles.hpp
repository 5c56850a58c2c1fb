#pragma once

// Independent reference computations used to check library results. Nothing
// here calls the quasi-basis solver, the span routines or the crossed product.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "satlab/algebra.hpp"
#include "satlab/graph_gauge.hpp"
#include "satlab/group_action.hpp"

namespace oracle {

using satlab::AlgebraElement;
using satlab::cplx;
using satlab::Matrix;
using satlab::StarAlgebra;
using satlab::Vector;
using Rng = std::mt19937_64;

inline Matrix gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

inline Matrix random_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(d, d, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < d; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
  return q;
}

inline AlgebraElement random_element(const StarAlgebra& alg, Rng& rng) {
  std::vector<Matrix> blocks;
  for (int d : alg.block_dims()) blocks.push_back(gaussian(d, d, rng));
  return AlgebraElement(alg, blocks);
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Largest singular value per block, maximized; via eigenvalues of x^* x.
inline double norm(const AlgebraElement& x) {
  double out = 0.0;
  for (const auto& b : x.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(b.adjoint() * b);
    out = std::max(out, std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff())));
  }
  return out;
}

inline double diff(const AlgebraElement& x, const AlgebraElement& y) {
  double out = 0.0;
  for (std::size_t i = 0; i < x.blocks().size(); ++i) out = std::max(out, max_abs(x.blocks()[i] - y.blocks()[i]));
  return out;
}

/// Rank of a set of vectors by full SVD.
inline int rank(const std::vector<Vector>& vs, double rel = 1e-9) {
  if (vs.empty()) return 0;
  Matrix m(vs.front().size(), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vs[i];
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return r;
}

/// Plain row-major flattening of all blocks, no scaling.
inline Vector flatten(const AlgebraElement& x) {
  std::vector<cplx> out;
  for (const auto& b : x.blocks())
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      for (Eigen::Index c = 0; c < b.cols(); ++c) out.push_back(b(r, c));
  return Eigen::Map<Vector>(out.data(), static_cast<Eigen::Index>(out.size()));
}

inline AlgebraElement unflatten(const StarAlgebra& alg, const Vector& v) {
  std::vector<Matrix> blocks;
  Eigen::Index k = 0;
  for (int d : alg.block_dims()) {
    Matrix b(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) b(r, c) = v(k++);
    blocks.push_back(b);
  }
  return AlgebraElement(alg, blocks);
}

/// Plain (unscaled) matrix units.
inline std::vector<AlgebraElement> units(const StarAlgebra& alg) {
  std::vector<AlgebraElement> out;
  const int n = alg.dimension();
  for (int p = 0; p < n; ++p) out.push_back(unflatten(alg, Vector::Unit(n, p)));
  return out;
}

inline cplx trace(const AlgebraElement& x) {
  cplx t = 0.0;
  int total = 0;
  for (const auto& b : x.blocks()) {
    t += b.trace();
    total += static_cast<int>(b.rows());
  }
  return t / static_cast<double>(total);
}

inline AlgebraElement conj(const AlgebraElement& x, const std::vector<Matrix>& u) {
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < u.size(); ++i) blocks.push_back(u[i] * x.blocks()[i] * u[i].adjoint());
  return AlgebraElement(x.parent(), blocks);
}

inline AlgebraElement star(const AlgebraElement& x) {
  std::vector<Matrix> blocks;
  for (const auto& b : x.blocks()) blocks.push_back(b.adjoint());
  return AlgebraElement(x.parent(), blocks);
}

inline AlgebraElement times(const AlgebraElement& x, const AlgebraElement& y) {
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < x.blocks().size(); ++i) blocks.push_back(x.blocks()[i] * y.blocks()[i]);
  return AlgebraElement(x.parent(), blocks);
}

/// A strict unitary representation given blockwise: reps[g][block].
using Rep = std::vector<std::vector<Matrix>>;

inline AlgebraElement rep_element(const StarAlgebra& alg, const std::vector<Matrix>& blocks) {
  return AlgebraElement(alg, blocks);
}

/// E(x) = (1/|G|) sum_g u_g x u_g^*
inline AlgebraElement average(const Rep& rep, const AlgebraElement& x) {
  Vector acc = Vector::Zero(x.parent().dimension());
  for (const auto& u : rep) acc += flatten(conj(x, u));
  return unflatten(x.parent(), acc / static_cast<double>(rep.size()));
}

/// Watatani index through the quasi-basis pair {(S^{-1} m_j, m_j)}, where
/// S b = sum_j m_j E(m_j^* b) over the plain matrix units. S is right-module
/// linear over the range of E, so sum_j S^{-1}(m_j) E(m_j^* b) = b.
inline AlgebraElement index(const StarAlgebra& alg, const std::function<AlgebraElement(const AlgebraElement&)>& e) {
  const auto m = units(alg);
  const int n = alg.dimension();
  // tau-orthonormal version of the matrix units: m_j * sqrt(sum d)
  const double scale = std::sqrt(static_cast<double>(alg.hilbert_dimension()));
  Matrix s = Matrix::Zero(n, n);
  for (int q = 0; q < n; ++q) {
    Vector col = Vector::Zero(n);
    for (int j = 0; j < n; ++j) {
      const AlgebraElement mj = scale * m[static_cast<std::size_t>(j)];
      col += flatten(times(mj, e(times(star(mj), m[static_cast<std::size_t>(q)]))));
    }
    s.col(q) = col;
  }
  const Matrix sinv = s.fullPivLu().inverse();
  Vector acc = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    const AlgebraElement mj = scale * m[static_cast<std::size_t>(j)];
    const AlgebraElement sm = unflatten(alg, sinv * flatten(mj));
    acc += flatten(times(sm, star(mj)));
  }
  return unflatten(alg, acc);
}

/// All subgroups by closing every subset; exponential, fine for |G| <= 8.
inline std::set<std::vector<int>> subgroups(const satlab::FiniteGroup& g) {
  std::set<std::vector<int>> out;
  const int n = g.order();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    if (s.empty()) continue;
    bool closed = true;
    for (int a : s)
      for (int b : s)
        if (!std::binary_search(s.begin(), s.end(), g.mul(a, g.inverse(b)))) closed = false;
    if (closed) out.insert(s);
  }
  return out;
}

/// All composable edge sequences of length n by exhaustive search.
inline std::vector<std::vector<int>> walks(const satlab::Graph& g, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e < g.edge_count(); ++e)
      if (cur.empty() || g.edge(cur.back()).range == g.edge(e).source) {
        cur.push_back(e);
        rec();
        cur.pop_back();
      }
  };
  if (n > 0) rec();
  return out;
}

/// Cyclic representation k -> w^k for a unitary with w^n = 1, built as
/// v diag(omega^{k_i}) v^* per block.
inline Rep cyclic_rep(const StarAlgebra& alg, int n, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<Matrix> w;
  for (int d : alg.block_dims()) {
    const Matrix v = random_unitary(d, rng);
    Vector diag(d);
    for (int i = 0; i < d; ++i) diag(i) = std::polar(1.0, 2.0 * std::numbers::pi * pick(rng) / n);
    w.push_back(v * diag.asDiagonal() * v.adjoint());
  }
  Rep rep;
  std::vector<Matrix> power;
  for (int d : alg.block_dims()) power.push_back(Matrix::Identity(d, d));
  for (int k = 0; k < n; ++k) {
    rep.push_back(power);
    for (std::size_t b = 0; b < power.size(); ++b) power[b] = power[b] * w[b];
  }
  return rep;
}

/// Klein four group representation (a, b) -> s^a t^b with commuting
/// involutions s, t, ordered to match FiniteGroup::direct_product(Z2, Z2).
inline Rep klein_rep(const StarAlgebra& alg, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Matrix> s, t;
  for (int d : alg.block_dims()) {
    const Matrix v = random_unitary(d, rng);
    Vector ds(d), dt(d);
    for (int i = 0; i < d; ++i) {
      ds(i) = coin(rng) ? 1.0 : -1.0;
      dt(i) = coin(rng) ? 1.0 : -1.0;
    }
    s.push_back(v * ds.asDiagonal() * v.adjoint());
    t.push_back(v * dt.asDiagonal() * v.adjoint());
  }
  Rep rep;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      std::vector<Matrix> u;
      for (std::size_t k = 0; k < s.size(); ++k) {
        Matrix m = Matrix::Identity(s[k].rows(), s[k].cols());
        if (a) m = m * s[k];
        if (b) m = m * t[k];
        u.push_back(m);
      }
      rep.push_back(u);
    }
  return rep;
}

/// Independent prefix rule: (a b^*)(c d^*) is a c' d^* when c = b c',
/// a (d b')^* when b = c b', and zero otherwise. Path::start is the source.
inline bool is_prefix(const satlab::Path& p, const satlab::Path& q) {
  return p.start == q.start && p.edges.size() <= q.edges.size() &&
         std::equal(p.edges.begin(), p.edges.end(), q.edges.begin());
}

inline satlab::Path append(const satlab::Graph& g, const satlab::Path& p, const std::vector<int>& tail) {
  if (tail.empty()) return p;
  satlab::Path out = p;
  if (p.edges.empty()) out.start = g.edge(tail.front()).source;
  out.edges.insert(out.edges.end(), tail.begin(), tail.end());
  return out;
}

inline std::optional<satlab::PathMonomial> prefix_product(const satlab::Graph& g, const satlab::PathMonomial& x,
                                                          const satlab::PathMonomial& y) {
  const satlab::Path& b = x.beta;
  const satlab::Path& c = y.alpha;
  if (is_prefix(b, c)) {
    const std::vector<int> rest(c.edges.begin() + b.length(), c.edges.end());
    return satlab::PathMonomial{append(g, x.alpha, rest), y.beta, x.degree + y.degree};
  }
  if (is_prefix(c, b)) {
    const std::vector<int> rest(b.edges.begin() + c.length(), b.edges.end());
    return satlab::PathMonomial{x.alpha, append(g, y.beta, rest), x.degree + y.degree};
  }
  return std::nullopt;
}

/// z^n s_a s_b^* after the gauge map and the involution, without the library.
inline satlab::PathMonomial gauge(const satlab::PathMonomial& m) {
  return {m.alpha, m.beta, m.degree + m.alpha.length() - m.beta.length()};
}

inline satlab::PathMonomial star(const satlab::PathMonomial& m) { return {m.beta, m.alpha, -m.degree}; }

}  // namespace oracle
