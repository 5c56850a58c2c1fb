#include "satlab/group_action.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "satlab/error.hpp"

namespace satlab {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {
  const int n = order();
  if (n < 1) fail(ErrorKind::Construction, "group table is empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) fail(ErrorKind::Construction, "group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) fail(ErrorKind::Construction, "group table entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) fail(ErrorKind::Construction, "group table has no identity");
  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (mul(g, h) == identity_ && mul(h, g) == identity_) {
        inverse_[static_cast<std::size_t>(g)] = h;
        break;
      }
    }
    if (inverse_[static_cast<std::size_t>(g)] < 0)
      fail(ErrorKind::Construction, "group element " + std::to_string(g) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          fail(ErrorKind::Construction, "group table is not associative at (" + std::to_string(a) + "," +
                                            std::to_string(b) + "," + std::to_string(c) + ")");
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) fail(ErrorKind::Construction, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return FiniteGroup(std::move(t), "Z" + std::to_string(n));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  const int n = na * nb;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
          a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return FiniteGroup(std::move(t), a.name() + "x" + b.name());
}

namespace {

FiniteGroup from_permutations(std::vector<std::vector<int>> perms, std::string name) {
  std::sort(perms.begin(), perms.end());
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const auto& pa = perms[static_cast<std::size_t>(a)];
      const auto& pb = perms[static_cast<std::size_t>(b)];
      std::vector<int> c(pa.size());
      for (std::size_t i = 0; i < pa.size(); ++i) c[i] = pa[static_cast<std::size_t>(pb[i])];
      auto it = std::lower_bound(perms.begin(), perms.end(), c);
      if (it == perms.end() || *it != c) fail(ErrorKind::Construction, "permutation set is not closed");
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = static_cast<int>(it - perms.begin());
    }
  }
  return FiniteGroup(std::move(t), std::move(name));
}

}  // namespace

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 6) fail(ErrorKind::Capacity, "symmetric group degree must be in 1..6");
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return from_permutations(std::move(perms), "S" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) fail(ErrorKind::Construction, "dihedral group needs n >= 1");
  // symmetries of the n-gon, as permutations of its vertices (n = 1, 2 handled by
  // the regular representation of the abstract group)
  if (n <= 2) {
    auto g = n == 1 ? cyclic(2) : direct_product(cyclic(2), cyclic(2));
    return FiniteGroup(g.table(), "D" + std::to_string(n));
  }
  std::vector<std::vector<int>> perms;
  for (int k = 0; k < n; ++k) {
    std::vector<int> rot(static_cast<std::size_t>(n)), ref(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      rot[static_cast<std::size_t>(i)] = (i + k) % n;
      ref[static_cast<std::size_t>(i)] = ((k - i) % n + n) % n;
    }
    perms.push_back(rot);
    perms.push_back(ref);
  }
  return from_permutations(std::move(perms), "D" + std::to_string(n));
}

FiniteGroup FiniteGroup::named(std::string_view name) {
  const auto x = name.find('x');
  if (x != std::string_view::npos) {
    return direct_product(named(name.substr(0, x)), named(name.substr(x + 1)));
  }
  if (name.size() < 2) fail(ErrorKind::Schema, "unknown group name '" + std::string(name) + "'");
  int n = 0;
  const auto digits = name.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || n < 1)
    fail(ErrorKind::Schema, "unknown group name '" + std::string(name) + "'");
  switch (name.front()) {
    case 'Z': return cyclic(n);
    case 'S': return symmetric(n);
    case 'D': return dihedral(n);
    default: fail(ErrorKind::Schema, "unknown group name '" + std::string(name) + "'");
  }
}

std::vector<int> generated_subgroup(const FiniteGroup& group, const std::vector<int>& generators) {
  std::set<int> members{group.identity()};
  std::vector<int> frontier{group.identity()};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int h : frontier) {
      for (int g : generators) {
        const int p = group.mul(h, g);
        if (members.insert(p).second) next.push_back(p);
      }
    }
    frontier = std::move(next);
  }
  return {members.begin(), members.end()};
}

SubgroupLattice enumerate_subgroups(const FiniteGroup& group, int order_bound) {
  if (group.order() > order_bound)
    fail(ErrorKind::Capacity, "subgroup enumeration supports |G| <= " + std::to_string(order_bound) +
                                  ", got |G| = " + std::to_string(group.order()));
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue{{group.identity()}};
  seen.insert(queue.front());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto h = queue[i];
    for (int g = 0; g < group.order(); ++g) {
      if (std::binary_search(h.begin(), h.end(), g)) continue;
      auto gens = h;
      gens.push_back(g);
      auto k = generated_subgroup(group, gens);
      if (seen.insert(k).second) queue.push_back(std::move(k));
    }
  }
  std::stable_sort(queue.begin(), queue.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return SubgroupLattice{std::move(queue)};
}

GroupAction::GroupAction(FiniteGroup group, StarAlgebra algebra, std::vector<Matrix> maps)
    : group_(std::move(group)), algebra_(std::move(algebra)), maps_(std::move(maps)) {
  const int n = algebra_.dimension();
  if (static_cast<int>(maps_.size()) != group_.order())
    fail(ErrorKind::Construction, "action needs one map per group element");
  for (const auto& m : maps_)
    if (m.rows() != n || m.cols() != n) fail(ErrorKind::Construction, "action map has the wrong shape");

  const auto units = algebra_.matrix_units();
  const AlgebraElement one = algebra_.one();
  for (int g = 0; g < group_.order(); ++g) {
    const std::string tag = "alpha_" + std::to_string(g);
    if (distance(apply(g, one), one) > tol::kEqual)
      fail(ErrorKind::Construction, tag + " is not unital");
    std::vector<AlgebraElement> images;
    images.reserve(units.size());
    for (const auto& u : units) images.push_back(apply(g, u));
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (distance(apply(g, adjoint(units[i])), adjoint(images[i])) > tol::kEqual)
        fail(ErrorKind::Construction, tag + " does not preserve adjoints");
      for (std::size_t j = 0; j < units.size(); ++j) {
        if (distance(apply(g, units[i] * units[j]), images[i] * images[j]) > tol::kEqual)
          fail(ErrorKind::Construction, tag + " is not multiplicative on basis pair (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
      }
    }
  }
  const Matrix id = Matrix::Identity(n, n);
  if ((map(group_.identity()) - id).cwiseAbs().maxCoeff() > tol::kEqual)
    fail(ErrorKind::Construction, "alpha of the identity is not the identity map");
  for (int g = 0; g < group_.order(); ++g)
    for (int h = 0; h < group_.order(); ++h)
      if ((map(g) * map(h) - map(group_.mul(g, h))).cwiseAbs().maxCoeff() > tol::kEqual)
        fail(ErrorKind::Construction, "alpha_" + std::to_string(g) + " o alpha_" + std::to_string(h) +
                                          " != alpha_" + std::to_string(group_.mul(g, h)));
}

AlgebraElement GroupAction::apply(int g, const AlgebraElement& x) const {
  return algebra_.element(map(g) * algebra_.coords(x));
}

Matrix automorphism_matrix(const StarAlgebra& algebra, const std::vector<int>& block_perm,
                           const AlgebraElement& u) {
  const int k = algebra.block_count();
  if (static_cast<int>(block_perm.size()) != k)
    fail(ErrorKind::Construction, "block permutation has the wrong length");
  std::vector<int> check(block_perm);
  std::sort(check.begin(), check.end());
  for (int i = 0; i < k; ++i) {
    if (check[static_cast<std::size_t>(i)] != i) fail(ErrorKind::Construction, "block map is not a permutation");
    if (algebra.block_dim(block_perm[static_cast<std::size_t>(i)]) != algebra.block_dim(i))
      fail(ErrorKind::Construction, "block permutation mixes blocks of different size");
  }
  if (!is_unitary(u)) fail(ErrorKind::Construction, "automorphism: u is not unitary");
  return linear_map_matrix(algebra, [&](const AlgebraElement& x) {
    AlgebraElement moved = algebra.zero();
    for (int i = 0; i < k; ++i) moved.block(block_perm[static_cast<std::size_t>(i)]) = x.block(i);
    return u * moved * adjoint(u);
  });
}

GroupAction make_inner_action(const StarAlgebra& algebra, const FiniteGroup& group,
                              const std::vector<AlgebraElement>& unitaries) {
  if (static_cast<int>(unitaries.size()) != group.order())
    fail(ErrorKind::Construction, "inner action needs one unitary per group element");
  for (int g = 0; g < group.order(); ++g) {
    const auto& u = unitaries[static_cast<std::size_t>(g)];
    if (u.parent() != algebra) fail(ErrorKind::Construction, "unitary belongs to another algebra");
    if (!is_unitary(u)) fail(ErrorKind::Construction, "u_" + std::to_string(g) + " is not unitary");
  }
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h)
      if (distance(unitaries[static_cast<std::size_t>(g)] * unitaries[static_cast<std::size_t>(h)],
                   unitaries[static_cast<std::size_t>(group.mul(g, h))]) > tol::kEqual)
        fail(ErrorKind::Construction, "u_g u_h != u_gh for (g,h) = (" + std::to_string(g) + "," +
                                          std::to_string(h) + ")");
  std::vector<int> identity_perm(static_cast<std::size_t>(algebra.block_count()));
  std::iota(identity_perm.begin(), identity_perm.end(), 0);
  std::vector<Matrix> maps;
  for (const auto& u : unitaries) maps.push_back(automorphism_matrix(algebra, identity_perm, u));
  return GroupAction(group, algebra, std::move(maps));
}

void check_permutations(int points, const FiniteGroup& group, const std::vector<std::vector<int>>& perms) {
  if (static_cast<int>(perms.size()) != group.order())
    fail(ErrorKind::Construction, "permutation action needs one permutation per group element");
  for (const auto& p : perms) {
    if (static_cast<int>(p.size()) != points) fail(ErrorKind::Construction, "permutation has the wrong length");
    std::vector<int> s(p);
    std::sort(s.begin(), s.end());
    for (int i = 0; i < points; ++i)
      if (s[static_cast<std::size_t>(i)] != i) fail(ErrorKind::Construction, "map is not a permutation of X");
  }
  for (int g = 0; g < group.order(); ++g)
    for (int h = 0; h < group.order(); ++h)
      for (int x = 0; x < points; ++x)
        if (perms[static_cast<std::size_t>(g)][static_cast<std::size_t>(perms[static_cast<std::size_t>(h)][static_cast<std::size_t>(x)])] !=
            perms[static_cast<std::size_t>(group.mul(g, h))][static_cast<std::size_t>(x)])
          fail(ErrorKind::Construction, "permutations are not a homomorphism at (g,h) = (" + std::to_string(g) +
                                            "," + std::to_string(h) + ")");
}

GroupAction make_permutation_action(int points, const FiniteGroup& group,
                                    const std::vector<std::vector<int>>& perms) {
  check_permutations(points, group, perms);
  const StarAlgebra cx = StarAlgebra::commutative(points);
  std::vector<Matrix> maps;
  for (const auto& p : perms) {
    // alpha_g(delta_y) = delta_{g y}
    Matrix m = Matrix::Zero(points, points);
    for (int y = 0; y < points; ++y) m(p[static_cast<std::size_t>(y)], y) = 1.0;
    maps.push_back(std::move(m));
  }
  return GroupAction(group, cx, std::move(maps));
}

GroupAction trivial_action(const StarAlgebra& algebra, const FiniteGroup& group) {
  std::vector<Matrix> maps(static_cast<std::size_t>(group.order()),
                           Matrix::Identity(algebra.dimension(), algebra.dimension()));
  return GroupAction(group, algebra, std::move(maps));
}

Subspace fixed_point_algebra(const GroupAction& action) {
  const int n = action.algebra().dimension();
  const int k = action.group().order();
  Matrix stacked(static_cast<Eigen::Index>(n) * k, n);
  for (int g = 0; g < k; ++g)
    stacked.middleRows(static_cast<Eigen::Index>(g) * n, n) = action.map(g) - Matrix::Identity(n, n);

  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  const double cutoff = tol::kRank * std::max(1.0, top);
  std::vector<Vector> kernel;
  for (int i = 0; i < n; ++i) {
    const double sv = i < s.size() ? s(i) : 0.0;
    if (sv <= cutoff) kernel.push_back(svd.matrixV().col(i));
  }
  Subspace fixed = Subspace::spanned_by(n, kernel);

  const StarAlgebra& a = action.algebra();
  if (!fixed.contains(a.coords(a.one()), tol::kEqual))
    fail(ErrorKind::Internal, "fixed point space does not contain the unit");
  const auto elems = elements_of(a, fixed);
  for (const auto& x : elems) {
    if (!fixed.contains(a.coords(adjoint(x)), tol::kEqual))
      fail(ErrorKind::Internal, "fixed point space is not closed under adjoint");
    for (const auto& y : elems)
      if (!fixed.contains(a.coords(x * y), tol::kEqual))
        fail(ErrorKind::Internal, "fixed point space is not closed under products");
  }
  return fixed;
}

}  // namespace satlab
