#include "satlab/strata.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "satlab/error.hpp"

namespace satlab {

FiniteGSpace::FiniteGSpace(FiniteGroup group, int points, std::vector<std::vector<int>> perms)
    : group_(std::move(group)), points_(points), perms_(std::move(perms)) {
  if (points_ < 1) fail(ErrorKind::Construction, "G-space needs at least one point");
  check_permutations(points_, group_, perms_);
}

std::vector<int> FiniteGSpace::stabilizer(int x) const {
  std::vector<int> out;
  for (int g = 0; g < group_.order(); ++g)
    if (act(g, x) == x) out.push_back(g);
  return out;
}

GroupAction FiniteGSpace::induced_action() const { return make_permutation_action(points_, group_, perms_); }

StrataPartition strata(const FiniteGSpace& space) {
  const SubgroupLattice lattice = enumerate_subgroups(space.group());
  StrataPartition out;
  for (const auto& h : lattice.subgroups) out.strata.push_back({h, {}});
  for (int x = 0; x < space.points(); ++x) {
    auto gx = space.stabilizer(x);
    auto it = std::find_if(out.strata.begin(), out.strata.end(), [&](const Stratum& s) { return s.subgroup == gx; });
    if (it == out.strata.end()) fail(ErrorKind::Internal, "stabilizer missing from the subgroup lattice");
    it->points.push_back(x);
    out.isotropy.push_back(std::move(gx));
  }
  return out;
}

AlgebraElement index_function(const FiniteGSpace& space) {
  const StarAlgebra alg = StarAlgebra::commutative(space.points());
  AlgebraElement f = alg.zero();
  const double order = space.group().order();
  for (int x = 0; x < space.points(); ++x)
    f.block(x)(0, 0) = order / static_cast<double>(space.stabilizer(x).size());
  return f;
}

QuasiBasis strata_quasi_basis(const FiniteGSpace& space) {
  const StarAlgebra alg = StarAlgebra::commutative(space.points());
  const double order = space.group().order();
  QuasiBasis qb;
  for (int x = 0; x < space.points(); ++x) {
    const double w = std::sqrt(order / static_cast<double>(space.stabilizer(x).size()));
    qb.elements.push_back(w * alg.matrix_unit(x, 0, 0));
  }
  const auto res = check_quasi_basis(qb.elements, group_expectation(space.induced_action()));
  qb.residual = res.left;
  qb.right_residual = res.right;
  return qb;
}

std::vector<std::vector<int>> orbits(const FiniteGSpace& space) {
  std::vector<int> seen(static_cast<std::size_t>(space.points()), 0);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < space.points(); ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    std::vector<int> orbit;
    for (int g = 0; g < space.group().order(); ++g) {
      const int y = space.act(g, x);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

FreenessVerdict freeness_saturation_check(const FiniteGSpace& space) {
  const long total = static_cast<long>(space.points()) * space.group().order();
  if (total > tol::kRepresentedDimensionBudget)
    fail(ErrorKind::Capacity, "|X| |G| = " + std::to_string(total) + " exceeds the represented-dimension budget " +
                                  std::to_string(tol::kRepresentedDimensionBudget));
  FreenessVerdict v;
  v.free = true;
  for (int x = 0; x < space.points(); ++x) v.free = v.free && space.stabilizer(x).size() == 1;

  const AlgebraElement idx = index_function(space);
  const double order = space.group().order();
  for (const auto& b : idx.blocks()) v.index_residual = std::max(v.index_residual, std::abs(b(0, 0) - order));
  v.index_is_order = v.index_residual <= tol::kEqual;

  v.battery = saturation_battery(space.induced_action());
  v.saturated = v.battery.saturated;
  if (!v.battery.consistent || v.free != v.index_is_order || v.free != v.saturated)
    fail(ErrorKind::Consistency, std::string("freeness criteria disagree: free = ") + (v.free ? "true" : "false") +
                                     ", Index = |G| is " + (v.index_is_order ? "true" : "false") +
                                     ", battery saturated = " + (v.saturated ? "true" : "false") +
                                     (v.battery.consistent ? "" : " (battery inconsistent)"));
  return v;
}

}  // namespace satlab
