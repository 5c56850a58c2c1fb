#pragma once

#include <vector>

#include "satlab/index_engine.hpp"

namespace satlab {

/// A finite group acting on X = {0, ..., points-1}; perms[g][x] = g x.
class FiniteGSpace {
 public:
  FiniteGSpace(FiniteGroup group, int points, std::vector<std::vector<int>> perms);

  const FiniteGroup& group() const { return group_; }
  int points() const { return points_; }
  int act(int g, int x) const { return perms_[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)]; }
  const std::vector<std::vector<int>>& permutations() const { return perms_; }

  /// G_x as a sorted element list.
  std::vector<int> stabilizer(int x) const;
  GroupAction induced_action() const;

 private:
  FiniteGroup group_;
  int points_;
  std::vector<std::vector<int>> perms_;
};

struct Stratum {
  std::vector<int> subgroup;  // sorted elements of H
  std::vector<int> points;    // X_H
};

struct StrataPartition {
  std::vector<Stratum> strata;  // one per subgroup of G, in lattice order
  std::vector<std::vector<int>> isotropy;  // G_x per point
};

StrataPartition strata(const FiniteGSpace& space);
/// x -> |G| / |G_x| as an element of C(X).
AlgebraElement index_function(const FiniteGSpace& space);
/// u_x = sqrt(|G|/|G_x|) chi_{x} for every point, checked against E.
QuasiBasis strata_quasi_basis(const FiniteGSpace& space);
std::vector<std::vector<int>> orbits(const FiniteGSpace& space);

struct FreenessVerdict {
  bool free = false;
  bool index_is_order = false;
  double index_residual = 0.0;  // max_x | |G|/|G_x| - |G| |
  bool saturated = false;
  SaturationVerdict battery;
};

/// Freeness, the index formula and the saturation battery must agree; a
/// disagreement raises a Consistency error.
FreenessVerdict freeness_saturation_check(const FiniteGSpace& space);

}  // namespace satlab
