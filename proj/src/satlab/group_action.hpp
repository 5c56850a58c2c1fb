#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "satlab/algebra.hpp"

namespace satlab {

/// A finite group given by its multiplication table. Group axioms are checked
/// on construction.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<std::vector<int>> table, std::string name = {});

  static FiniteGroup cyclic(int n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  /// S_n acting on {0..n-1}; elements in lexicographic permutation order.
  static FiniteGroup symmetric(int n);
  static FiniteGroup dihedral(int n);
  /// "Z<n>", "S<n>", "D<n>", "Z2xZ2", products joined by 'x'.
  static FiniteGroup named(std::string_view name);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int g, int h) const { return table_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)]; }
  int inverse(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string name_;
};

/// Sorted element sets of all subgroups, starting with {identity}.
struct SubgroupLattice {
  std::vector<std::vector<int>> subgroups;
};

std::vector<int> generated_subgroup(const FiniteGroup& group, const std::vector<int>& generators);
SubgroupLattice enumerate_subgroups(const FiniteGroup& group, int order_bound = tol::kSubgroupOrderBound);

/// An action of a finite group by *-automorphisms. Each alpha_g is stored as an
/// N x N matrix acting on StarAlgebra coordinates.
class GroupAction {
 public:
  /// Verifies the automorphism and homomorphism axioms on a basis.
  GroupAction(FiniteGroup group, StarAlgebra algebra, std::vector<Matrix> maps);

  const FiniteGroup& group() const { return group_; }
  const StarAlgebra& algebra() const { return algebra_; }
  const Matrix& map(int g) const { return maps_[static_cast<std::size_t>(g)]; }
  const std::vector<Matrix>& maps() const { return maps_; }

  AlgebraElement apply(int g, const AlgebraElement& x) const;

 private:
  FiniteGroup group_;
  StarAlgebra algebra_;
  std::vector<Matrix> maps_;
};

/// Coordinate matrix of a linear map given by its action on matrix units.
template <class F>
Matrix linear_map_matrix(const StarAlgebra& algebra, F&& f) {
  const auto units = algebra.matrix_units();
  Matrix m(algebra.dimension(), algebra.dimension());
  for (std::size_t j = 0; j < units.size(); ++j) {
    // coords are uniformly scaled, so the scale cancels
    m.col(static_cast<Eigen::Index>(j)) = algebra.coords(f(units[j])) / algebra.coordinate_scale();
  }
  return m;
}

/// x -> u sigma(x) u^*, where sigma moves block i to block block_perm[i].
/// Blocks exchanged by sigma must have equal size.
Matrix automorphism_matrix(const StarAlgebra& algebra, const std::vector<int>& block_perm,
                           const AlgebraElement& u);

GroupAction make_inner_action(const StarAlgebra& algebra, const FiniteGroup& group,
                              const std::vector<AlgebraElement>& unitaries);

/// Construction error unless perms[g] are permutations of X with g (h x) = (gh) x.
void check_permutations(int points, const FiniteGroup& group, const std::vector<std::vector<int>>& perms);

/// alpha_g(f)(x) = f(g^{-1} x) on C(X); perms[g][x] is the image g x.
GroupAction make_permutation_action(int points, const FiniteGroup& group,
                                    const std::vector<std::vector<int>>& perms);

GroupAction trivial_action(const StarAlgebra& algebra, const FiniteGroup& group);

/// Joint null space of alpha_g - id; verified to be a unital *-subalgebra.
Subspace fixed_point_algebra(const GroupAction& action);

}  // namespace satlab
