#pragma once

#include <vector>

#include "satlab/subspace.hpp"

namespace satlab::detail {

// span{ b_j g b_k } computed as span{ l b_k : l in span{ b_j g } }; the two
// agree by bilinearity and the second needs far fewer products.
template <class Multiply>
Subspace ideal_closure(Eigen::Index ambient, const std::vector<Vector>& generators,
                       const std::vector<Vector>& basis, Multiply&& multiply) {
  std::vector<Vector> left;
  left.reserve(generators.size() * basis.size());
  for (const auto& g : generators) {
    for (const auto& b : basis) left.push_back(multiply(b, g));
  }
  const Subspace left_ideal = Subspace::spanned_by(ambient, left);

  std::vector<Vector> both;
  both.reserve(static_cast<std::size_t>(left_ideal.dimension()) * basis.size());
  for (int i = 0; i < left_ideal.dimension(); ++i) {
    const Vector l = left_ideal.basis_vector(i);
    for (const auto& b : basis) both.push_back(multiply(l, b));
  }
  return Subspace::spanned_by(ambient, both);
}

}  // namespace satlab::detail
