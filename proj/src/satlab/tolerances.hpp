#pragma once

// Fixed numerical tolerances. Double precision with algebra dimensions up to a
// few hundred.
namespace satlab::tol {

inline constexpr double kEqual = 1e-9;          // operator-norm equality
inline constexpr double kRank = 1e-9;           // relative rank cutoff
inline constexpr double kOrthonormal = 1e-10;   // basis orthonormality
inline constexpr double kQuasiBasis = 1e-7;     // quasi-basis reconstruction

inline constexpr int kSubgroupOrderBound = 16;
inline constexpr int kRepresentedDimensionBudget = 4096;

}  // namespace satlab::tol
