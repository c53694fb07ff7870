#pragma once

#include <span>
#include <vector>

namespace wick {

struct SymmetricEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column j (row-major n x n) pairs with values[j]
  int sweeps = 0;
};

inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 50;

/// Cyclic Jacobi rotations on a symmetric n x n row-major matrix.  Stops when
/// the off-diagonal Frobenius norm drops to kJacobiTolerance; throws
/// DivergenceError if kJacobiMaxSweeps sweeps are not enough.
SymmetricEigen jacobi_eigen(std::span<const double> matrix, int n);

}  // namespace wick
