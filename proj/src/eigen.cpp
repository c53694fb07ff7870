#include "wick/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wick/errors.hpp"

namespace wick {

SymmetricEigen jacobi_eigen(std::span<const double> matrix, int n) {
  if (n < 1 || matrix.size() != static_cast<std::size_t>(n * n))
    throw DimensionMismatch("jacobi_eigen: matrix is not n x n");
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> a(matrix.begin(), matrix.end());
  std::vector<double> v(N * N, 0.0);
  for (std::size_t i = 0; i < N; ++i) v[i * N + i] = 1.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (std::abs(a[i * N + j] - a[j * N + i]) > 1e-12 * (1.0 + std::abs(a[i * N + j])))
        throw DomainError("jacobi_eigen: matrix is not symmetric");

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (i != j) s += a[i * N + j] * a[i * N + j];
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > kJacobiTolerance) {
    if (sweep == kJacobiMaxSweeps) throw DivergenceError("jacobi_eigen: no convergence within sweep cap");
    ++sweep;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = a[p * N + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * N + q] - a[p * N + p]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = a[k * N + p];
          const double akq = a[k * N + q];
          a[k * N + p] = c * akp - s * akq;
          a[k * N + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = a[p * N + k];
          const double aqk = a[q * N + k];
          a[p * N + k] = c * apk - s * aqk;
          a[q * N + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double vkp = v[k * N + p];
          const double vkq = v[k * N + q];
          v[k * N + p] = c * vkp - s * vkq;
          v[k * N + q] = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a[i * N + i] < a[j * N + j]; });
  SymmetricEigen out;
  out.sweeps = sweep;
  out.vectors.assign(N * N, 0.0);
  for (std::size_t j = 0; j < N; ++j) {
    out.values.push_back(a[order[j] * N + order[j]]);
    for (std::size_t k = 0; k < N; ++k) out.vectors[k * N + j] = v[k * N + order[j]];
  }
  return out;
}

}  // namespace wick
