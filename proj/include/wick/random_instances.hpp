#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wick/chaos.hpp"
#include "wick/renormalization.hpp"

namespace wick {

/// Seeded generator of random chaos vectors, tensors, polynomials and
/// directions for property checks.  Uses mt19937_64 with an explicit
/// 53-bit uniform mapping so instances are identical on every platform.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : engine_(seed) {}

  double uniform(double a, double b) { return a + (b - a) * static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  /// n_terms random Hermite labels of degree <= max_degree with coefficients in [-1, 1].
  ChaosVector chaos(int dim, int max_degree, int max_order, int n_terms = 5) {
    ChaosVector::Terms t;
    for (int n = 0; n < n_terms; ++n) t[label(dim, integer(0, max_degree))] += uniform(-1.0, 1.0);
    return ChaosVector(dim, max_order, std::move(t));
  }

  SymTensor tensor(int dim, int order, int n_entries = 6) {
    SymTensor::Values v;
    for (int n = 0; n < n_entries; ++n) v[label(dim, order)] += uniform(-1.0, 1.0);
    return SymTensor(dim, order, std::move(v));
  }

  PolySeries poly(int dim, int max_degree, int n_terms = 5) {
    PolySeries::Terms t;
    for (int n = 0; n < n_terms; ++n) t[label(dim, integer(0, max_degree))] += uniform(-1.0, 1.0);
    return PolySeries(dim, max_degree, std::move(t));
  }

  HVector vector(int dim, double scale = 1.0) {
    HVector v(dim);
    for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = uniform(-scale, scale);
    return v;
  }

  /// Rows of a random orthogonal d x d matrix (Gram-Schmidt on random vectors).
  std::vector<HVector> orthonormal_basis(int dim) {
    std::vector<HVector> basis;
    while (static_cast<int>(basis.size()) < dim) {
      HVector v = vector(dim);
      for (const auto& q : basis) v = v - v.dot(q) * q;
      const double n = v.norm();
      if (n < 1e-3) continue;
      basis.push_back((1.0 / n) * v);
    }
    return basis;
  }

 private:
  MultiIndex label(int dim, int degree) {
    std::vector<int> tuple;
    for (int k = 0; k < degree; ++k) tuple.push_back(integer(1, dim));
    return MultiIndex::from_tuple(tuple);
  }

  std::mt19937_64 engine_;
};

}  // namespace wick
