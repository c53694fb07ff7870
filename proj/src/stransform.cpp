#include "wick/stransform.hpp"

#include <cmath>

#include "wick/errors.hpp"

namespace wick {

double s_transform(const ChaosVector& F, const HVector& xi) {
  if (xi.dim() != F.dim()) throw DimensionMismatch("s_transform: xi dimension differs from F");
  double s = 0.0;
  for (const auto& [alpha, c] : F.terms()) {
    double term = c;
    for (const auto& [basis, mult] : alpha.entries()) term *= std::pow(xi.along(basis), mult);
    s += term;
  }
  return s;
}

Estimate s_transform_mc(const ChaosVector& F, const HVector& xi, std::int64_t n_samples, std::uint64_t seed,
                        const SamplingOptions& options) {
  if (xi.dim() != F.dim()) throw DimensionMismatch("s_transform_mc: xi dimension differs from F");
  const double half_norm2 = 0.5 * xi.dot(xi);
  return estimate_mean(
      F.dim(), n_samples, seed,
      [&](std::span<const double> x) {
        double pairing = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) pairing += xi[i] * x[i];
        return evaluate_at(F, x) * std::exp(pairing - half_norm2);
      },
      options);
}

ChaosVector translate(const ChaosVector& F, const HVector& xi) {
  if (xi.dim() != F.dim()) throw DimensionMismatch("translate: xi dimension differs from F");
  ChaosVector::Terms t;
  for (const auto& [alpha, c] : F.terms()) {
    std::vector<std::pair<std::vector<MultiIndex::Entry>, double>> partial{{{}, c}};
    for (const auto& [basis, mult] : alpha.entries()) {
      const DegreeMap shifted = hermite_shift(mult, xi.along(basis));
      std::vector<std::pair<std::vector<MultiIndex::Entry>, double>> next;
      for (const auto& [entries, w] : partial)
        for (const auto& [deg, k] : shifted) {
          auto e = entries;
          if (deg > 0) e.emplace_back(basis, deg);
          next.emplace_back(std::move(e), w * k);
        }
      partial = std::move(next);
    }
    for (auto& [entries, w] : partial) t[MultiIndex(std::move(entries))] += w;
  }
  return ChaosVector(F.dim(), F.max_order(), std::move(t));
}

}  // namespace wick
