#include "wick/malliavin.hpp"

#include <algorithm>
#include <cmath>

#include "wick/errors.hpp"

namespace wick {

HValuedChaos times_vector(const ChaosVector& F, const HVector& g) {
  if (g.dim() != F.dim()) throw DimensionMismatch("times_vector: dimensions differ");
  HValuedChaos u;
  for (int j = 1; j <= F.dim(); ++j) u.components.push_back(scale(F, g.along(j)));
  return u;
}

ChaosVector derivative_basis(const ChaosVector& F, int basis) {
  ChaosVector::Terms t;
  for (const auto& [alpha, c] : F.terms()) {
    const int m = alpha[basis];
    if (m > 0) t[alpha.shifted(basis, -1)] += m * c;
  }
  return ChaosVector(F.dim(), F.max_order(), std::move(t));
}

ChaosVector derivative_dir(const ChaosVector& F, const HVector& g) {
  if (g.dim() != F.dim()) throw DimensionMismatch("derivative_dir: direction dimension differs");
  ChaosVector acc(F.dim(), F.max_order());
  for (int j = 1; j <= F.dim(); ++j)
    if (g.along(j) != 0.0) acc = acc + scale(derivative_basis(F, j), g.along(j));
  return acc;
}

ChaosVector derivative_along(const ChaosVector& F, std::span<const int> directions) {
  ChaosVector acc = F;
  for (int j : directions) acc = derivative_basis(acc, j);
  return acc;
}

HValuedChaos gradient(const ChaosVector& F) {
  HValuedChaos u;
  for (int j = 1; j <= F.dim(); ++j) u.components.push_back(derivative_basis(F, j));
  return u;
}

DerivativeTable higher_derivative(const ChaosVector& F, int p) {
  if (p < 0) throw DomainError("derivative order must be >= 0");
  DerivativeTable table;
  for_each_multiindex(F.dim(), p, [&](const MultiIndex& mu) {
    ChaosVector d = derivative_along(F, mu.to_tuple());
    if (!d.empty()) table.emplace(mu, std::move(d));
  });
  return table;
}

ChaosVector divergence(const HValuedChaos& u) {
  if (u.components.empty()) throw DomainError("divergence of an empty H-valued variable");
  const int dim = u.components.front().dim();
  if (u.dim() != dim) throw DimensionMismatch("divergence: component count differs from dimension");
  int cap = 0;
  for (const auto& c : u.components) cap = std::max(cap, c.max_order());
  ChaosVector::Terms t;
  for (int j = 1; j <= dim; ++j)
    for (const auto& [alpha, c] : u.along(j).terms()) {
      if (alpha.degree() + 1 > cap)
        throw OrderOverflow("divergence: result degree " + std::to_string(alpha.degree() + 1) +
                            " exceeds max order " + std::to_string(cap));
      t[alpha.shifted(j, 1)] += c;
    }
  return ChaosVector(dim, cap, std::move(t));
}

ChaosVector ou_apply(const ChaosVector& F) {
  ChaosVector::Terms t;
  for (const auto& [alpha, c] : F.terms()) t.emplace(alpha, alpha.degree() * c);
  return ChaosVector(F.dim(), F.max_order(), std::move(t));
}

double sobolev_norm(const ChaosVector& F, int k) {
  if (k < 0) throw DomainError("Sobolev order must be >= 0");
  double s = 0.0;
  for (int i = 0; i <= k; ++i)
    for (const auto& [mu, d] : higher_derivative(F, i)) s += multinomial(mu) * inner_product(d, d);
  return std::sqrt(s);
}

ChaosVector wick_via_malliavin(const ChaosVector& F, const ChaosVector& G) {
  if (F.dim() != G.dim()) throw DimensionMismatch("wick_via_malliavin: dimensions differ");
  const int cap = std::max(F.max_order(), G.max_order());
  if (!F.empty() && !G.empty() && F.degree() + G.degree() > cap)
    throw OrderOverflow("wick_via_malliavin: result exceeds max order");
  ChaosVector acc(F.dim(), cap);
  const int p_max = std::min(F.degree(), G.degree());
  for (int p = 0; p <= p_max; ++p) {
    const auto dF = higher_derivative(F, p);
    const auto dG = higher_derivative(G, p);
    // (-1)^p/p! times the p!/mu! ordered tuples sharing the unordered tuple mu.
    for (const auto& [mu, a] : dF) {
      auto it = dG.find(mu);
      if (it == dG.end()) continue;
      const double w = (p % 2 ? -1.0 : 1.0) / multiindex_factorial(mu);
      acc = acc + scale(ordinary_product(a.with_max_order(cap), it->second.with_max_order(cap)), w);
    }
  }
  return acc;
}

ChaosVector product_via_wick_gradients(const ChaosVector& F, const ChaosVector& G) {
  if (F.dim() != G.dim()) throw DimensionMismatch("product_via_wick_gradients: dimensions differ");
  const int cap = std::max(F.max_order(), G.max_order());
  if (!F.empty() && !G.empty() && F.degree() + G.degree() > cap)
    throw OrderOverflow("product_via_wick_gradients: result exceeds max order");
  ChaosVector acc(F.dim(), cap);
  const int p_max = std::min(F.degree(), G.degree());
  for (int p = 0; p <= p_max; ++p) {
    const auto dF = higher_derivative(F, p);
    const auto dG = higher_derivative(G, p);
    for (const auto& [mu, a] : dF) {
      auto it = dG.find(mu);
      if (it == dG.end()) continue;
      acc = acc + scale(wick_product(a.with_max_order(cap), it->second.with_max_order(cap)),
                        1.0 / multiindex_factorial(mu));
    }
  }
  return acc;
}

ChaosVector wick_with_gaussian(const ChaosVector& F, const HVector& g) {
  const ChaosVector gt = ChaosVector::gaussian(g, F.max_order());
  return ordinary_product(F, gt) - derivative_dir(F, g);
}

HValuedChaos wick_product(const HValuedChaos& u, const ChaosVector& G) {
  HValuedChaos r;
  for (const auto& c : u.components) r.components.push_back(wick_product(c, G));
  return r;
}

HValuedChaos wick_product(const ChaosVector& F, const HValuedChaos& u) { return wick_product(u, F); }

HValuedChaos operator+(const HValuedChaos& a, const HValuedChaos& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("HValuedChaos add: dimensions differ");
  HValuedChaos r;
  for (int j = 0; j < a.dim(); ++j)
    r.components.push_back(a.components[static_cast<std::size_t>(j)] + b.components[static_cast<std::size_t>(j)]);
  return r;
}

}  // namespace wick
