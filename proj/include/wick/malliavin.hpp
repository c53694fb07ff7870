#pragma once

#include <map>
#include <span>
#include <vector>

#include "wick/chaos.hpp"

namespace wick {

/// H-valued random variable; components[j-1] is <u, e_j>.
struct HValuedChaos {
  std::vector<ChaosVector> components;

  int dim() const noexcept { return static_cast<int>(components.size()); }
  const ChaosVector& along(int basis) const { return components.at(static_cast<std::size_t>(basis - 1)); }
};

/// F * g as an H-valued variable (component j is g_j F).
HValuedChaos times_vector(const ChaosVector& F, const HVector& g);

/// D_{e_basis} F: lowers alpha_basis by one and multiplies by alpha_basis.
ChaosVector derivative_basis(const ChaosVector& F, int basis);
/// D_g F = sum_j g_j D_{e_j} F.
ChaosVector derivative_dir(const ChaosVector& F, const HVector& g);
/// Iterated derivative D_{e_t1} ... D_{e_tp} F along an ordered direction tuple.
ChaosVector derivative_along(const ChaosVector& F, std::span<const int> directions);
HValuedChaos gradient(const ChaosVector& F);

/// D^p F stored against unordered direction tuples (the key multi-index).
/// An unordered tuple mu stands for p!/mu! ordered tuples with equal entries.
using DerivativeTable = std::map<MultiIndex, ChaosVector>;
DerivativeTable higher_derivative(const ChaosVector& F, int p);

/// Adjoint of the gradient: delta(F e_j) raises alpha_j by one.
ChaosVector divergence(const HValuedChaos& u);

/// L F = sum_n n F_n.
ChaosVector ou_apply(const ChaosVector& F);

/// (sum_{i<=k} E ||D^i F||^2)^{1/2}.
double sobolev_norm(const ChaosVector& F, int k);

/// F<>G = sum_p (-1)^p / p! <D^p F, D^p G>.
ChaosVector wick_via_malliavin(const ChaosVector& F, const ChaosVector& G);
/// F G = sum_p 1/p! <D^p F, <> D^p G>, the Wick scalar products of iterated gradients.
ChaosVector product_via_wick_gradients(const ChaosVector& F, const ChaosVector& G);
/// F<>g~ computed as F g~ - D_g F.
ChaosVector wick_with_gaussian(const ChaosVector& F, const HVector& g);

/// Componentwise u<>G.
HValuedChaos wick_product(const HValuedChaos& u, const ChaosVector& G);
HValuedChaos wick_product(const ChaosVector& F, const HValuedChaos& u);
HValuedChaos operator+(const HValuedChaos& a, const HValuedChaos& b);

}  // namespace wick
