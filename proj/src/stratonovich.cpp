#include "wick/stratonovich.hpp"

#include <cmath>
#include <map>

#include "wick/errors.hpp"

namespace wick {

double humeyer_weight(int n, int k) {
  return factorial(n) / (std::ldexp(1.0, k) * factorial(k) * factorial(n - 2 * k));
}

SymTensor trace_k(const SymTensor& f, int k) {
  if (k < 0 || 2 * k > f.order())
    throw DomainError("trace of order " + std::to_string(k) + " needs tensor order >= " + std::to_string(2 * k) +
                      ", got " + std::to_string(f.order()));
  SymTensor::Values out;
  for (const auto& [gamma, v] : f.values()) {
    std::vector<MultiIndex::Entry> half;
    for (const auto& [basis, mult] : gamma.entries())
      if (mult >= 2) half.emplace_back(basis, mult / 2);
    // Each unordered pair pattern mu covers k!/mu! ordered (i_1..i_k).
    for_each_submultiindex(MultiIndex(std::move(half)), [&](const MultiIndex& mu) {
      if (mu.degree() != k) return;
      out[gamma - (mu + mu)] += multinomial(mu) * v;
    });
  }
  return SymTensor(f.dim(), f.order() - 2 * k, std::move(out));
}

ChaosVector stratonovich_integral(const SymTensor& f, int max_order) {
  const int n = f.order();
  ChaosVector acc(f.dim(), max_order);
  for (int k = 0; 2 * k <= n; ++k) acc = acc + scale(from_tensor(trace_k(f, k), max_order), humeyer_weight(n, k));
  return acc;
}

ChaosVector ito_from_stratonovich(const SymTensor& f, int max_order) {
  const int n = f.order();
  ChaosVector acc(f.dim(), max_order);
  for (int k = 0; 2 * k <= n; ++k)
    acc = acc + scale(stratonovich_integral(trace_k(f, k), max_order), (k % 2 ? -1.0 : 1.0) * humeyer_weight(n, k));
  return acc;
}

ChaosVector stratonovich_partial_sum(const SymTensor& f, int N, int max_order) {
  if (N < 0 || N > f.dim())
    throw DomainError("partial-sum cutoff " + std::to_string(N) + " outside 0.." + std::to_string(f.dim()));
  if (f.order() > max_order) throw OrderOverflow("stratonovich_partial_sum: tensor order exceeds max order");
  const int dim = f.dim();
  // powers[(basis, m)] = e~_basis^m as a chaos expansion.
  std::map<std::pair<int, int>, ChaosVector> powers;
  auto power = [&](int basis, int m) -> const ChaosVector& {
    auto key = std::make_pair(basis, m);
    auto it = powers.find(key);
    if (it == powers.end())
      it = powers.emplace(key, ordinary_power(ChaosVector::coordinate(dim, max_order, basis), m)).first;
    return it->second;
  };

  ChaosVector acc(dim, max_order);
  for (const auto& [alpha, v] : f.values()) {
    if (alpha.max_basis() > N) continue;
    // All |alpha|!/alpha! orderings of the tuple contribute the same monomial.
    ChaosVector monomial = ChaosVector::constant(dim, max_order, multinomial(alpha) * v);
    for (const auto& [basis, mult] : alpha.entries()) monomial = ordinary_product(monomial, power(basis, mult));
    acc = acc + monomial;
  }
  return acc;
}

}  // namespace wick
