#pragma once

#include "wick/chaos.hpp"

namespace wick {

/// n! / (2^k k! (n-2k)!), the weight of the order-k trace term.
double humeyer_weight(int n, int k);

/// Tr^k f = sum_{i_1..i_k} <f, e_{i_1} (x) e_{i_1} (x) ... (x) e_{i_k} (x) e_{i_k}>,
/// an order n-2k tensor.  Every trace exists in finite dimension.
SymTensor trace_k(const SymTensor& f, int k);

/// S_n(f) = sum_k humeyer_weight(n,k) I_{n-2k}(Tr^k f).
ChaosVector stratonovich_integral(const SymTensor& f, int max_order);
inline ChaosVector stratonovich_integral(const SymTensor& f) { return stratonovich_integral(f, f.order()); }

/// I_n(f) = sum_k (-1)^k humeyer_weight(n,k) S_{n-2k}(Tr^k f), with each S
/// term expanded through stratonovich_integral.
ChaosVector ito_from_stratonovich(const SymTensor& f, int max_order);
inline ChaosVector ito_from_stratonovich(const SymTensor& f) { return ito_from_stratonovich(f, f.order()); }

/// S_n^N(f) = sum_{k_1..k_n <= N} f(k_1..k_n) e~_{k_1} ... e~_{k_n}, expanded
/// by repeated ordinary products.  Requires 0 <= N <= dim.
ChaosVector stratonovich_partial_sum(const SymTensor& f, int N, int max_order);
inline ChaosVector stratonovich_partial_sum(const SymTensor& f, int N) {
  return stratonovich_partial_sum(f, N, f.order());
}

}  // namespace wick
