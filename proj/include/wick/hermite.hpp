#pragma once

// Probabilists' Hermite polynomials: H_0 = 1, H_1 = x, H_2 = x^2 - 1, ...
// with leading coefficient 1 and E[H_n(X) H_m(X)] = n! delta_nm for X ~ N(0,1).
// The physicists' family (H_2 = 4x^2 - 2) is NOT used anywhere in this library.

#include <map>
#include <span>

namespace wick {

/// Default cap on Hermite orders and chaos truncation.
inline constexpr int kDefaultMaxOrder = 64;
/// Hard ceiling: 170! is the largest factorial representable in a double.
inline constexpr int kMaxSupportedOrder = 170;

/// Expansion in a one-dimensional basis, keyed by degree.
using DegreeMap = std::map<int, double>;

/// n! from a precomputed table; n in [0, kMaxSupportedOrder].
double factorial(int n);
/// Binomial coefficient C(n, k) as a double, 0 outside 0 <= k <= n.
double binomial(int n, int k);
/// (2k-1)!! = E[X^{2k}] for X ~ N(0,1); double_factorial_odd(0) = 1.
double double_factorial_odd(int k);

/// H_n(x) by the three-term recurrence H_{n+1} = x H_n - n H_{n-1}.
/// Throws OrderOverflow when n > max_order.
double hermite_eval(int n, double x, int max_order = kDefaultMaxOrder);

/// Writes H_0(x), ..., H_{out.size()-1}(x) into `out`.
void hermite_eval_all(double x, std::span<double> out);

/// H_a H_b = sum_p p! C(a,p) C(b,p) H_{a+b-2p}.
DegreeMap hermite_linearize(int a, int b);

/// H_n(x + a) = sum_k C(n,k) a^k H_{n-k}(x).
DegreeMap hermite_shift(int n, double a);

/// Monomial coefficients of H_n: sum_k (-1)^k n!/(2^k k!(n-2k)!) x^{n-2k}.
DegreeMap hermite_to_monomial(int n);

/// Hermite coefficients of x^m: sum_k m!/(2^k k!(m-2k)!) H_{m-2k}.
DegreeMap monomial_to_hermite(int m);

}  // namespace wick
