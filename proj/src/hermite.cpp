#include "wick/hermite.hpp"

#include <array>
#include <cmath>
#include <string>

#include "wick/errors.hpp"

namespace wick {
namespace {

const std::array<double, kMaxSupportedOrder + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kMaxSupportedOrder + 1> t{};
    t[0] = 1.0;
    for (int i = 1; i <= kMaxSupportedOrder; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

void require_order(int n) {
  if (n < 0) throw DomainError("negative Hermite order " + std::to_string(n));
  if (n > kMaxSupportedOrder)
    throw OrderOverflow("order " + std::to_string(n) + " exceeds supported maximum " +
                        std::to_string(kMaxSupportedOrder));
}

// n!/(2^k k!(n-2k)!), shared by the Hermite <-> monomial conversions.
double pairing_count(int n, int k) {
  return factorial(n) / (std::ldexp(1.0, k) * factorial(k) * factorial(n - 2 * k));
}

}  // namespace

double factorial(int n) {
  require_order(n);
  return factorial_table()[n];
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= kMaxSupportedOrder) return std::round(factorial(n) / (factorial(k) * factorial(n - k)));
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double double_factorial_odd(int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r *= 2 * j - 1;
  return r;
}

double hermite_eval(int n, double x, int max_order) {
  if (n < 0) throw DomainError("negative Hermite order " + std::to_string(n));
  if (n > max_order)
    throw OrderOverflow("Hermite order " + std::to_string(n) + " exceeds max order " +
                        std::to_string(max_order));
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_eval_all(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = x;
  for (std::size_t k = 1; k + 1 < out.size(); ++k)
    out[k + 1] = x * out[k] - static_cast<double>(k) * out[k - 1];
}

DegreeMap hermite_linearize(int a, int b) {
  if (a < 0 || b < 0) throw DomainError("negative Hermite order in linearization");
  require_order(a + b);
  DegreeMap out;
  for (int p = 0; p <= std::min(a, b); ++p)
    out[a + b - 2 * p] = factorial(p) * binomial(a, p) * binomial(b, p);
  return out;
}

DegreeMap hermite_shift(int n, double a) {
  require_order(n);
  DegreeMap out;
  double power = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double c = binomial(n, k) * power;
    if (c != 0.0) out[n - k] = c;
    power *= a;
  }
  return out;
}

DegreeMap hermite_to_monomial(int n) {
  require_order(n);
  DegreeMap out;
  for (int k = 0; 2 * k <= n; ++k) out[n - 2 * k] = (k % 2 ? -1.0 : 1.0) * pairing_count(n, k);
  return out;
}

DegreeMap monomial_to_hermite(int m) {
  require_order(m);
  DegreeMap out;
  for (int k = 0; 2 * k <= m; ++k) out[m - 2 * k] = pairing_count(m, k);
  return out;
}

}  // namespace wick
