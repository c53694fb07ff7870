#include "wick/renormalization.hpp"

#include <algorithm>
#include <cmath>

#include "wick/errors.hpp"

namespace wick {
namespace {

using Partial = std::vector<std::pair<std::vector<MultiIndex::Entry>, double>>;

// Multiplies a partially expanded term by a one-dimensional expansion in `basis`.
Partial expand(const Partial& partial, int basis, const DegreeMap& factor) {
  Partial next;
  next.reserve(partial.size() * factor.size());
  for (const auto& [entries, w] : partial)
    for (const auto& [deg, k] : factor) {
      if (k == 0.0) continue;
      auto e = entries;
      if (deg > 0) e.emplace_back(basis, deg);
      next.emplace_back(std::move(e), w * k);
    }
  return next;
}

std::vector<double> sigmas(std::span<const double> variances, int dim) {
  if (static_cast<int>(variances.size()) != dim)
    throw DimensionMismatch("expected " + std::to_string(dim) + " variances, got " + std::to_string(variances.size()));
  std::vector<double> s;
  for (double v : variances) {
    if (!(v > 0.0)) throw DomainError("variances must be positive");
    s.push_back(std::sqrt(v));
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// PolySeries

PolySeries::PolySeries(int dim, int truncation, Terms terms) : dim_(dim), truncation_(truncation) {
  if (dim < 1) throw DomainError("polynomial dimension must be >= 1");
  if (truncation < 0) throw DomainError("negative truncation");
  for (auto& [exps, a] : terms) {
    if (exps.max_basis() > dim) throw DimensionMismatch("monomial variable exceeds dimension");
    if (exps.degree() > truncation)
      throw OrderOverflow("monomial " + exps.to_string() + " exceeds truncation " + std::to_string(truncation));
    if (a != 0.0) terms_.emplace(exps, a);
  }
}

PolySeries PolySeries::variable(int dim, int basis, int truncation) {
  return PolySeries(dim, truncation, {{MultiIndex::unit(basis), 1.0}});
}

PolySeries PolySeries::constant(int dim, double c, int truncation) {
  return PolySeries(dim, truncation, {{MultiIndex{}, c}});
}

int PolySeries::degree() const noexcept {
  int d = 0;
  for (const auto& [exps, a] : terms_) d = std::max(d, exps.degree());
  return d;
}

double PolySeries::coeff(const MultiIndex& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? 0.0 : it->second;
}

double PolySeries::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("PolySeries::evaluate: wrong point dimension");
  double s = 0.0;
  for (const auto& [exps, a] : terms_) {
    double t = a;
    for (const auto& [basis, n] : exps.entries()) t *= std::pow(x[static_cast<std::size_t>(basis - 1)], n);
    s += t;
  }
  return s;
}

std::complex<double> PolySeries::evaluate(std::span<const std::complex<double>> z) const {
  if (static_cast<int>(z.size()) != dim_) throw DimensionMismatch("PolySeries::evaluate: wrong point dimension");
  std::complex<double> s = 0.0;
  for (const auto& [exps, a] : terms_) {
    std::complex<double> t = a;
    for (const auto& [basis, n] : exps.entries())
      for (int k = 0; k < n; ++k) t *= z[static_cast<std::size_t>(basis - 1)];
    s += t;
  }
  return s;
}

PolySeries operator+(const PolySeries& f, const PolySeries& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("PolySeries add: dimensions differ");
  PolySeries::Terms t = f.terms();
  for (const auto& [exps, a] : g.terms()) t[exps] += a;
  return PolySeries(f.dim(), std::max(f.truncation(), g.truncation()), std::move(t));
}

PolySeries operator*(double c, const PolySeries& f) {
  PolySeries::Terms t;
  for (const auto& [exps, a] : f.terms()) t.emplace(exps, c * a);
  return PolySeries(f.dim(), f.truncation(), std::move(t));
}

PolySeries poly_product(const PolySeries& f, const PolySeries& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("poly_product: dimensions differ");
  PolySeries::Terms t;
  for (const auto& [ea, a] : f.terms())
    for (const auto& [eb, b] : g.terms()) t[ea + eb] += a * b;
  return PolySeries(f.dim(), f.truncation() + g.truncation(), std::move(t));
}

PolySeries to_poly(const ChaosVector& F) {
  PolySeries::Terms t;
  for (const auto& [alpha, c] : F.terms()) {
    Partial partial{{{}, c}};
    for (const auto& [basis, mult] : alpha.entries()) partial = expand(partial, basis, hermite_to_monomial(mult));
    for (auto& [entries, w] : partial) t[MultiIndex(std::move(entries))] += w;
  }
  return PolySeries(F.dim(), F.max_order(), std::move(t));
}

// ---------------------------------------------------------------------------
// Wick ordering

ChaosVector wick_order_poly(const PolySeries& f, std::span<const double> variances, int max_order) {
  const auto sigma = sigmas(variances, f.dim());
  const int cap = max_order < 0 ? f.truncation() : max_order;
  ChaosVector::Terms t;
  for (const auto& [exps, a] : f.terms()) {
    // X_i^{<>n} = sigma_i^n H_n(e~_i); distinct coordinates multiply into one Hermite label.
    double c = a;
    for (const auto& [basis, n] : exps.entries()) c *= std::pow(sigma[static_cast<std::size_t>(basis - 1)], n);
    t[exps] += c;
  }
  return ChaosVector(f.dim(), cap, std::move(t));
}

ChaosVector wick_order(const ChaosVector& F) {
  return wick_order_poly(to_poly(F), std::vector<double>(static_cast<std::size_t>(F.dim()), 1.0), F.max_order());
}

ChaosVector wick_order_icopy_exact(const PolySeries& f, std::span<const double> variances, int max_order) {
  const auto sigma = sigmas(variances, f.dim());
  const int cap = max_order < 0 ? f.truncation() : max_order;
  ChaosVector::Terms t;
  for (const auto& [exps, a] : f.terms()) {
    Partial partial{{{}, a}};
    for (const auto& [basis, n] : exps.entries()) {
      const double s = sigma[static_cast<std::size_t>(basis - 1)];
      // Re E[(x + iY)^n] = sum_k C(n,2k) (-1)^k E[Y^{2k}] x^{n-2k}, odd powers of Y vanish.
      // Then x^m = s^m e~^m is rewritten in Hermite polynomials of e~.
      DegreeMap hermite;
      for (int k = 0; 2 * k <= n; ++k) {
        const int m = n - 2 * k;
        const double w = binomial(n, 2 * k) * (k % 2 ? -1.0 : 1.0) * std::pow(s, 2 * k) * double_factorial_odd(k) *
                         std::pow(s, m);
        for (const auto& [deg, h] : monomial_to_hermite(m)) hermite[deg] += w * h;
      }
      partial = expand(partial, basis, hermite);
    }
    for (auto& [entries, w] : partial) t[MultiIndex(std::move(entries))] += w;
  }
  return ChaosVector(f.dim(), cap, std::move(t));
}

Estimate icopy_mc(const ComplexFunction& g, std::span<const double> x, std::span<const double> variances,
                  std::int64_t n_samples, std::uint64_t seed, const SamplingOptions& options) {
  const int dim = static_cast<int>(x.size());
  const auto sigma = sigmas(variances, dim);
  const std::vector<double> point(x.begin(), x.end());
  return estimate_mean(
      dim, n_samples, seed,
      [&](std::span<const double> y) {
        std::vector<std::complex<double>> z(point.size());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = {point[i], sigma[i] * y[i]};
        return g(z).real();
      },
      options);
}

std::vector<Estimate> wick_order_icopy_mc(const PolySeries& f, std::span<const double> variances,
                                          const std::vector<std::vector<double>>& probes, std::int64_t n_samples,
                                          std::uint64_t seed, const SamplingOptions& options) {
  std::vector<Estimate> out;
  const ComplexFunction g = [&](std::span<const std::complex<double>> z) { return f.evaluate(z); };
  for (const auto& x : probes) {
    if (static_cast<int>(x.size()) != f.dim()) throw DimensionMismatch("probe point dimension differs");
    out.push_back(icopy_mc(g, x, variances, n_samples, seed, options));
  }
  return out;
}

double series_condition(const PolySeries& f, std::span<const double> variances) {
  const auto sigma = sigmas(variances, f.dim());
  double s = 0.0;
  for (const auto& [exps, a] : f.terms()) {
    double t = multiindex_factorial(exps) * a * a;
    for (const auto& [basis, n] : exps.entries()) t *= std::pow(sigma[static_cast<std::size_t>(basis - 1)], 2 * n);
    s += t;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Wick exponentials

PolySeries exp_square_series(double lambda, int K) {
  PolySeries::Terms t;
  for (int k = 0; k <= K; ++k) t[MultiIndex::unit(1, 2 * k)] = std::pow(lambda, k) / (std::ldexp(1.0, k) * factorial(k));
  return PolySeries(1, 2 * K, std::move(t));
}

double WickExpSquare::closed_form(double x) const {
  return std::exp(lambda * x * x / (2.0 * (lambda + 1.0))) / std::sqrt(lambda + 1.0);
}

WickExpSquare wick_exp_square(double lambda, int K) {
  if (!(std::abs(lambda) < 1.0))
    throw DivergenceError("Wick renormalization of exp(lambda x^2/2) diverges for |lambda| >= 1 (lambda = " +
                          std::to_string(lambda) + ")");
  if (K < 0 || 2 * K > kMaxSupportedOrder) throw OrderOverflow("series length K out of range");
  WickExpSquare w;
  w.lambda = lambda;
  w.terms = K;
  const double unit[] = {1.0};
  w.series = wick_order_poly(exp_square_series(lambda, K), unit, 2 * K);
  const int k = K + 1;
  w.tail_weight = lambda == 0.0 ? 0.0
                                : std::exp(2.0 * (k * std::log(std::abs(lambda)) - k * std::log(2.0) -
                                                  std::lgamma(k + 1.0)) +
                                           std::lgamma(2.0 * k + 1.0));
  return w;
}

double WickExpI2::closed_form(std::span<const double> x) const {
  const auto n = spectrum.values.size();
  if (x.size() != n) throw DimensionMismatch("WickExpI2::closed_form: wrong point dimension");
  double log_value = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double l = spectrum.values[j];
    double u = 0.0;
    for (std::size_t i = 0; i < n; ++i) u += spectrum.vectors[i * n + j] * x[i];
    log_value += -l / 2.0 - std::log(l + 1.0) / 2.0 + l * u * u / (2.0 * (l + 1.0));
  }
  return std::exp(log_value);
}

WickExpI2 wick_exp_I2(const SymTensor& f, int K) {
  if (f.order() != 2) throw DomainError("wick_exp_I2 requires an order-2 tensor");
  if (K < 0 || 2 * K > kMaxSupportedOrder) throw OrderOverflow("series length K out of range");
  const auto matrix = f.to_matrix();
  WickExpI2 w;
  w.spectrum = jacobi_eigen(matrix, f.dim());
  for (double l : w.spectrum.values) {
    if (l <= -1.0) throw DomainError("eigenvalue " + std::to_string(l) + " <= -1: closed form undefined");
    if (std::abs(l) >= 1.0) throw DivergenceError("eigenvalue " + std::to_string(l) + " has |lambda| >= 1");
  }
  for (int i = 0; i < f.dim(); ++i) w.trace += matrix[static_cast<std::size_t>(i * f.dim() + i)];

  const int cap = 2 * K;
  const ChaosVector half_i2 = scale(from_tensor(f, cap), 0.5);
  ChaosVector term = ChaosVector::constant(f.dim(), cap, 1.0);
  ChaosVector sum = term;
  for (int k = 1; k <= K; ++k) {
    term = scale(wick_product_truncated(term, half_i2, cap), 1.0 / k);
    sum = sum + term;
  }
  w.series = scale(sum, std::exp(-w.trace / 2.0));
  return w;
}

bool negative_definite(const SymTensor& f) {
  if (f.order() != 2) throw DomainError("negative_definite requires an order-2 tensor");
  const auto eig = jacobi_eigen(f.to_matrix(), f.dim());
  return eig.values.back() <= 1e-12;
}

bool renorm_product_check(const PolySeries& f, const PolySeries& g, double tolerance) {
  const std::vector<double> unit(static_cast<std::size_t>(f.dim()), 1.0);
  const int cap = f.truncation() + g.truncation();
  const ChaosVector lhs = wick_order_poly(poly_product(f, g), unit, cap);
  const ChaosVector rhs = wick_product(wick_order_poly(f, unit, cap), wick_order_poly(g, unit, cap));
  const ChaosVector diff = lhs - rhs;
  for (const auto& [alpha, c] : diff.terms())
    if (std::abs(c) > tolerance) return false;
  return true;
}

}  // namespace wick
