#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wick/chaos.hpp"
#include "wick/eigen.hpp"
#include "wick/montecarlo.hpp"

namespace wick {

/// Polynomial (or truncated power series) f(x) = sum_n a_n x_1^{n_1} ... x_d^{n_d}.
/// The multi-index key holds the monomial exponents.
class PolySeries {
 public:
  using Terms = std::map<MultiIndex, double>;

  PolySeries(int dim, int truncation, Terms terms = {});

  /// The monomial x_basis.
  static PolySeries variable(int dim, int basis, int truncation = 1);
  static PolySeries constant(int dim, double c, int truncation = 0);

  int dim() const noexcept { return dim_; }
  int truncation() const noexcept { return truncation_; }
  const Terms& terms() const noexcept { return terms_; }
  int degree() const noexcept;
  double coeff(const MultiIndex& exps) const;

  double evaluate(std::span<const double> x) const;
  std::complex<double> evaluate(std::span<const std::complex<double>> z) const;

  bool operator==(const PolySeries&) const = default;

 private:
  int dim_;
  int truncation_;
  Terms terms_;
};

PolySeries operator+(const PolySeries& f, const PolySeries& g);
PolySeries operator*(double c, const PolySeries& f);
/// Exact product; the truncation of the result is the sum of truncations.
PolySeries poly_product(const PolySeries& f, const PolySeries& g);
/// Monomial expansion of a chaos vector in the coordinates e~_i.
PolySeries to_poly(const ChaosVector& F);

/// :f(X_1..X_d): with X_i = sigma_i e~_i and sigma_i^2 = variances[i]:
/// each monomial becomes prod_i sigma_i^{n_i} H_{n_i}(e~_i).
/// max_order < 0 means f.truncation().
ChaosVector wick_order_poly(const PolySeries& f, std::span<const double> variances, int max_order = -1);
/// Wick ordering with unit variances of a variable given in chaos form.
ChaosVector wick_order(const ChaosVector& F);

/// E[f(X + iY) | X] for an independent copy Y, expanded symbolically with
/// the Gaussian moments of Y and collected into chaos coordinates.
ChaosVector wick_order_icopy_exact(const PolySeries& f, std::span<const double> variances, int max_order = -1);

/// Monte Carlo over Y of Re g(x + iY) at one probe point x (X-coordinates).
using ComplexFunction = std::function<std::complex<double>(std::span<const std::complex<double>>)>;
Estimate icopy_mc(const ComplexFunction& g, std::span<const double> x, std::span<const double> variances,
                  std::int64_t n_samples, std::uint64_t seed, const SamplingOptions& options = {});
/// One estimate per probe point; compare against wick_order_poly evaluated at x / sigma.
std::vector<Estimate> wick_order_icopy_mc(const PolySeries& f, std::span<const double> variances,
                                          const std::vector<std::vector<double>>& probes, std::int64_t n_samples,
                                          std::uint64_t seed, const SamplingOptions& options = {});

/// sum_n n_1!...n_d! a_n^2 prod_i sigma_i^{2 n_i}.
double series_condition(const PolySeries& f, std::span<const double> variances);

/// Taylor coefficients of exp(lambda x^2 / 2) through degree 2K.
PolySeries exp_square_series(double lambda, int K);

/// :exp(lambda X^2 / 2): for a standard normal X.
struct WickExpSquare {
  double lambda = 0.0;
  int terms = 0;  // K
  /// sum_{k<=K} lambda^k / (2^k k!) H_{2k}, capped at degree 2K.
  ChaosVector series{1, 0};
  /// L^2 weight (2K+2)! a_{K+1}^2 of the first omitted term.
  double tail_weight = 0.0;

  /// (lambda + 1)^{-1/2} exp(lambda x^2 / (2 (lambda + 1))).
  double closed_form(double x) const;
};

/// Throws DivergenceError when |lambda| >= 1.
WickExpSquare wick_exp_square(double lambda, int K = 40);

/// :exp(I_2(f) / 2): for an order-2 tensor f with eigenvalues lambda_n.
struct WickExpI2 {
  SymmetricEigen spectrum;
  double trace = 0.0;
  /// exp(-Tr f / 2) * sum_{k<=K} (I_2(f)/2)^{<>k} / k!, capped at degree 2K.
  ChaosVector series{1, 0};

  /// prod_n exp(-lambda_n/2 - log(lambda_n + 1)/2 + lambda_n u_n^2 / (2 (lambda_n + 1)))
  /// with u_n the coordinate of x along the n-th eigenvector.
  double closed_form(std::span<const double> x) const;
};

/// Throws DomainError for an eigenvalue <= -1 and DivergenceError when some
/// |lambda_n| >= 1 makes the series path diverge.
WickExpI2 wick_exp_I2(const SymTensor& f, int K = 40);

/// All eigenvalues of the matrix of f are <= 1e-12.
bool negative_definite(const SymTensor& f);

/// Whether :fg: equals :f: <> :g: coefficientwise within `tolerance` (unit variances).
bool renorm_product_check(const PolySeries& f, const PolySeries& g, double tolerance = 1e-9);

}  // namespace wick
