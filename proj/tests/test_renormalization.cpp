#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "wick/eigen.hpp"
#include "wick/errors.hpp"
#include "wick/renormalization.hpp"
#include "wick/stratonovich.hpp"

using namespace wick;

namespace {

ChaosVector cv(int dim, int order, ChaosVector::Terms t) { return ChaosVector(dim, order, std::move(t)); }
PolySeries monomial(int dim, MultiIndex exps, double a = 1.0) {
  const int deg = exps.degree();
  return PolySeries(dim, deg, {{std::move(exps), a}});
}
const std::vector<double> kUnit3{1.0, 1.0, 1.0};

// Independent oracle for Re E[f(x + iY)]: expand each monomial with the
// binomial theorem over complex numbers and Gaussian moments of Y, in dense
// monomial form; then peel back into Hermite coordinates.
ChaosVector icopy_dense_oracle(const PolySeries& f, std::span<const double> variances) {
  oracle::Dense acc{f.dim(), {}};
  for (const auto& [exps, a] : f.terms()) {
    oracle::Dense term = oracle::dense_constant(f.dim(), a);
    for (const auto& [basis, n] : exps.entries()) {
      const double var = variances[static_cast<std::size_t>(basis - 1)];
      oracle::Dense factor{f.dim(), {}};
      for (int j = 0; j <= n; ++j) {
        // (x + iY)^n = sum_j C(n,j) x^{n-j} (iY)^j
        if (j % 2) continue;
        double moment = std::pow(var, j / 2);
        for (int q = j - 1; q > 0; q -= 2) moment *= q;
        const double ij = (j / 2) % 2 ? -1.0 : 1.0;
        std::vector<int> e(static_cast<std::size_t>(f.dim()), 0);
        e[static_cast<std::size_t>(basis - 1)] = n - j;
        factor.terms[e] += oracle::fact(n) / (oracle::fact(j) * oracle::fact(n - j)) * ij * moment;
      }
      term = oracle::dense_mul(term, factor);
    }
    acc = oracle::dense_add(acc, term);
  }
  // x_i = sigma_i e~_i: rescale exponents before peeling
  oracle::Dense scaled{f.dim(), {}};
  for (const auto& [e, c] : acc.terms) {
    double w = c;
    for (std::size_t i = 0; i < e.size(); ++i) w *= std::pow(std::sqrt(variances[i]), e[i]);
    scaled.terms[e] += w;
  }
  return oracle::from_dense(scaled, f.truncation());
}

}  // namespace

TEST_CASE("PolySeries basics") {
  const auto x = PolySeries::variable(2, 1);
  const auto y = PolySeries::variable(2, 2);
  const auto p = poly_product(x, x) + 3.0 * y + PolySeries::constant(2, 1.0);
  const std::vector<double> pt{2.0, -1.0};
  CHECK(p.evaluate(pt) == 2.0);
  CHECK(p.degree() == 2);
  CHECK(p.truncation() == 2);
  const std::vector<std::complex<double>> z{{1.0, 1.0}, {0.0, 0.0}};
  CHECK(p.evaluate(z) == std::complex<double>(1.0, 2.0));
  CHECK_THROWS_AS(PolySeries(1, 2, {{MultiIndex{{1, 3}}, 1.0}}), Error);
  CHECK_THROWS_AS(PolySeries(1, 3, {{MultiIndex{{2, 1}}, 1.0}}), DimensionMismatch);

  oracle::Rng rng(50);
  const auto F = oracle::random_chaos(rng, 2, 4, 4);
  const auto P = to_poly(F);
  for (int t = 0; t < 10; ++t) {
    const std::vector<double> q{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    CHECK(P.evaluate(q) == doctest::Approx(evaluate_at(F, q)));
  }
}

TEST_CASE("wick_order_poly examples") {
  const std::vector<double> one{1.0}, two{1.0, 1.0};
  CHECK(wick_order_poly(monomial(1, MultiIndex{{1, 2}}), one) == cv(1, 2, {{MultiIndex{{1, 2}}, 1.0}}));
  CHECK(wick_order_poly(monomial(2, MultiIndex{{1, 2}, {2, 1}}), two) ==
        cv(2, 3, {{MultiIndex{{1, 2}, {2, 1}}, 1.0}}));
  CHECK(wick_order_poly(monomial(1, MultiIndex{{1, 3}}), one) == cv(1, 3, {{MultiIndex{{1, 3}}, 1.0}}));
  // non-unit variance: :X^2: = X^2 - s^2 with X = s e~, i.e. s^2 H_2(e~)
  const std::vector<double> var{4.0};
  CHECK(wick_order_poly(monomial(1, MultiIndex{{1, 2}}), var) == cv(1, 2, {{MultiIndex{{1, 2}}, 4.0}}));
  CHECK_THROWS_AS(wick_order_poly(monomial(1, MultiIndex{{1, 2}}), std::vector<double>{-1.0}), Error);
  CHECK_THROWS_AS(wick_order_poly(monomial(1, MultiIndex{{1, 2}}), two), DimensionMismatch);
}

TEST_CASE("wick ordering of a chaos vector and the Stratonovich link") {
  CHECK(wick_order(cv(1, 2, {{MultiIndex{{1, 2}}, 1.0}, {MultiIndex{}, 1.0}})) == cv(1, 2, {{MultiIndex{{1, 2}}, 1.0}}));
  oracle::Rng rng(51);
  for (int t = 0; t < 30; ++t) {
    const int dim = rng.integer(1, 3);
    const auto f = oracle::random_tensor(rng, dim, rng.integer(1, 4));
    CHECK(oracle::max_coeff_diff(wick_order(stratonovich_partial_sum(f, dim)), from_tensor(f)) <= 1e-9);
  }
}

TEST_CASE("independent-copy formula") {
  const std::vector<double> one{1.0};
  CHECK(wick_order_icopy_exact(monomial(1, MultiIndex{{1, 2}}), one) == cv(1, 2, {{MultiIndex{{1, 2}}, 1.0}}));
  CHECK(oracle::max_coeff_diff(wick_order_icopy_exact(monomial(1, MultiIndex{{1, 4}}), one),
                               cv(1, 4, {{MultiIndex{{1, 4}}, 1.0}})) <= 1e-12);
  oracle::Rng rng(52);
  for (int t = 0; t < 50; ++t) {
    const int dim = rng.integer(1, 3);
    const auto f = oracle::random_poly(rng, dim, 6);
    std::vector<double> var(static_cast<std::size_t>(dim));
    for (auto& v : var) v = rng.uniform(0.5, 2.0);
    const auto exact = wick_order_icopy_exact(f, var);
    CHECK(oracle::max_coeff_diff(exact, wick_order_poly(f, var)) <= 1e-9);
    CHECK(oracle::max_coeff_diff(exact, icopy_dense_oracle(f, var)) <= 1e-9);
  }
}

TEST_CASE("independent-copy Monte Carlo") {
  const std::vector<double> one{1.0};
  const auto sq = monomial(1, MultiIndex{{1, 2}});
  const auto est = wick_order_icopy_mc(sq, one, {{2.0}}, 1'000'000, 5);
  CHECK(zscore_check(est.at(0), 3.0) <= kZThreshold);
  const auto cube = wick_order_icopy_mc(monomial(1, MultiIndex{{1, 3}}), one, {{1.0}}, 1'000'000, 6);
  CHECK(zscore_check(cube.at(0), -2.0) <= kZThreshold);
  const auto lin = wick_order_icopy_mc(monomial(1, MultiIndex{{1, 1}}), one, {{0.7}}, 10'000, 7);
  CHECK(lin.at(0).value == doctest::Approx(0.7));
  CHECK(lin.at(0).std_error == 0.0);
  const std::vector<double> var{2.0};
  const auto scaled = wick_order_icopy_mc(sq, var, {{1.5}}, 1'000'000, 8);
  CHECK(zscore_check(scaled.at(0), 1.5 * 1.5 - 2.0) <= kZThreshold);
}

TEST_CASE("series condition and the moment identity") {
  const std::vector<double> one{1.0};
  CHECK(series_condition(monomial(1, MultiIndex{{1, 2}}), one) == 2.0);
  oracle::Rng rng(53);
  for (int t = 0; t < 50; ++t) {
    const auto f = oracle::random_poly(rng, 3, 5);
    std::vector<double> var{rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(0.5, 2)};
    const double lhs = std::pow(l2_norm(wick_order_poly(f, var)), 2);
    CHECK(std::abs(lhs - series_condition(f, var)) <= 1e-12 * std::max(1.0, lhs));
  }
  // term weights of exp(lambda x^2/2): ratio tends to lambda^2, and for |lambda| < 1
  // the partial sums converge to sum_k C(2k,k) (lambda/2)^{2k} = (1 - lambda^2)^{-1/2}
  const auto weight = [&](double lambda, int k) {
    const MultiIndex e = MultiIndex::unit(1, 2 * k);
    return series_condition(PolySeries(1, 2 * k, {{e, exp_square_series(lambda, k).coeff(e)}}), one);
  };
  CHECK(weight(0.5, 60) / weight(0.5, 59) == doctest::Approx(0.25).epsilon(0.01));
  CHECK(weight(1.0, 60) / weight(1.0, 59) >= 0.99);
  CHECK(series_condition(exp_square_series(0.5, 60), one) == doctest::Approx(1.0 / std::sqrt(0.75)).epsilon(1e-12));
  CHECK(series_condition(exp_square_series(1.0, 80), one) > series_condition(exp_square_series(1.0, 40), one) + 1.0);
}

TEST_CASE("Wick exponential of a square") {
  const auto w = wick_exp_square(0.5);
  const double ref = std::exp(1.0 / 6.0) / std::sqrt(1.5);  // 0.96457674 (quoted elsewhere rounded as 0.964585)
  CHECK(w.closed_form(1.0) == doctest::Approx(ref).epsilon(1e-14));
  CHECK(std::abs(w.closed_form(1.0) - 0.964585) <= 1e-5);
  const std::vector<double> x1{1.0};
  CHECK(evaluate_at(w.series, x1) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(w.tail_weight < 1e-8);
  CHECK(wick_exp_square(0.0).closed_form(1.7) == 1.0);
  CHECK(wick_exp_square(-0.5).closed_form(0.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(wick_exp_square(1.0), DivergenceError);
  CHECK_THROWS_AS(wick_exp_square(-1.3), DivergenceError);
  for (double lambda : {-0.5, -0.2, 0.2, 0.5})
    for (double x = -2.0; x <= 2.0; x += 0.25) {
      const auto s = wick_exp_square(lambda);
      const std::vector<double> p{x};
      CHECK(std::abs(evaluate_at(s.series, p) - s.closed_form(x)) <= 1e-6);
    }
}

TEST_CASE("Wick exponential of a double integral") {
  const auto w = wick_exp_I2(SymTensor::from_tuples(1, 2, {{{1, 1}, 0.5}}));
  const std::vector<double> x1{1.0};
  const double ref = std::exp(-0.25) * std::exp(1.0 / 6.0) / std::sqrt(1.5);  // 0.75121312
  CHECK(w.closed_form(x1) == doctest::Approx(ref).epsilon(1e-14));
  CHECK(std::abs(w.closed_form(x1) - 0.751222) <= 1e-5);
  CHECK(evaluate_at(w.series, x1) == doctest::Approx(ref).epsilon(1e-12));

  const auto zero = wick_exp_I2(SymTensor(2, 2));
  const std::vector<double> x2{0.3, -1.2};
  CHECK(zero.closed_form(x2) == 1.0);
  CHECK(zero.series == ChaosVector::constant(2, 80, 1.0));

  const auto diag = wick_exp_I2(SymTensor::from_tuples(2, 2, {{{1, 1}, 0.3}, {{2, 2}, -0.2}}));
  const auto a = wick_exp_I2(SymTensor::from_tuples(1, 2, {{{1, 1}, 0.3}}));
  const auto b = wick_exp_I2(SymTensor::from_tuples(1, 2, {{{1, 1}, -0.2}}));
  const std::vector<double> xa{0.3}, xb{-1.2};
  CHECK(diag.closed_form(x2) == doctest::Approx(a.closed_form(xa) * b.closed_form(xb)));
  CHECK(evaluate_at(diag.series, x2) == doctest::Approx(diag.closed_form(x2)).epsilon(1e-9));

  // a rotated (non-diagonal) form: series and spectral closed form agree
  const auto rot = wick_exp_I2(SymTensor::from_tuples(2, 2, {{{1, 1}, 0.1}, {{1, 2}, 0.25}, {{2, 2}, -0.15}}));
  for (double u = -1.5; u <= 1.5; u += 0.5) {
    const std::vector<double> p{u, 0.7 - u};
    CHECK(std::abs(evaluate_at(rot.series, p) - rot.closed_form(p)) <= 1e-9);
  }

  CHECK_THROWS_AS(wick_exp_I2(SymTensor::from_tuples(1, 2, {{{1, 1}, -1.0}})), DomainError);
  CHECK_THROWS_AS(wick_exp_I2(SymTensor::from_tuples(1, 2, {{{1, 1}, 1.5}})), DivergenceError);
  CHECK_THROWS_AS(wick_exp_I2(SymTensor(2, 3)), DomainError);
}

TEST_CASE("negative definiteness") {
  CHECK(negative_definite(SymTensor::from_tuples(1, 2, {{{1, 1}, -1.0}})));
  CHECK_FALSE(negative_definite(SymTensor::from_tuples(2, 2, {{{1, 2}, 0.5}})));
  CHECK(negative_definite(SymTensor(3, 2)));
  CHECK_THROWS_AS(negative_definite(SymTensor(2, 3)), DomainError);
}

TEST_CASE("renormalized products") {
  const auto x = PolySeries::variable(1, 1);
  CHECK(renorm_product_check(x, x));
  CHECK(renorm_product_check(poly_product(x, x), x));
  oracle::Rng rng(54);
  for (int t = 0; t < 40; ++t) {
    const int dim = rng.integer(1, 3);
    CHECK(renorm_product_check(oracle::random_poly(rng, dim, 4), oracle::random_poly(rng, dim, 4)));
  }
  // the ordinary product does not commute with Wick ordering
  const std::vector<double> one{1.0};
  const auto lhs = wick_order_poly(poly_product(x, x), one);
  const auto rhs = ordinary_product(wick_order_poly(x, one, 2), wick_order_poly(x, one, 2));
  CHECK(lhs != rhs);
}

TEST_CASE("Jacobi eigensolver") {
  const std::vector<double> m{2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, -1.0};
  const auto e = jacobi_eigen(m, 3);
  CHECK(e.values[0] == doctest::Approx(-1.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  CHECK(e.values[2] == doctest::Approx(3.0));
  CHECK_THROWS_AS(jacobi_eigen(std::vector<double>{1.0, 2.0, 0.0, 1.0}, 2), Error);

  oracle::Rng rng(55);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.integer(1, 6);
    std::vector<double> a(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = a[static_cast<std::size_t>(j * n + i)] = rng.uniform(-1, 1);
    const auto r = jacobi_eigen(a, n);
    CHECK(r.sweeps <= kJacobiMaxSweeps);
    for (int j = 0; j < n; ++j) {
      // A v = lambda v and |v| = 1
      double norm = 0.0;
      for (int i = 0; i < n; ++i) {
        double av = 0.0;
        for (int k = 0; k < n; ++k) av += a[static_cast<std::size_t>(i * n + k)] * r.vectors[static_cast<std::size_t>(k * n + j)];
        CHECK(std::abs(av - r.values[static_cast<std::size_t>(j)] * r.vectors[static_cast<std::size_t>(i * n + j)]) <= 1e-10);
        norm += r.vectors[static_cast<std::size_t>(i * n + j)] * r.vectors[static_cast<std::size_t>(i * n + j)];
      }
      CHECK(norm == doctest::Approx(1.0));
      if (j > 0) CHECK(r.values[static_cast<std::size_t>(j - 1)] <= r.values[static_cast<std::size_t>(j)]);
    }
  }
}
