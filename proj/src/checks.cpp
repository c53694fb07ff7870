#include "wick/checks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wick/errors.hpp"
#include "wick/malliavin.hpp"
#include "wick/montecarlo.hpp"
#include "wick/random_instances.hpp"
#include "wick/renormalization.hpp"
#include "wick/stransform.hpp"
#include "wick/stratonovich.hpp"

namespace wick {

nlohmann::ordered_json CheckResult::to_json() const {
  nlohmann::ordered_json j;
  j["identity"] = identity;
  if (statistical) {
    j["exact"] = exact;
    j["estimate"] = estimate;
    j["std_error"] = std_error;
    j["zscore"] = zscore;
    j["seed"] = seed;
  } else {
    j["cases"] = cases;
    j["max_error"] = max_error;
    j["tolerance"] = tolerance;
    j["seed"] = seed;
  }
  j["passed"] = passed;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

namespace {

using Results = std::vector<CheckResult>;

double coeff_diff(const ChaosVector& a, const ChaosVector& b) {
  double m = 0.0;
  for (const auto& [alpha, c] : a.terms()) m = std::max(m, std::abs(c - b.coeff(alpha)));
  for (const auto& [alpha, c] : b.terms()) m = std::max(m, std::abs(c - a.coeff(alpha)));
  return m;
}

double relative(double value, double ref) { return std::abs(value - ref) / std::max(1.0, std::abs(ref)); }

CheckResult exact_result(std::string identity, int cases, double max_error, double tolerance, std::uint64_t seed,
                         std::string detail = {}) {
  CheckResult r;
  r.identity = std::move(identity);
  r.cases = cases;
  r.max_error = max_error;
  r.tolerance = tolerance;
  r.seed = seed;
  r.passed = max_error <= tolerance;
  r.detail = std::move(detail);
  return r;
}

CheckResult statistical_result(std::string identity, double exact, const Estimate& e) {
  CheckResult r;
  r.identity = std::move(identity);
  r.statistical = true;
  r.exact = exact;
  r.estimate = e.value;
  r.std_error = e.std_error;
  r.seed = e.seed;
  r.cases = 1;
  r.tolerance = kZThreshold;
  try {
    r.zscore = zscore_check(e, exact);
    r.passed = r.zscore <= kZThreshold;
  } catch (const HardMismatch& ex) {
    r.zscore = std::numeric_limits<double>::infinity();
    r.passed = false;
    r.detail = ex.what();
  }
  return r;
}

/// Boolean property folded into the exact-result shape (error 0 or 1).
CheckResult predicate_result(std::string identity, int cases, int failures, std::uint64_t seed, std::string detail) {
  CheckResult r = exact_result(std::move(identity), cases, failures, 0.0, seed, std::move(detail));
  return r;
}

std::vector<double> sample_point(const GaussianStream& stream, std::int64_t row) {
  std::vector<double> x(static_cast<std::size_t>(stream.dim()));
  stream.fill(row, 1, x);
  return x;
}

// Random pair corpus shared by the two product oracles: d <= 4, combined order <= 6.
struct ProductPair {
  ChaosVector F;
  ChaosVector G;
};

std::vector<ProductPair> product_corpus(std::uint64_t seed, int count) {
  InstanceGenerator gen(seed);
  std::vector<ProductPair> out;
  for (int i = 0; i < count; ++i) {
    const int dim = gen.integer(1, 4);
    const int a = gen.integer(0, 6);
    const int b = gen.integer(0, 6 - a);
    ChaosVector F = gen.chaos(dim, a, 6, gen.integer(1, 5));
    ChaosVector G = gen.chaos(dim, b, 6, gen.integer(1, 5));
    out.push_back({std::move(F), std::move(G)});
  }
  return out;
}

// ---------------------------------------------------------------------------

Results check_wick_malliavin(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 1;
  double err = 0.0, point_err = 0.0;
  const auto corpus = product_corpus(seed, 200);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [F, G] = corpus[i];
    const ChaosVector conv = wick_product(F, G);
    const ChaosVector mall = wick_via_malliavin(F, G);
    err = std::max(err, coeff_diff(conv, mall));
    const GaussianStream stream(seed + 1000 + i, F.dim());
    for (int k = 0; k < 5; ++k) {
      const auto x = sample_point(stream, k);
      point_err = std::max(point_err, relative(evaluate_at(conv, x), evaluate_at(mall, x)));
    }
  }
  return {exact_result("wick_product == alternating Malliavin sum", 200, err, cfg.tolerance, seed),
          exact_result("wick_product == alternating Malliavin sum (pointwise)", 200, point_err, 1e-8, seed)};
}

Results check_product_wick_gradients(const CheckConfig& cfg) {
  // same corpus as the Wick oracle
  const std::uint64_t seed = cfg.seed + 1;
  double err = 0.0, lin_point = 0.0, grad_point = 0.0;
  const auto corpus = product_corpus(seed, 200);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [F, G] = corpus[i];
    const ChaosVector lin = ordinary_product(F, G);
    const ChaosVector grad = product_via_wick_gradients(F, G);
    err = std::max(err, coeff_diff(lin, grad));
    const GaussianStream stream(seed + 5000 + i, F.dim());
    for (int k = 0; k < 100; ++k) {
      const auto x = sample_point(stream, k);
      const double ref = evaluate_at(F, x) * evaluate_at(G, x);
      lin_point = std::max(lin_point, relative(evaluate_at(lin, x), ref));
      grad_point = std::max(grad_point, relative(evaluate_at(grad, x), ref));
    }
  }
  return {exact_result("ordinary_product == Wick-gradient sum", 200, err, cfg.tolerance, seed),
          exact_result("ordinary_product == F(x)G(x) at 100 sample points", 200, lin_point, 1e-8, seed),
          exact_result("Wick-gradient sum == F(x)G(x) at 100 sample points", 200, grad_point, 1e-8, seed)};
}

Results check_isometry(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 3;
  InstanceGenerator gen(seed);
  double err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int dim = gen.integer(1, 4);
    const ChaosVector F = gen.chaos(dim, 4, 8, gen.integer(1, 6));
    err = std::max(err, relative(expectation(ordinary_product(F, F)), inner_product(F, F)));
  }
  Results out{exact_result("E[F^2] exact == sum alpha! c_alpha^2", 100, err, cfg.tolerance, seed)};
  const ChaosVector F = gen.chaos(3, 3, 3, 5);
  const Estimate e = estimate_mean(
      3, cfg.samples, seed + 100,
      [&](std::span<const double> x) {
        const double v = evaluate_at(F, x);
        return v * v;
      });
  out.push_back(statistical_result("E[F^2] Monte Carlo == sum alpha! c_alpha^2", inner_product(F, F), e));
  return out;
}

Results check_exponential_law(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 4;
  InstanceGenerator gen(seed);
  double err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int dim = gen.integer(1, 4);
    const HVector f = gen.vector(dim), g = gen.vector(dim);
    err = std::max(err, coeff_diff(wick_product_truncated(exponential_vector(f, 8), exponential_vector(g, 8), 8),
                                   exponential_vector(f + g, 8)));
  }
  return {exact_result("eps(f) <> eps(g) == eps(f+g) through order 8", 50, err, cfg.tolerance, seed)};
}

Results check_stransform(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 5;
  InstanceGenerator gen(seed);
  double err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int dim = gen.integer(1, 4);
    const int a = gen.integer(0, 6);
    const ChaosVector F = gen.chaos(dim, a, 6), G = gen.chaos(dim, 6 - a, 6);
    const HVector xi = gen.vector(dim);
    const double prod = s_transform(F, xi) * s_transform(G, xi);
    err = std::max(err, relative(s_transform(wick_product(F, G), xi), prod));
  }
  Results out{exact_result("S(F<>G)(xi) == S(F)(xi) S(G)(xi)", 100, err, cfg.tolerance, seed)};

  const ChaosVector H2(1, 2, {{MultiIndex{{1, 2}}, 1.0}});
  out.push_back(statistical_result("E[H2(e1) eps(2 e1)] == S(H2)(2 e1)", s_transform(H2, HVector{2.0}),
                                   s_transform_mc(H2, HVector{2.0}, cfg.samples, seed + 100)));
  const ChaosVector F = gen.chaos(3, 3, 3, 6);
  const HVector xi = gen.vector(3, 0.7);
  out.push_back(statistical_result("E[F eps(xi)] == S(F)(xi) (random F)", s_transform(F, xi),
                                   s_transform_mc(F, xi, cfg.samples, seed + 101)));
  return out;
}

Results check_wick_gaussian_chain(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 6;
  InstanceGenerator gen(seed);
  double err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int dim = gen.integer(1, 4);
    const ChaosVector F = gen.chaos(dim, 4, 5);
    const HVector g = gen.vector(dim);
    const ChaosVector a = ordinary_product(F, ChaosVector::gaussian(g, 5)) - derivative_dir(F, g);
    const ChaosVector b = divergence(times_vector(F, g));
    const ChaosVector c = wick_product(F, ChaosVector::gaussian(g, 5));
    const ChaosVector d = wick_with_gaussian(F, g);
    err = std::max({err, coeff_diff(a, b), coeff_diff(a, c), coeff_diff(a, d)});
  }
  return {exact_result("F<>g~ == F g~ - D_g F == delta(F g) == wick_product(F, g~)", 100, err, cfg.tolerance, seed)};
}

Results check_humeyer(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 7;
  InstanceGenerator gen(seed);
  double err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SymTensor f = gen.tensor(gen.integer(1, 3), gen.integer(0, 5), gen.integer(1, 8));
    err = std::max(err, coeff_diff(ito_from_stratonovich(f), from_tensor(f)));
  }
  Results out{exact_result("ito_from_stratonovich(f) == I_n(f)", 100, err, cfg.tolerance, seed)};
  const ChaosVector S4 = stratonovich_integral(SymTensor::power(HVector{1.0}, 4));
  double point = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double x = -2.0 + 4.0 * k / 19.0;
    const std::vector<double> p{x};
    point = std::max(point, relative(evaluate_at(S4, p), std::pow(x, 4)));
  }
  out.push_back(exact_result("S_4(e1^{(x)4}) == x^4 at 20 points", 20, point, 1e-8, seed));
  return out;
}

Results check_wick_exp_square(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 8;
  Results out;
  const int K = cfg.wick_exp_terms;
  for (double lambda : {-0.8, -0.5, -0.2, 0.2, 0.5, 0.8}) {
    const WickExpSquare w = wick_exp_square(lambda, K);
    double err = 0.0;
    for (int k = 0; k <= 40; ++k) {
      const double x = -2.0 + 0.1 * k;
      const std::vector<double> p{x};
      err = std::max(err, std::abs(evaluate_at(w.series, p) - w.closed_form(x)));
    }
    std::ostringstream id, detail;
    id << ":exp(lambda X^2/2): series K=" << K << " vs closed form, lambda=" << lambda;
    detail << "tail weight " << w.tail_weight;
    out.push_back(exact_result(id.str(), 41, err, 1e-6, seed, detail.str()));
  }
  // Independent copy: Re E[exp(lambda (x + iY)^2 / 2)].  The estimator has finite
  // variance only for lambda > -1/2, which fixes the probe set.
  const std::vector<double> unit{1.0};
  std::uint64_t s = seed + 100;
  for (double lambda : {-0.2, 0.2, 0.5, 0.8})
    for (double x : {0.0, 1.0, 1.5}) {
      const ComplexFunction g = [lambda](std::span<const std::complex<double>> z) {
        return std::exp(lambda * z[0] * z[0] / 2.0);
      };
      const std::vector<double> p{x};
      const Estimate e = icopy_mc(g, p, unit, cfg.samples, s++);
      std::ostringstream id;
      id << "E[exp(lambda (x+iY)^2/2)] == closed form, lambda=" << lambda << ", x=" << x;
      out.push_back(statistical_result(id.str(), wick_exp_square(lambda, 0).closed_form(x), e));
    }
  int failures = 0;
  for (double lambda : {1.0, -1.0, 1.5, -2.0}) {
    try {
      (void)wick_exp_square(lambda, K);
      ++failures;
    } catch (const DivergenceError&) {
    }
  }
  out.push_back(predicate_result("divergence error raised for |lambda| >= 1", 4, failures, seed,
                                 "lambda in {1, -1, 1.5, -2}"));
  return out;
}

Results check_moment_identity(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 9;
  InstanceGenerator gen(seed);
  double err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int dim = gen.integer(1, 3);
    const PolySeries f = gen.poly(dim, 6, gen.integer(1, 6));
    std::vector<double> var(static_cast<std::size_t>(dim));
    for (auto& v : var) v = gen.uniform(0.25, 2.0);
    const double n = l2_norm(wick_order_poly(f, var));
    const double ref = series_condition(f, var);
    err = std::max(err, std::abs(n * n - ref) / std::max(std::abs(ref), 1e-300));
  }
  return {exact_result("|:f:|^2 == series condition (relative)", 100, err, 1e-12, seed)};
}

Results check_icopy(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 10;
  InstanceGenerator gen(seed);
  double err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int dim = gen.integer(1, 3);
    const PolySeries f = gen.poly(dim, 6, gen.integer(1, 6));
    std::vector<double> var(static_cast<std::size_t>(dim));
    for (auto& v : var) v = gen.uniform(0.25, 2.0);
    err = std::max(err, coeff_diff(wick_order_icopy_exact(f, var), wick_order_poly(f, var)));
  }
  Results out{exact_result("E[f(X+iY)|X] symbolic == Wick ordering", 100, err, cfg.tolerance, seed)};
  const std::vector<double> unit{1.0};
  const auto x2 = wick_order_icopy_mc(PolySeries(1, 2, {{MultiIndex{{1, 2}}, 1.0}}), unit, {{2.0}}, cfg.samples,
                                      seed + 100);
  out.push_back(statistical_result("Re E[(2+iY)^2] == :x^2:(2)", 3.0, x2.at(0)));
  const auto x3 = wick_order_icopy_mc(PolySeries(1, 3, {{MultiIndex{{1, 3}}, 1.0}}), unit, {{1.0}}, cfg.samples,
                                      seed + 101);
  out.push_back(statistical_result("Re E[(1+iY)^3] == :x^3:(1)", -2.0, x3.at(0)));
  // a random two-variable polynomial with unequal variances at a random probe
  const PolySeries f = gen.poly(2, 4, 5);
  const std::vector<double> var{0.5, 1.5};
  const std::vector<double> x{gen.uniform(-1.5, 1.5), gen.uniform(-1.5, 1.5)};
  const std::vector<double> scaled{x[0] / std::sqrt(var[0]), x[1] / std::sqrt(var[1])};
  const auto est = wick_order_icopy_mc(f, var, {x}, cfg.samples, seed + 102);
  out.push_back(statistical_result("Re E[f(x+iY)] == :f:(x) (random f, sigma^2 = 0.5, 1.5)",
                                   evaluate_at(wick_order_poly(f, var), scaled), est.at(0)));
  return out;
}

Results check_hypercontractivity(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 11;
  InstanceGenerator gen(seed);
  const double alpha = 1.0 / std::sqrt(3.0);
  double worst = -1e300;  // max of |Gamma F|_4 - |F|_2, must stay <= 0
  for (int i = 0; i < 100; ++i) {
    const int dim = gen.integer(1, 3);
    const ChaosVector F = gen.chaos(dim, 3, 12, gen.integer(1, 5));
    const double lhs = std::pow(expectation(ordinary_power(second_quantization(F, alpha), 4)), 0.25);
    worst = std::max(worst, lhs - l2_norm(F));
  }
  Results out{exact_result("|Gamma(1/sqrt3) F|_4 <= |F|_2 (max excess)", 100, std::max(worst, 0.0), 0.0, seed,
                           "max(lhs - rhs) = " + std::to_string(worst))};
  const ChaosVector e1 = ChaosVector::coordinate(1, 4, 1);
  const double ratio = std::pow(expectation(ordinary_power(second_quantization(e1, alpha), 4)), 0.25) / l2_norm(e1);
  const double expected = std::pow(3.0, 0.25) / std::sqrt(3.0);
  CheckResult probe = exact_result("near-tight probe F = e~1: ratio == 3^{1/4}/sqrt3", 1, std::abs(ratio - expected),
                                   1e-12, seed, "ratio = " + std::to_string(ratio));
  probe.passed = probe.passed && ratio < 1.0;
  out.push_back(probe);
  return out;
}

// I_n of a random combination of symmetric products drawn from `directions`.
SymTensor tensor_on(InstanceGenerator& gen, const std::vector<HVector>& directions, int order, int dim) {
  SymTensor acc(dim, order);
  for (int t = 0; t < 3; ++t) {
    std::vector<HVector> factors;
    for (int k = 0; k < order; ++k)
      factors.push_back(directions[static_cast<std::size_t>(gen.integer(0, static_cast<int>(directions.size()) - 1))]);
    const double c = gen.uniform(0.5, 1.0) * (gen.integer(0, 1) ? 1.0 : -1.0);
    acc = acc + c * SymTensor::symmetric_product(factors, dim);
  }
  return acc;
}

Results check_independence(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 12;
  InstanceGenerator gen(seed);
  const int dim = 4;
  double zero_err = 0.0, min_gap = 1e300;
  int zero_flagged = 0, nonzero_flagged = 0;
  for (int i = 0; i < 100; ++i) {
    const bool correlated = i >= 50;
    const auto q = gen.orthonormal_basis(dim);
    const int n = gen.integer(1, 3), m = gen.integer(1, 3);
    // Independent pairs live on disjoint orthogonal subspaces.  Correlated pairs
    // share q0 through a q0^{(x)k} term, so <f,q0> and <g,q0> are nonzero and the
    // contraction <f,q0> (x)^ <g,q0> cannot cancel.
    SymTensor f = tensor_on(gen, {q[0], q[1]}, n, dim);
    SymTensor g = tensor_on(gen, {q[2], q[3]}, m, dim);
    if (correlated) {
      const auto power = [&](int k) { return SymTensor::power(q[0], k); };
      f = tensor_on(gen, {q[1]}, n, dim) + gen.uniform(0.5, 1.0) * power(n);
      g = tensor_on(gen, {q[2], q[3]}, m, dim) + gen.uniform(0.5, 1.0) * power(m);
    }
    const int cap = 2 * (n + m);
    const ChaosVector F = from_tensor(f, cap), G = from_tensor(g, cap);
    const ChaosVector F2 = ordinary_product(F, F), G2 = ordinary_product(G, G);
    const double joint = expectation(ordinary_product(F2, G2));
    const double split = expectation(F2) * expectation(G2);
    if (!correlated) {
      zero_err = std::max(zero_err, relative(joint, split));
      if (!independent(f, g)) ++zero_flagged;
    } else {
      min_gap = std::min(min_gap, std::abs(joint - split));
      if (independent(f, g)) ++nonzero_flagged;
    }
  }
  CheckResult gap = exact_result("contraction != 0: E[F^2 G^2] - E[F^2]E[G^2] > 1e-6", 50, 0.0, 0.0, seed,
                                 "min gap = " + std::to_string(min_gap));
  gap.max_error = min_gap > 1e-6 ? 0.0 : 1.0;
  gap.passed = min_gap > 1e-6;
  return {exact_result("contraction == 0: E[F^2 G^2] == E[F^2]E[G^2]", 50, zero_err, cfg.tolerance, seed),
          predicate_result("independent() agrees with the construction", 100, zero_flagged + nonzero_flagged, seed,
                           std::to_string(zero_flagged) + " false negatives, " + std::to_string(nonzero_flagged) +
                               " false positives"),
          gap};
}

Results check_norm_inequality(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 13;
  InstanceGenerator gen(seed);
  const double p = std::sqrt(2.0), q = std::sqrt(2.0), r = 1.0;
  double min_slack = 1e300;
  for (int i = 0; i < 100; ++i) {
    const int dim = gen.integer(1, 4);
    const int a = gen.integer(0, 4);
    const ChaosVector F = gen.chaos(dim, a, 8), G = gen.chaos(dim, gen.integer(0, 4), 8);
    min_slack = std::min(min_slack, gamma_norm(F, p) * gamma_norm(G, q) - gamma_norm(wick_product(F, G), r));
  }
  CheckResult res = exact_result("|F<>G|_(1) <= |F|_(sqrt2) |G|_(sqrt2)", 100, std::max(0.0, -min_slack), 0.0, seed,
                                 "min slack = " + std::to_string(min_slack));
  return {res};
}

Results check_translation(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 14;
  InstanceGenerator gen(seed);
  double cov = 0.0, leibniz = 0.0, shift = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int dim = gen.integer(1, 4);
    const ChaosVector F = gen.chaos(dim, 3, 6), G = gen.chaos(dim, 3, 6);
    const HVector xi = gen.vector(dim), eta = gen.vector(dim);
    cov = std::max(cov, coeff_diff(translate(wick_product(F, G), xi), wick_product(translate(F, xi), translate(G, xi))));
    const HValuedChaos lhs = gradient(wick_product(F, G));
    const HValuedChaos rhs = wick_product(gradient(F), G) + wick_product(F, gradient(G));
    for (int j = 1; j <= dim; ++j) leibniz = std::max(leibniz, coeff_diff(lhs.along(j), rhs.along(j)));
    shift = std::max(shift, relative(s_transform(translate(F, xi), eta), s_transform(F, xi + eta)));
  }
  return {exact_result("tau_xi(F<>G) == tau_xi F <> tau_xi G", 50, cov, cfg.tolerance, seed),
          exact_result("D(F<>G) == DF<>G + F<>DG", 50, leibniz, cfg.tolerance, seed),
          exact_result("S(tau_xi F)(eta) == S(F)(xi+eta)", 50, shift, cfg.tolerance, seed)};
}

Results check_renorm_product(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 15;
  InstanceGenerator gen(seed);
  double err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int dim = gen.integer(1, 3);
    const PolySeries f = gen.poly(dim, 4), g = gen.poly(dim, 4);
    const std::vector<double> unit(static_cast<std::size_t>(dim), 1.0);
    const int cap = 8;
    err = std::max(err, coeff_diff(wick_order_poly(poly_product(f, g), unit, cap),
                                   wick_product(wick_order_poly(f, unit, cap), wick_order_poly(g, unit, cap))));
  }
  return {exact_result(":fg: == :f: <> :g:", 100, err, cfg.tolerance, seed)};
}

Results check_pairing(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 16;
  InstanceGenerator gen(seed);
  double err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int dim = gen.integer(1, 4);
    const ChaosVector F = gen.chaos(dim, 3, 8), G = gen.chaos(dim, 3, 8);
    const HVector f = gen.vector(dim), g = gen.vector(dim);
    const double lhs = expectation(ordinary_product(wick_with_gaussian(F, f), wick_with_gaussian(G, g)));
    const double rhs = expectation(ordinary_product(F, G)) * f.dot(g) +
                       expectation(ordinary_product(derivative_dir(F, g), derivative_dir(G, f)));
    err = std::max(err, relative(lhs, rhs));
  }
  Results out{exact_result("E[(F<>f~)(G<>g~)] == E[FG<f,g> + D_gF D_fG]", 50, err, cfg.tolerance, seed)};
  const ChaosVector F = gen.chaos(2, 2, 8), G = gen.chaos(2, 2, 8);
  const HVector f = gen.vector(2), g = gen.vector(2);
  const ChaosVector A = wick_with_gaussian(F, f), B = wick_with_gaussian(G, g);
  const double rhs = expectation(ordinary_product(F, G)) * f.dot(g) +
                     expectation(ordinary_product(derivative_dir(F, g), derivative_dir(G, f)));
  const Estimate e = estimate_mean(2, cfg.samples, seed + 100,
                                   [&](std::span<const double> x) { return evaluate_at(A, x) * evaluate_at(B, x); });
  out.push_back(statistical_result("E[(F<>f~)(G<>g~)] Monte Carlo", rhs, e));
  return out;
}

Results check_stratonovich_link(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 17;
  InstanceGenerator gen(seed);
  double link = 0.0, prop = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int dim = gen.integer(1, 3);
    const int n = gen.integer(0, 5);
    const SymTensor f = gen.tensor(dim, n);
    link = std::max(link, coeff_diff(wick_order(stratonovich_partial_sum(f, dim)), from_tensor(f)));
    ChaosVector rhs(dim, n);
    for (int k = 0; 2 * k <= n; ++k)
      rhs = rhs + ((k % 2 ? -1.0 : 1.0) * humeyer_weight(n, k)) * from_tensor(trace_k(f, k), n);
    prop = std::max(prop, coeff_diff(wick_order(from_tensor(f)), rhs));
  }
  return {exact_result(":S_n(f): == I_n(f)", 50, link, cfg.tolerance, seed),
          exact_result(":I_n(f): == sum (-1)^k n!/(2^k k!(n-2k)!) I_{n-2k}(Tr^k f)", 50, prop, cfg.tolerance, seed)};
}

Results check_sampling(const CheckConfig& cfg) {
  const std::uint64_t seed = cfg.seed + 18;
  const ChaosVector e1 = ChaosVector::coordinate(1, 2, 1);
  const Estimate mean = estimate_expectation(e1, cfg.samples, seed);
  const Estimate var = estimate_expectation(ordinary_product(e1, e1), cfg.samples, seed);
  const ChaosVector H2(1, 2, {{MultiIndex{{1, 2}}, 1.0}});
  return {statistical_result("E[e~1] == 0", 0.0, mean), statistical_result("E[e~1^2] == 1", 1.0, var),
          statistical_result("E[H2(e~1)] == 0", 0.0, estimate_expectation(H2, cfg.samples, seed + 1))};
}

using CheckFn = std::function<Results(const CheckConfig&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks{
      {"wick_malliavin", check_wick_malliavin},
      {"product_wick_gradients", check_product_wick_gradients},
      {"isometry", check_isometry},
      {"exponential_law", check_exponential_law},
      {"stransform", check_stransform},
      {"wick_gaussian_chain", check_wick_gaussian_chain},
      {"humeyer", check_humeyer},
      {"wick_exp_square", check_wick_exp_square},
      {"moment_identity", check_moment_identity},
      {"icopy", check_icopy},
      {"hypercontractivity", check_hypercontractivity},
      {"independence", check_independence},
      {"norm_inequality", check_norm_inequality},
      {"translation", check_translation},
      {"renorm_product", check_renorm_product},
      {"pairing", check_pairing},
      {"stratonovich_link", check_stratonovich_link},
      {"sampling", check_sampling},
  };
  return checks;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<CheckResult> run_check(const std::string& name, const CheckConfig& config) {
  std::vector<CheckResult> out;
  bool found = false;
  for (const auto& [n, fn] : registry()) {
    if (name != "all" && name != n) continue;
    found = true;
    for (auto& r : fn(config)) {
      r.identity = n + ": " + r.identity;
      out.push_back(std::move(r));
    }
  }
  if (!found) throw std::invalid_argument("unknown check '" + name + "'");
  return out;
}

}  // namespace wick
