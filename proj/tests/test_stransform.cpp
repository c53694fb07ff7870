#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wick/errors.hpp"
#include "wick/stransform.hpp"

using namespace wick;

namespace {
ChaosVector cv(int dim, int order, ChaosVector::Terms t) { return ChaosVector(dim, order, std::move(t)); }
const MultiIndex E11{{1, 2}};
}  // namespace

TEST_CASE("s_transform examples") {
  const auto H2 = cv(1, 2, {{E11, 1.0}});
  const HVector xi{2.0};
  CHECK(s_transform(H2, xi) == 4.0);
  // S(F)(xi) = E[F eps(xi)] = <F, eps(xi)>
  CHECK(inner_product(H2, exponential_vector(xi, 2)) == doctest::Approx(4.0));
  CHECK(s_transform(exponential_vector(HVector{1.0}, 30), HVector{1.0}) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(s_transform(ChaosVector::constant(3, 0, 2.5), HVector{1.0, -2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS(s_transform(H2, HVector{1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("s_transform equals the inner product with an exponential vector") {
  oracle::Rng rng(30);
  for (int t = 0; t < 30; ++t) {
    const auto F = oracle::random_chaos(rng, 3, 4, 4);
    const auto xi = oracle::random_vector(rng, 3);
    CHECK(s_transform(F, xi) == doctest::Approx(inner_product(F, exponential_vector(xi, 4))));
  }
}

TEST_CASE("s_transform_mc") {
  const auto H2 = cv(1, 2, {{E11, 1.0}});
  const auto est = s_transform_mc(H2, HVector{2.0}, 1'000'000, 1);
  CHECK(zscore_check(est, 4.0) <= kZThreshold);
  const auto one = ChaosVector::constant(1, 0, 1.0);
  const auto small = s_transform_mc(one, HVector{0.5}, 10'000, 2);
  const auto large = s_transform_mc(one, HVector{0.5}, 1'000'000, 2);
  CHECK(zscore_check(large, 1.0) <= kZThreshold);
  CHECK(large.std_error < small.std_error);
  oracle::Rng rng(31);
  const auto F = oracle::random_chaos(rng, 2, 3, 3);
  CHECK(zscore_check(s_transform_mc(F, HVector{0.0, 0.0}, 1'000'000, 3), expectation(F)) <= kZThreshold);
}

TEST_CASE("translation") {
  const auto H2 = cv(1, 2, {{E11, 1.0}});
  CHECK(translate(H2, HVector{1.0}) == cv(1, 2, {{E11, 1.0}, {MultiIndex{{1, 1}}, 2.0}, {MultiIndex{}, 1.0}}));
  oracle::Rng rng(32);
  const auto F = oracle::random_chaos(rng, 3, 4, 4);
  CHECK(translate(F, HVector(3)) == F);

  const HVector f{0.3, -0.2}, xi{0.5, 1.0};
  const auto eps = exponential_vector(f, 12);
  const auto shifted = translate(eps, xi);
  const auto expected = scale(eps, std::exp(f.dot(xi)));
  // coefficients agree below the truncation boundary
  CHECK(oracle::max_coeff_diff(shifted.truncated(6), expected.truncated(6)) <= 1e-6);

  for (int t = 0; t < 20; ++t) {
    const auto G = oracle::random_chaos(rng, 3, 4, 4);
    const auto s = oracle::random_vector(rng, 3);
    const std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    std::vector<double> xs = x;
    for (std::size_t i = 0; i < 3; ++i) xs[i] += s[i];
    CHECK(evaluate_at(translate(G, s), x) == doctest::Approx(evaluate_at(G, xs)));
  }
}

TEST_CASE("multiplicativity, shift law, Wick covariance of translation") {
  oracle::Rng rng(33);
  for (int t = 0; t < 30; ++t) {
    const auto F = oracle::random_chaos(rng, 3, 3, 6);
    const auto G = oracle::random_chaos(rng, 3, 3, 6);
    const auto xi = oracle::random_vector(rng, 3), eta = oracle::random_vector(rng, 3);
    const double prod = s_transform(F, xi) * s_transform(G, xi);
    CHECK(std::abs(s_transform(wick_product(F, G), xi) - prod) <= 1e-9 * std::max(1.0, std::abs(prod)));
    CHECK(s_transform(translate(F, xi), eta) == doctest::Approx(s_transform(F, xi + eta)).epsilon(1e-9));
    CHECK(oracle::max_coeff_diff(translate(wick_product(F, G), xi),
                                 wick_product(translate(F, xi), translate(G, xi))) <= 1e-9);
  }
}

TEST_CASE("S-transform separates distinct vectors") {
  oracle::Rng rng(34);
  for (int t = 0; t < 20; ++t) {
    const auto F = oracle::random_chaos(rng, 2, 3, 3);
    const auto G = F + oracle::random_chaos(rng, 2, 3, 3, 1);
    if (oracle::max_coeff_diff(F, G) == 0.0) continue;
    bool differ = false;
    for (int k = 0; k < 50 && !differ; ++k) {
      const auto xi = oracle::random_vector(rng, 2);
      differ = std::abs(s_transform(F, xi) - s_transform(G, xi)) > 1e-12;
    }
    CHECK(differ);
  }
}
