#include <doctest.h>

#include <cstring>

#include "oracles.hpp"
#include "wick/errors.hpp"
#include "wick/serialize.hpp"

using namespace wick;

namespace {

bool bitwise_equal(const ChaosVector& a, const ChaosVector& b) {
  if (a.dim() != b.dim() || a.max_order() != b.max_order() || a.size() != b.size()) return false;
  auto ia = a.terms().begin();
  for (auto ib = b.terms().begin(); ib != b.terms().end(); ++ia, ++ib)
    if (ia->first != ib->first || std::memcmp(&ia->second, &ib->second, sizeof(double)) != 0) return false;
  return true;
}

std::string error_path(const std::string& text) {
  try {
    deserialize_chaos(text);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("schema example") {
  const auto F = deserialize_chaos(R"({"dim":1,"max_order":4,"terms":[{"alpha":[[1,2]],"coeff":1}]})");
  CHECK(F == ChaosVector(1, 4, {{MultiIndex{{1, 2}}, 1.0}}));
  CHECK(serialize(F) == R"({"dim":1,"max_order":4,"terms":[{"alpha":[[1,2]],"coeff":1.0}]})");
}

TEST_CASE("chaos vectors roundtrip bitwise") {
  oracle::Rng rng(70);
  for (int t = 0; t < 1000; ++t) {
    const int dim = rng.integer(1, 4);
    ChaosVector::Terms terms;
    for (int k = 0; k < 6; ++k) {
      std::vector<int> tuple;
      for (int j = rng.integer(0, 5); j > 0; --j) tuple.push_back(rng.integer(1, dim));
      // awkward magnitudes exercise the shortest round-trip printer
      terms[MultiIndex::from_tuple(tuple)] = rng.uniform(-1, 1) * std::pow(10.0, rng.integer(-8, 8)) / 3.0;
    }
    const ChaosVector F(dim, 5, std::move(terms));
    const auto text = serialize(F);
    const auto G = deserialize_chaos(text);
    CHECK(bitwise_equal(F, G));
    CHECK(serialize(G) == text);
  }
}

TEST_CASE("tensors and polynomials roundtrip") {
  oracle::Rng rng(71);
  for (int t = 0; t < 100; ++t) {
    const auto f = oracle::random_tensor(rng, 3, rng.integer(0, 4));
    CHECK(deserialize_tensor(serialize(f)) == f);
    const auto p = oracle::random_poly(rng, 3, 5);
    CHECK(deserialize_poly(serialize(p)) == p);
  }
  const auto f = SymTensor::from_tuples(2, 2, {{{2, 1}, 0.5}});
  CHECK(serialize(f) == R"({"dim":2,"order":2,"entries":[{"tuple":[1,2],"value":0.5}]})");
  const PolySeries x = PolySeries::variable(2, 2);
  CHECK(serialize(x) == R"({"dim":2,"terms":[{"exps":[[2,1]],"coeff":1.0}],"truncation":1})");
}

TEST_CASE("strict schema errors name the path") {
  CHECK(error_path(R"({"dim":1,"max_order":4,"terms":[],"extra":0})") == "/extra");
  CHECK(error_path(R"({"dim":1,"terms":[]})") == "/max_order");
  CHECK(error_path(R"({"dim":1,"max_order":4,"terms":[{"alpha":[[1,2]],"coeff":"x"}]})") == "/terms/0/coeff");
  CHECK(error_path(R"({"dim":2,"max_order":4,"terms":[{"alpha":[[2,1],[1,1]],"coeff":1}]})") == "/terms/0/alpha/1/0");
  CHECK(error_path(R"({"dim":1,"max_order":4,"terms":[{"alpha":[[1,0]],"coeff":1}]})") == "/terms/0/alpha/0/1");
  CHECK(error_path(R"({"dim":1,"max_order":4,"terms":[{"alpha":[],"coeff":1},{"alpha":[],"coeff":2}]})") ==
        "/terms/1/alpha");
  CHECK(error_path(R"({"dim":1,"max_order":4,"terms":[{"alpha":[[1,2]],"coeff":1,"note":1}]})") == "/terms/0/note");
  CHECK(error_path(R"({"dim":1,"max_order":1,"terms":[{"alpha":[[1,2]],"coeff":1}]})") == "/");
  CHECK(error_path(R"({"dim":1,"max_order":4,"terms":[)") == "/");
  CHECK(error_path("[]") == "/");
  CHECK_THROWS_AS(deserialize_tensor(R"({"dim":2,"order":2,"entries":[{"tuple":[1,2],"value":1},{"tuple":[2,1],"value":1}]})"),
                  SchemaError);
  CHECK_THROWS_AS(deserialize_poly(R"({"dim":1,"terms":[],"truncation":2,"x":1})"), SchemaError);
}
