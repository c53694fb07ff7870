#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace wick {

/// One line of an identity report.  Exact checks carry the worst error over
/// their random cases; statistical checks carry a Monte Carlo estimate.
struct CheckResult {
  std::string identity;
  bool statistical = false;
  int cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  double exact = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double zscore = 0.0;
  std::uint64_t seed = 0;
  bool passed = false;
  std::string detail;

  nlohmann::ordered_json to_json() const;
};

struct CheckConfig {
  std::uint64_t seed = 20261016;
  std::int64_t samples = 1'000'000;
  /// Coefficientwise tolerance for the exact-algebra identities.
  double tolerance = 1e-9;
  /// Series length for :exp(lambda X^2/2):.  K = 40 leaves a pointwise error
  /// of ~1e-5 at |lambda| = 0.8 on [-2, 2]; 80 brings it below 1e-8.
  int wick_exp_terms = 80;
};

/// Names accepted by run_check, in report order.
const std::vector<std::string>& check_names();

/// Runs one named battery, or every battery for "all".  Throws std::invalid_argument
/// for an unknown name.
std::vector<CheckResult> run_check(const std::string& name, const CheckConfig& config = {});

}  // namespace wick
