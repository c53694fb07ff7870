#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "wick/chaos.hpp"

namespace wick {

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Samples per work unit.  Chunk boundaries fix the floating-point reduction
/// order, so results do not depend on the number of worker threads.
inline constexpr std::int64_t kChunkSize = std::int64_t{1} << 16;
/// Statistical checks pass when |estimate - exact| <= kZThreshold standard errors.
inline constexpr double kZThreshold = 3.0;

struct SamplingOptions {
  std::int64_t chunk_size = kChunkSize;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Sample mean and standard error of f(x) for x ~ N(0, I_dim).
Estimate estimate_mean(int dim, std::int64_t n, std::uint64_t seed,
                       const std::function<double(std::span<const double>)>& f,
                       const SamplingOptions& options = {});

Estimate estimate_expectation(const ChaosVector& F, std::int64_t n, std::uint64_t seed,
                              const SamplingOptions& options = {});

/// (E|F|^p)^{1/p} with a delta-method standard error.
Estimate estimate_lp_norm(const ChaosVector& F, double p, std::int64_t n, std::uint64_t seed,
                          const SamplingOptions& options = {});

/// |value - exact| / std_error.  A zero standard error is only acceptable
/// when the value equals `exact`; otherwise HardMismatch is thrown.
double zscore_check(const Estimate& estimate, double exact);

/// One JSON-lines report record: {identity, exact, estimate, std_error, zscore, seed}.
std::string report_line(const std::string& identity, double exact, const Estimate& estimate);

}  // namespace wick
