#include "wick/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include <json.hpp>

#include "wick/errors.hpp"

namespace wick {
namespace {

// Running mean and centered sum of squares.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }
};

Moments merge(const Moments& a, const Moments& b) {
  if (a.count == 0.0) return b;
  if (b.count == 0.0) return a;
  Moments r;
  r.count = a.count + b.count;
  const double delta = b.mean - a.mean;
  r.mean = a.mean + delta * (b.count / r.count);
  r.m2 = a.m2 + b.m2 + delta * delta * (a.count * b.count / r.count);
  return r;
}

Moments tree_reduce(std::vector<Moments> parts) {
  if (parts.empty()) return {};
  while (parts.size() > 1) {
    std::vector<Moments> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(merge(parts[i], parts[i + 1]));
    if (parts.size() % 2) next.push_back(parts.back());
    parts = std::move(next);
  }
  return parts.front();
}

}  // namespace

Estimate estimate_mean(int dim, std::int64_t n, std::uint64_t seed,
                       const std::function<double(std::span<const double>)>& f,
                       const SamplingOptions& options) {
  if (n < 1) throw DomainError("estimate_mean: sample count must be >= 1");
  if (options.chunk_size < 1) throw DomainError("estimate_mean: chunk size must be >= 1");
  const GaussianStream stream(seed, dim);
  const std::int64_t chunk = options.chunk_size;
  const std::int64_t n_chunks = (n + chunk - 1) / chunk;
  std::vector<Moments> parts(static_cast<std::size_t>(n_chunks));

  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    std::vector<double> buffer(static_cast<std::size_t>(chunk * dim));
    for (std::int64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
      const std::int64_t first = c * chunk;
      const std::int64_t count = std::min(chunk, n - first);
      stream.fill(first, count, buffer);
      Moments m;
      for (std::int64_t r = 0; r < count; ++r)
        m.push(f(std::span<const double>(buffer.data() + r * dim, static_cast<std::size_t>(dim))));
      parts[static_cast<std::size_t>(c)] = m;
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, n_chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  const Moments total = tree_reduce(std::move(parts));
  Estimate e;
  e.value = total.mean;
  e.n_samples = n;
  e.seed = seed;
  e.std_error = n > 1 ? std::sqrt(std::max(0.0, total.m2 / (total.count - 1.0)) / total.count) : 0.0;
  return e;
}

Estimate estimate_expectation(const ChaosVector& F, std::int64_t n, std::uint64_t seed,
                              const SamplingOptions& options) {
  return estimate_mean(F.dim(), n, seed, [&](std::span<const double> x) { return evaluate_at(F, x); },
                       options);
}

Estimate estimate_lp_norm(const ChaosVector& F, double p, std::int64_t n, std::uint64_t seed,
                          const SamplingOptions& options) {
  if (!(p >= 1.0)) throw DomainError("estimate_lp_norm requires p >= 1");
  const Estimate moment = estimate_mean(
      F.dim(), n, seed, [&](std::span<const double> x) { return std::pow(std::abs(evaluate_at(F, x)), p); },
      options);
  Estimate e = moment;
  e.value = std::pow(moment.value, 1.0 / p);
  // d/dm m^{1/p} = m^{1/p - 1} / p
  e.std_error = moment.value > 0.0 ? moment.std_error * std::pow(moment.value, 1.0 / p - 1.0) / p : 0.0;
  return e;
}

double zscore_check(const Estimate& estimate, double exact) {
  const double diff = std::abs(estimate.value - exact);
  if (estimate.std_error > 0.0) return diff / estimate.std_error;
  if (diff == 0.0) return 0.0;
  throw HardMismatch("zero-variance estimate " + std::to_string(estimate.value) + " differs from exact value " +
                     std::to_string(exact));
}

std::string report_line(const std::string& identity, double exact, const Estimate& estimate) {
  nlohmann::ordered_json j;
  j["identity"] = identity;
  j["exact"] = exact;
  j["estimate"] = estimate.value;
  j["std_error"] = estimate.std_error;
  double z = 0.0;
  try {
    z = zscore_check(estimate, exact);
  } catch (const HardMismatch&) {
    z = std::numeric_limits<double>::infinity();
  }
  j["zscore"] = std::isfinite(z) ? nlohmann::ordered_json(z) : nlohmann::ordered_json("inf");
  j["seed"] = estimate.seed;
  return j.dump();
}

}  // namespace wick
