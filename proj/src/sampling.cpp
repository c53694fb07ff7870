#include "wick/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wick/errors.hpp"

namespace wick {

HVector HVector::basis(int dim, int basis) {
  if (basis < 1 || basis > dim)
    throw DomainError("basis label " + std::to_string(basis) + " outside 1.." + std::to_string(dim));
  HVector v(dim);
  v.coords_[static_cast<std::size_t>(basis - 1)] = 1.0;
  return v;
}

double HVector::dot(const HVector& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("HVector dot: dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
  return s;
}

double HVector::norm() const { return std::sqrt(dot(*this)); }

HVector operator+(const HVector& a, const HVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("HVector add: dimensions differ");
  HVector r = a;
  for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += b.coords_[i];
  return r;
}

HVector operator-(const HVector& a, const HVector& b) { return a + (-1.0) * b; }

HVector operator*(double s, const HVector& a) {
  HVector r = a;
  for (auto& c : r.coords_) c *= s;
  return r;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1]: never zero, so log() below is finite.
double to_unit(std::uint64_t bits) { return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53; }

}  // namespace

GaussianStream::GaussianStream(std::uint64_t seed, int dim) : seed_(seed), dim_(dim) {
  if (dim < 1) throw DomainError("sample dimension must be >= 1");
}

void GaussianStream::fill(std::int64_t first_row, std::int64_t count, std::span<double> out) const {
  if (out.size() < static_cast<std::size_t>(count * dim_))
    throw DimensionMismatch("GaussianStream::fill: output buffer too small");
  const std::uint64_t key = splitmix64(seed_);
  const std::int64_t pairs_per_row = (dim_ + 1) / 2;
  for (std::int64_t r = 0; r < count; ++r) {
    const auto row = static_cast<std::uint64_t>(first_row + r);
    for (std::int64_t p = 0; p < pairs_per_row; ++p) {
      const std::uint64_t counter = row * static_cast<std::uint64_t>(pairs_per_row) + static_cast<std::uint64_t>(p);
      const double u1 = to_unit(splitmix64(key ^ (2 * counter)));
      const double u2 = to_unit(splitmix64(key ^ (2 * counter + 1)));
      const double radius = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * std::numbers::pi * u2;
      const std::int64_t j = 2 * p;
      out[static_cast<std::size_t>(r * dim_ + j)] = radius * std::cos(angle);
      if (j + 1 < dim_) out[static_cast<std::size_t>(r * dim_ + j + 1)] = radius * std::sin(angle);
    }
  }
}

SampleBatch sample_gaussians(int dim, std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample count must be >= 1");
  GaussianStream stream(seed, dim);
  SampleBatch batch{seed, dim, n, std::vector<double>(static_cast<std::size_t>(n * dim))};
  stream.fill(0, n, batch.data);
  return batch;
}

}  // namespace wick
