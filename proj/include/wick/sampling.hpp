#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace wick {

/// Element of H = R^d, given by its coordinates against e_1, ..., e_d.
/// Storage is zero-based: coords()[0] pairs with e_1.
class HVector {
 public:
  HVector() = default;
  explicit HVector(int dim) : coords_(static_cast<std::size_t>(dim), 0.0) {}
  HVector(std::initializer_list<double> coords) : coords_(coords) {}
  explicit HVector(std::vector<double> coords) : coords_(std::move(coords)) {}

  /// The basis vector e_basis (basis label starting at 1).
  static HVector basis(int dim, int basis);

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  /// Coordinate against e_basis.
  double along(int basis) const { return coords_.at(static_cast<std::size_t>(basis - 1)); }

  double dot(const HVector& other) const;
  double norm() const;

  friend HVector operator+(const HVector& a, const HVector& b);
  friend HVector operator-(const HVector& a, const HVector& b);
  friend HVector operator*(double s, const HVector& a);
  bool operator==(const HVector&) const = default;

 private:
  std::vector<double> coords_;
};

/// Realization of (e~_1, ..., e~_d) on n independent draws.
struct SampleBatch {
  std::uint64_t seed = 0;
  int dim = 0;
  std::int64_t n_samples = 0;
  std::vector<double> data;  // row-major, n_samples x dim

  std::span<const double> row(std::int64_t i) const {
    return {data.data() + i * dim, static_cast<std::size_t>(dim)};
  }
};

/// Name of the generator recorded in report metadata.
inline constexpr std::string_view kGaussianMethod = "splitmix64-counter/box-muller";

/// Counter-based N(0,1) stream.  Coordinate j of row r depends only on
/// (seed, r, j), so any range of rows can be generated independently and
/// the result never depends on how rows are split across workers.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, int dim);

  /// Fills `out` (count x dim, row-major) with rows first_row .. first_row+count-1.
  void fill(std::int64_t first_row, std::int64_t count, std::span<double> out) const;

  std::uint64_t seed() const noexcept { return seed_; }
  int dim() const noexcept { return dim_; }

 private:
  std::uint64_t seed_;
  int dim_;
};

/// n x dim i.i.d. standard normals; identical (dim, n, seed) give identical data.
SampleBatch sample_gaussians(int dim, std::int64_t n, std::uint64_t seed);

}  // namespace wick
