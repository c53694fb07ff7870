#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wick {

/// Sparse multi-index over the basis e_1, ..., e_d.
///
/// Stores (basis, multiplicity) pairs with basis labels starting at 1, sorted
/// by basis and with every multiplicity >= 1.  The same object labels a
/// Hermite basis element prod_i H_{alpha_i}(e~_i), a monomial prod_i x_i^{n_i},
/// or an unordered index tuple of a symmetric tensor.
class MultiIndex {
 public:
  using Entry = std::pair<int, int>;  // (basis, multiplicity)

  MultiIndex() = default;
  /// Entries may arrive unsorted or repeated; zero multiplicities are dropped.
  MultiIndex(std::initializer_list<Entry> entries);
  explicit MultiIndex(std::vector<Entry> entries);

  /// Builds the index from a tuple of basis labels listed with repetition,
  /// e.g. (1, 1, 2) -> {1:2, 2:1}.
  static MultiIndex from_tuple(std::span<const int> basis_labels);
  static MultiIndex unit(int basis, int multiplicity = 1);

  std::span<const Entry> entries() const noexcept { return entries_; }
  int degree() const noexcept { return degree_; }
  bool empty() const noexcept { return entries_.empty(); }
  /// Largest basis label in use, 0 for the empty index.
  int max_basis() const noexcept;
  /// Multiplicity of `basis` (0 when absent).
  int operator[](int basis) const noexcept;

  /// Copy with the multiplicity of `basis` changed by `delta`.  The result
  /// multiplicity must stay non-negative.
  MultiIndex shifted(int basis, int delta) const;

  /// Sorted tuple of basis labels with repetition (inverse of from_tuple).
  std::vector<int> to_tuple() const;

  /// True if every multiplicity of `other` is <= the one here.
  bool contains(const MultiIndex& other) const noexcept;

  std::string to_string() const;

  /// Degree first, then lexicographic on the entries.
  std::strong_ordering operator<=>(const MultiIndex& other) const noexcept;
  bool operator==(const MultiIndex& other) const noexcept = default;

 private:
  void canonicalize();

  std::vector<Entry> entries_;
  int degree_ = 0;
};

/// Componentwise multiplicity sum.
MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
/// Componentwise difference; requires b to be contained in a.
MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);

inline MultiIndex multiindex_add(const MultiIndex& a, const MultiIndex& b) { return a + b; }

/// alpha! = prod_i alpha_i!
double multiindex_factorial(const MultiIndex& alpha);

/// Number of ordered tuples collapsing onto alpha: |alpha|! / alpha!.
double multinomial(const MultiIndex& alpha);

/// prod_i C(alpha_i, beta_i) for beta contained in alpha.
double multi_binomial(const MultiIndex& alpha, const MultiIndex& beta);

/// Calls `fn` once for every multi-index of exactly `degree` over bases 1..dim.
void for_each_multiindex(int dim, int degree, const std::function<void(const MultiIndex&)>& fn);

/// Calls `fn` for every beta contained in alpha (including empty and alpha).
void for_each_submultiindex(const MultiIndex& alpha,
                            const std::function<void(const MultiIndex&)>& fn);

}  // namespace wick
