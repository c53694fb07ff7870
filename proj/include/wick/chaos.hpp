#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wick/hermite.hpp"
#include "wick/multi_index.hpp"
#include "wick/sampling.hpp"

namespace wick {

/// Terms whose normalized magnitude |c| * sqrt(alpha!) falls below this are dropped.
inline constexpr double kPruneThreshold = 1e-14;
/// Contraction norm at or below which two single-chaos variables count as independent.
inline constexpr double kIndependenceThreshold = 1e-12;

/// Truncated Wiener chaos expansion
///
///   F = sum_alpha c_alpha prod_i H_{alpha_i}(e~_i)
///
/// over the d coordinates of a standard Gaussian vector.  The degree-n part
/// is the multiple integral I_n(f_n).  Values are immutable; every operation
/// returns a new vector.
///
/// `max_order` is a hard cap: operations whose exact result would contain a
/// term above it throw OrderOverflow.  The *_truncated variants drop those
/// terms instead, and only exist where dropping commutes with the operation.
class ChaosVector {
 public:
  using Terms = std::map<MultiIndex, double>;

  ChaosVector(int dim, int max_order, Terms terms = {}, double prune = kPruneThreshold);

  static ChaosVector constant(int dim, int max_order, double c);
  /// The coordinate e~_basis = H_1(e~_basis).
  static ChaosVector coordinate(int dim, int max_order, int basis, double scale = 1.0);
  /// g~ = sum_i g_i e~_i.
  static ChaosVector gaussian(const HVector& g, int max_order);

  int dim() const noexcept { return dim_; }
  int max_order() const noexcept { return max_order_; }
  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  double coeff(const MultiIndex& alpha) const;
  /// Highest degree carrying a term; 0 for an empty vector.
  int degree() const noexcept;

  /// Terms of exactly degree n, same caps.
  ChaosVector degree_part(int n) const;
  /// Same terms under a different cap; throws if a term exceeds it.
  ChaosVector with_max_order(int max_order) const;
  /// Drops every term above `order` and sets the cap to `order`.
  ChaosVector truncated(int order) const;

  std::string to_string() const;

  bool operator==(const ChaosVector&) const = default;

 private:
  int dim_;
  int max_order_;
  Terms terms_;
};

/// Order-n symmetric tensor over R^d stored against unordered index tuples.
/// The key multi-index encodes the sorted tuple; the value is the entry of
/// the tensor at any ordering of that tuple.
class SymTensor {
 public:
  using Values = std::map<MultiIndex, double>;

  SymTensor(int dim, int order, Values values = {});

  /// Builds from (tuple-with-repetition, value) pairs; all tuples share one length.
  static SymTensor from_tuples(int dim, int order,
                               const std::vector<std::pair<std::vector<int>, double>>& entries);
  /// f^{(x) n}.
  static SymTensor power(const HVector& f, int n);
  /// f_1 (x)^ f_2 (x)^ ... (x)^ f_n.
  static SymTensor symmetric_product(const std::vector<HVector>& factors, int dim);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  const Values& values() const noexcept { return values_; }
  double at(const MultiIndex& key) const;
  double at(std::span<const int> tuple) const;

  /// Hilbert norm: squared sum over all ordered tuples.
  double norm() const;
  double inner(const SymTensor& other) const;

  /// Order-2 tensor as a dense d x d row-major matrix.
  std::vector<double> to_matrix() const;

  bool operator==(const SymTensor&) const = default;

 private:
  int dim_;
  int order_;
  Values values_;
};

SymTensor operator+(const SymTensor& a, const SymTensor& b);
SymTensor operator*(double s, const SymTensor& a);
/// Symmetrized tensor product a (x)^ b.
SymTensor sym_tensor_product(const SymTensor& a, const SymTensor& b);

/// I_n(f) in Hermite coordinates.
ChaosVector from_tensor(const SymTensor& f, int max_order);
inline ChaosVector from_tensor(const SymTensor& f) { return from_tensor(f, f.order()); }
/// The kernel f_n of the degree-n part of F.
SymTensor to_tensor(const ChaosVector& F, int n);

ChaosVector add(const ChaosVector& F, const ChaosVector& G);
ChaosVector scale(const ChaosVector& F, double c);
ChaosVector operator+(const ChaosVector& F, const ChaosVector& G);
ChaosVector operator-(const ChaosVector& F, const ChaosVector& G);
ChaosVector operator*(double c, const ChaosVector& F);

/// E[FG] = sum_alpha alpha! c_alpha d_alpha.
double inner_product(const ChaosVector& F, const ChaosVector& G);
double l2_norm(const ChaosVector& F);
/// ||Gamma(r) F||.
double gamma_norm(const ChaosVector& F, double r);
/// Gamma(a): the degree-n part scaled by a^n.
ChaosVector second_quantization(const ChaosVector& F, double a);

/// Multi-index convolution: (F<>G)_gamma = sum_{alpha+beta=gamma} c_alpha d_beta.
ChaosVector wick_product(const ChaosVector& F, const ChaosVector& G);
/// Degree <= order part of F<>G.  Exact on the kept degrees because the
/// Wick product never lowers degree.
ChaosVector wick_product_truncated(const ChaosVector& F, const ChaosVector& G, int order);
/// Pointwise product, via coordinatewise Hermite linearization.
ChaosVector ordinary_product(const ChaosVector& F, const ChaosVector& G);
ChaosVector wick_power(const ChaosVector& F, int k);
ChaosVector wick_power_truncated(const ChaosVector& F, int k, int order);
/// F^k by repeated ordinary products.
ChaosVector ordinary_power(const ChaosVector& F, int k);

/// Truncation of eps(f) = exp(f~ - |f|^2/2); coefficient at alpha is prod_i f_i^alpha_i / alpha_i!.
ChaosVector exponential_vector(const HVector& f, int max_order);

double evaluate_at(const ChaosVector& F, std::span<const double> x);
std::vector<double> evaluate(const ChaosVector& F, const SampleBatch& batch);
double expectation(const ChaosVector& F);

/// <f, g>_H = sum_k <f, e_k> (x)^ <g, e_k>, of order n + m - 2.
SymTensor contraction_1(const SymTensor& f, const SymTensor& g);
/// Independence criterion for I_n(f), I_m(g).
bool independent(const SymTensor& f, const SymTensor& g);

}  // namespace wick
