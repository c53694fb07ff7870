#include "wick/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wick/errors.hpp"

namespace wick {
namespace {

void require_same_dim(int a, int b, const char* op) {
  if (a != b)
    throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(a) + " and " +
                            std::to_string(b) + " differ");
}

void require_fits(int degree, int max_order, const char* op) {
  if (degree > max_order)
    throw OrderOverflow(std::string(op) + ": result degree " + std::to_string(degree) +
                        " exceeds max order " + std::to_string(max_order));
}

// p! C(a,p) C(b,p), the coefficient of H_{a+b-2p} in H_a H_b.
double linearization_weight(int a, int b, int p) { return factorial(p) * binomial(a, p) * binomial(b, p); }

}  // namespace

// ---------------------------------------------------------------------------
// ChaosVector

ChaosVector::ChaosVector(int dim, int max_order, Terms terms, double prune)
    : dim_(dim), max_order_(max_order) {
  if (dim < 1) throw DomainError("chaos dimension must be >= 1");
  if (max_order < 0 || max_order > kMaxSupportedOrder)
    throw OrderOverflow("max order " + std::to_string(max_order) + " outside 0.." +
                        std::to_string(kMaxSupportedOrder));
  for (auto& [alpha, c] : terms) {
    if (alpha.max_basis() > dim)
      throw DimensionMismatch("basis label " + std::to_string(alpha.max_basis()) +
                              " exceeds dimension " + std::to_string(dim));
    if (!std::isfinite(c)) throw DomainError("non-finite coefficient at " + alpha.to_string());
    if (c == 0.0 || std::abs(c) * std::sqrt(multiindex_factorial(alpha)) < prune) continue;
    require_fits(alpha.degree(), max_order, "ChaosVector");
    terms_.emplace(alpha, c);
  }
}

ChaosVector ChaosVector::constant(int dim, int max_order, double c) {
  return ChaosVector(dim, max_order, {{MultiIndex{}, c}});
}

ChaosVector ChaosVector::coordinate(int dim, int max_order, int basis, double scale) {
  if (basis < 1 || basis > dim) throw DimensionMismatch("coordinate basis label out of range");
  return ChaosVector(dim, max_order, {{MultiIndex::unit(basis), scale}});
}

ChaosVector ChaosVector::gaussian(const HVector& g, int max_order) {
  Terms t;
  for (int i = 1; i <= g.dim(); ++i) t[MultiIndex::unit(i)] = g.along(i);
  return ChaosVector(g.dim(), max_order, std::move(t));
}

double ChaosVector::coeff(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

int ChaosVector::degree() const noexcept {
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.degree());
  return d;
}

ChaosVector ChaosVector::degree_part(int n) const {
  Terms t;
  for (const auto& [alpha, c] : terms_)
    if (alpha.degree() == n) t.emplace(alpha, c);
  return ChaosVector(dim_, max_order_, std::move(t));
}

ChaosVector ChaosVector::with_max_order(int max_order) const { return ChaosVector(dim_, max_order, terms_); }

ChaosVector ChaosVector::truncated(int order) const {
  Terms t;
  for (const auto& [alpha, c] : terms_)
    if (alpha.degree() <= order) t.emplace(alpha, c);
  return ChaosVector(dim_, order, std::move(t));
}

std::string ChaosVector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [alpha, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (const auto& [basis, mult] : alpha.entries()) os << "*H" << mult << "(e" << basis << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// SymTensor

SymTensor::SymTensor(int dim, int order, Values values) : dim_(dim), order_(order) {
  if (dim < 1) throw DomainError("tensor dimension must be >= 1");
  if (order < 0 || order > kMaxSupportedOrder) throw OrderOverflow("tensor order out of range");
  for (auto& [key, v] : values) {
    if (key.degree() != order)
      throw DimensionMismatch("tensor entry " + key.to_string() + " does not have order " +
                              std::to_string(order));
    if (key.max_basis() > dim) throw DimensionMismatch("tensor index exceeds dimension");
    if (v != 0.0) values_.emplace(key, v);
  }
}

SymTensor SymTensor::from_tuples(int dim, int order,
                                 const std::vector<std::pair<std::vector<int>, double>>& entries) {
  Values v;
  for (const auto& [tuple, value] : entries) {
    if (static_cast<int>(tuple.size()) != order) throw DimensionMismatch("tuple length differs from tensor order");
    v[MultiIndex::from_tuple(tuple)] += value;
  }
  return SymTensor(dim, order, std::move(v));
}

SymTensor SymTensor::power(const HVector& f, int n) {
  return symmetric_product(std::vector<HVector>(static_cast<std::size_t>(n), f), f.dim());
}

SymTensor SymTensor::symmetric_product(const std::vector<HVector>& factors, int dim) {
  SymTensor acc(dim, 0, {{MultiIndex{}, 1.0}});
  for (const auto& f : factors) {
    if (f.dim() != dim) throw DimensionMismatch("symmetric_product: factor dimension differs");
    Values v;
    for (int i = 1; i <= dim; ++i) v[MultiIndex::unit(i)] = f.along(i);
    acc = sym_tensor_product(acc, SymTensor(dim, 1, std::move(v)));
  }
  return acc;
}

double SymTensor::at(const MultiIndex& key) const {
  auto it = values_.find(key);
  return it == values_.end() ? 0.0 : it->second;
}

double SymTensor::at(std::span<const int> tuple) const { return at(MultiIndex::from_tuple(tuple)); }

double SymTensor::norm() const { return std::sqrt(inner(*this)); }

double SymTensor::inner(const SymTensor& other) const {
  require_same_dim(dim_, other.dim_, "SymTensor::inner");
  if (order_ != other.order_) return 0.0;
  double s = 0.0;
  for (const auto& [key, v] : values_) s += multinomial(key) * v * other.at(key);
  return s;
}

std::vector<double> SymTensor::to_matrix() const {
  if (order_ != 2) throw DomainError("to_matrix requires an order-2 tensor");
  std::vector<double> m(static_cast<std::size_t>(dim_ * dim_), 0.0);
  for (const auto& [key, v] : values_) {
    const auto t = key.to_tuple();
    m[static_cast<std::size_t>((t[0] - 1) * dim_ + (t[1] - 1))] = v;
    m[static_cast<std::size_t>((t[1] - 1) * dim_ + (t[0] - 1))] = v;
  }
  return m;
}

SymTensor operator+(const SymTensor& a, const SymTensor& b) {
  require_same_dim(a.dim(), b.dim(), "SymTensor add");
  if (a.order() != b.order()) throw DimensionMismatch("SymTensor add: orders differ");
  SymTensor::Values v = a.values();
  for (const auto& [key, x] : b.values()) v[key] += x;
  return SymTensor(a.dim(), a.order(), std::move(v));
}

SymTensor operator*(double s, const SymTensor& a) {
  SymTensor::Values v;
  for (const auto& [key, x] : a.values()) v[key] = s * x;
  return SymTensor(a.dim(), a.order(), std::move(v));
}

SymTensor sym_tensor_product(const SymTensor& a, const SymTensor& b) {
  require_same_dim(a.dim(), b.dim(), "sym_tensor_product");
  const int n = a.order() + b.order();
  // Entry at gamma averages over orderings; the orderings placing beta1 in
  // the first p slots number C(gamma, beta1) out of C(n, p).
  const double norm = binomial(n, a.order());
  SymTensor::Values v;
  for (const auto& [ka, xa] : a.values())
    for (const auto& [kb, xb] : b.values()) {
      const MultiIndex gamma = ka + kb;
      v[gamma] += xa * xb * multi_binomial(gamma, ka) / norm;
    }
  return SymTensor(a.dim(), n, std::move(v));
}

// ---------------------------------------------------------------------------
// Conversions

ChaosVector from_tensor(const SymTensor& f, int max_order) {
  require_fits(f.order(), max_order, "from_tensor");
  ChaosVector::Terms t;
  for (const auto& [key, v] : f.values()) t[key] = multinomial(key) * v;
  return ChaosVector(f.dim(), max_order, std::move(t));
}

SymTensor to_tensor(const ChaosVector& F, int n) {
  SymTensor::Values v;
  for (const auto& [alpha, c] : F.terms())
    if (alpha.degree() == n) v[alpha] = c / multinomial(alpha);
  return SymTensor(F.dim(), n, std::move(v));
}

// ---------------------------------------------------------------------------
// Linear structure and norms

ChaosVector add(const ChaosVector& F, const ChaosVector& G) {
  require_same_dim(F.dim(), G.dim(), "add");
  ChaosVector::Terms t = F.terms();
  for (const auto& [alpha, c] : G.terms()) t[alpha] += c;
  return ChaosVector(F.dim(), std::max(F.max_order(), G.max_order()), std::move(t));
}

ChaosVector scale(const ChaosVector& F, double c) {
  ChaosVector::Terms t;
  for (const auto& [alpha, x] : F.terms()) t.emplace(alpha, c * x);
  return ChaosVector(F.dim(), F.max_order(), std::move(t));
}

ChaosVector operator+(const ChaosVector& F, const ChaosVector& G) { return add(F, G); }
ChaosVector operator-(const ChaosVector& F, const ChaosVector& G) { return add(F, scale(G, -1.0)); }
ChaosVector operator*(double c, const ChaosVector& F) { return scale(F, c); }

double inner_product(const ChaosVector& F, const ChaosVector& G) {
  require_same_dim(F.dim(), G.dim(), "inner_product");
  double s = 0.0;
  for (const auto& [alpha, c] : F.terms()) {
    const double d = G.coeff(alpha);
    if (d != 0.0) s += multiindex_factorial(alpha) * c * d;
  }
  return s;
}

double l2_norm(const ChaosVector& F) { return std::sqrt(inner_product(F, F)); }

double gamma_norm(const ChaosVector& F, double r) {
  if (!(r > 0.0)) throw DomainError("gamma_norm requires r > 0");
  double s = 0.0;
  for (const auto& [alpha, c] : F.terms())
    s += multiindex_factorial(alpha) * std::pow(r, 2 * alpha.degree()) * c * c;
  return std::sqrt(s);
}

ChaosVector second_quantization(const ChaosVector& F, double a) {
  ChaosVector::Terms t;
  for (const auto& [alpha, c] : F.terms()) t.emplace(alpha, c * std::pow(a, alpha.degree()));
  return ChaosVector(F.dim(), F.max_order(), std::move(t));
}

// ---------------------------------------------------------------------------
// Products

ChaosVector wick_product(const ChaosVector& F, const ChaosVector& G) {
  require_same_dim(F.dim(), G.dim(), "wick_product");
  const int cap = std::max(F.max_order(), G.max_order());
  if (!F.empty() && !G.empty()) require_fits(F.degree() + G.degree(), cap, "wick_product");
  return wick_product_truncated(F, G, cap);
}

ChaosVector wick_product_truncated(const ChaosVector& F, const ChaosVector& G, int order) {
  require_same_dim(F.dim(), G.dim(), "wick_product");
  ChaosVector::Terms t;
  for (const auto& [alpha, c] : F.terms())
    for (const auto& [beta, d] : G.terms())
      if (alpha.degree() + beta.degree() <= order) t[alpha + beta] += c * d;
  return ChaosVector(F.dim(), order, std::move(t));
}

ChaosVector ordinary_product(const ChaosVector& F, const ChaosVector& G) {
  require_same_dim(F.dim(), G.dim(), "ordinary_product");
  const int cap = std::max(F.max_order(), G.max_order());
  if (!F.empty() && !G.empty()) require_fits(F.degree() + G.degree(), cap, "ordinary_product");

  using Partial = std::vector<std::pair<std::vector<MultiIndex::Entry>, double>>;
  ChaosVector::Terms t;
  for (const auto& [alpha, c] : F.terms())
    for (const auto& [beta, d] : G.terms()) {
      // Expand prod_i H_{alpha_i} H_{beta_i} one coordinate at a time.
      Partial partial{{{}, c * d}};
      const MultiIndex support = alpha + beta;
      for (const auto& [basis, unused] : support.entries()) {
        const int a = alpha[basis];
        const int b = beta[basis];
        Partial next;
        next.reserve(partial.size() * static_cast<std::size_t>(std::min(a, b) + 1));
        for (const auto& [entries, w] : partial)
          for (int p = 0; p <= std::min(a, b); ++p) {
            auto e = entries;
            if (a + b - 2 * p > 0) e.emplace_back(basis, a + b - 2 * p);
            next.emplace_back(std::move(e), w * linearization_weight(a, b, p));
          }
        partial = std::move(next);
      }
      for (auto& [entries, w] : partial) t[MultiIndex(std::move(entries))] += w;
    }
  return ChaosVector(F.dim(), cap, std::move(t));
}

ChaosVector wick_power(const ChaosVector& F, int k) {
  if (k < 0) throw DomainError("negative Wick power");
  if (!F.empty()) require_fits(k * F.degree(), F.max_order(), "wick_power");
  return wick_power_truncated(F, k, F.max_order());
}

ChaosVector wick_power_truncated(const ChaosVector& F, int k, int order) {
  if (k < 0) throw DomainError("negative Wick power");
  ChaosVector acc = ChaosVector::constant(F.dim(), order, 1.0);
  for (int i = 0; i < k; ++i) acc = wick_product_truncated(acc, F, order);
  return acc;
}

ChaosVector ordinary_power(const ChaosVector& F, int k) {
  if (k < 0) throw DomainError("negative power");
  ChaosVector acc = ChaosVector::constant(F.dim(), F.max_order(), 1.0);
  for (int i = 0; i < k; ++i) acc = ordinary_product(acc, F);
  return acc;
}

ChaosVector exponential_vector(const HVector& f, int max_order) {
  ChaosVector::Terms t;
  for (int n = 0; n <= max_order; ++n)
    for_each_multiindex(f.dim(), n, [&](const MultiIndex& alpha) {
      double c = 1.0;
      for (const auto& [basis, mult] : alpha.entries())
        c *= std::pow(f.along(basis), mult) / factorial(mult);
      if (c != 0.0) t.emplace(alpha, c);
    });
  return ChaosVector(f.dim(), max_order, std::move(t));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double evaluate_with_scratch(const ChaosVector& F, std::span<const double> x, std::vector<double>& table,
                             int stride) {
  for (int i = 0; i < F.dim(); ++i)
    hermite_eval_all(x[static_cast<std::size_t>(i)],
                     std::span<double>(table.data() + static_cast<std::ptrdiff_t>(i) * stride,
                                       static_cast<std::size_t>(stride)));
  double s = 0.0;
  for (const auto& [alpha, c] : F.terms()) {
    double term = c;
    for (const auto& [basis, mult] : alpha.entries())
      term *= table[static_cast<std::size_t>((basis - 1) * stride + mult)];
    s += term;
  }
  return s;
}

}  // namespace

double evaluate_at(const ChaosVector& F, std::span<const double> x) {
  if (static_cast<int>(x.size()) != F.dim())
    throw DimensionMismatch("evaluate: point has " + std::to_string(x.size()) + " coordinates, expected " +
                            std::to_string(F.dim()));
  const int stride = F.degree() + 1;
  std::vector<double> table(static_cast<std::size_t>(F.dim() * stride));
  return evaluate_with_scratch(F, x, table, stride);
}

std::vector<double> evaluate(const ChaosVector& F, const SampleBatch& batch) {
  require_same_dim(F.dim(), batch.dim, "evaluate");
  const int stride = F.degree() + 1;
  std::vector<double> table(static_cast<std::size_t>(F.dim() * stride));
  std::vector<double> out(static_cast<std::size_t>(batch.n_samples));
  for (std::int64_t i = 0; i < batch.n_samples; ++i)
    out[static_cast<std::size_t>(i)] = evaluate_with_scratch(F, batch.row(i), table, stride);
  return out;
}

double expectation(const ChaosVector& F) { return F.coeff(MultiIndex{}); }

// ---------------------------------------------------------------------------
// Independence

SymTensor contraction_1(const SymTensor& f, const SymTensor& g) {
  require_same_dim(f.dim(), g.dim(), "contraction_1");
  if (f.order() < 1 || g.order() < 1) throw DomainError("contraction_1 requires orders >= 1");
  SymTensor acc(f.dim(), f.order() + g.order() - 2);
  for (int k = 1; k <= f.dim(); ++k) {
    // <f, e_k>: entry at beta is f at beta + e_k.
    SymTensor::Values fk;
    SymTensor::Values gk;
    for (const auto& [key, v] : f.values())
      if (key[k] > 0) fk[key.shifted(k, -1)] = v;
    for (const auto& [key, v] : g.values())
      if (key[k] > 0) gk[key.shifted(k, -1)] = v;
    if (fk.empty() || gk.empty()) continue;
    acc = acc + sym_tensor_product(SymTensor(f.dim(), f.order() - 1, std::move(fk)),
                                   SymTensor(g.dim(), g.order() - 1, std::move(gk)));
  }
  return acc;
}

bool independent(const SymTensor& f, const SymTensor& g) {
  return contraction_1(f, g).norm() <= kIndependenceThreshold;
}

}  // namespace wick
