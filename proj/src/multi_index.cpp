#include "wick/multi_index.hpp"

#include <algorithm>
#include <sstream>

#include "wick/errors.hpp"
#include "wick/hermite.hpp"

namespace wick {

MultiIndex::MultiIndex(std::initializer_list<Entry> entries) : entries_(entries) { canonicalize(); }

MultiIndex::MultiIndex(std::vector<Entry> entries) : entries_(std::move(entries)) { canonicalize(); }

void MultiIndex::canonicalize() {
  std::sort(entries_.begin(), entries_.end());
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (const auto& [basis, mult] : entries_) {
    if (basis < 1) throw DomainError("basis labels start at 1, got " + std::to_string(basis));
    if (mult < 0) throw DomainError("negative multiplicity for basis " + std::to_string(basis));
    if (mult == 0) continue;
    if (!merged.empty() && merged.back().first == basis)
      merged.back().second += mult;
    else
      merged.emplace_back(basis, mult);
  }
  entries_ = std::move(merged);
  degree_ = 0;
  for (const auto& e : entries_) degree_ += e.second;
}

MultiIndex MultiIndex::from_tuple(std::span<const int> basis_labels) {
  std::vector<Entry> e;
  e.reserve(basis_labels.size());
  for (int b : basis_labels) e.emplace_back(b, 1);
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::unit(int basis, int multiplicity) { return MultiIndex{{basis, multiplicity}}; }

int MultiIndex::max_basis() const noexcept { return entries_.empty() ? 0 : entries_.back().first; }

int MultiIndex::operator[](int basis) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{basis, 0});
  return (it != entries_.end() && it->first == basis) ? it->second : 0;
}

MultiIndex MultiIndex::shifted(int basis, int delta) const {
  std::vector<Entry> e = entries_;
  auto it = std::lower_bound(e.begin(), e.end(), Entry{basis, 0});
  if (it != e.end() && it->first == basis) {
    it->second += delta;
  } else {
    e.insert(it, Entry{basis, delta});
  }
  return MultiIndex(std::move(e));
}

std::vector<int> MultiIndex::to_tuple() const {
  std::vector<int> t;
  t.reserve(degree_);
  for (const auto& [basis, mult] : entries_) t.insert(t.end(), mult, basis);
  return t;
}

bool MultiIndex::contains(const MultiIndex& other) const noexcept {
  for (const auto& [basis, mult] : other.entries_)
    if ((*this)[basis] < mult) return false;
  return true;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << entries_[i].first << ':' << entries_[i].second;
  }
  os << '}';
  return os.str();
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const noexcept {
  if (auto c = degree_ <=> other.degree_; c != 0) return c;
  return std::lexicographical_compare_three_way(entries_.begin(), entries_.end(),
                                                other.entries_.begin(), other.entries_.end());
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  std::vector<MultiIndex::Entry> e(a.entries().begin(), a.entries().end());
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return MultiIndex(std::move(e));
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  if (!a.contains(b)) throw DomainError("multi-index " + b.to_string() + " not contained in " + a.to_string());
  std::vector<MultiIndex::Entry> out;
  for (const auto& [basis, mult] : a.entries()) {
    const int m = mult - b[basis];
    if (m > 0) out.emplace_back(basis, m);
  }
  return MultiIndex(std::move(out));
}

double multiindex_factorial(const MultiIndex& alpha) {
  double r = 1.0;
  for (const auto& [basis, mult] : alpha.entries()) r *= factorial(mult);
  return r;
}

double multinomial(const MultiIndex& alpha) {
  return factorial(alpha.degree()) / multiindex_factorial(alpha);
}

double multi_binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  double r = 1.0;
  for (const auto& [basis, mult] : beta.entries()) r *= binomial(alpha[basis], mult);
  return r;
}

namespace {

void enumerate(int basis, int dim, int remaining, std::vector<MultiIndex::Entry>& acc,
               const std::function<void(const MultiIndex&)>& fn) {
  if (remaining == 0) {
    fn(MultiIndex(acc));
    return;
  }
  if (basis > dim) return;
  for (int m = remaining; m >= 0; --m) {
    if (m > 0) acc.emplace_back(basis, m);
    if (basis < dim || m == remaining) enumerate(basis + 1, dim, remaining - m, acc, fn);
    if (m > 0) acc.pop_back();
  }
}

}  // namespace

void for_each_multiindex(int dim, int degree, const std::function<void(const MultiIndex&)>& fn) {
  if (degree < 0 || dim < 0) return;
  if (degree == 0) {
    fn(MultiIndex{});
    return;
  }
  std::vector<MultiIndex::Entry> acc;
  enumerate(1, dim, degree, acc, fn);
}

void for_each_submultiindex(const MultiIndex& alpha, const std::function<void(const MultiIndex&)>& fn) {
  const auto entries = alpha.entries();
  std::vector<int> counts(entries.size(), 0);
  while (true) {
    std::vector<MultiIndex::Entry> e;
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (counts[i] > 0) e.emplace_back(entries[i].first, counts[i]);
    fn(MultiIndex(std::move(e)));
    std::size_t i = 0;
    while (i < entries.size() && counts[i] == entries[i].second) counts[i++] = 0;
    if (i == entries.size()) return;
    ++counts[i];
  }
}

}  // namespace wick
