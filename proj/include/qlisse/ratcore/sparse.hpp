#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qlisse/ratcore/rational.hpp"

namespace qlisse {

/// Sparse rational vector: strictly increasing indices, no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVec() = default;

  /// Builds from unsorted entries; duplicates are summed, zeros dropped.
  static SparseVec from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVec v;
    for (auto& [i, x] : entries) {
      if (!v.entries_.empty() && v.entries_.back().first == i) {
        v.entries_.back().second += x;
        if (v.entries_.back().second == 0) v.entries_.pop_back();
      } else if (x != 0) {
        v.entries_.emplace_back(i, std::move(x));
      }
    }
    return v;
  }

  static SparseVec from_dense(const std::vector<Rational>& dense) {
    SparseVec v;
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (dense[i] != 0) v.entries_.emplace_back(i, dense[i]);
    return v;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Rational at(std::size_t i) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    return (it != entries_.end() && it->first == i) ? it->second : Rational(0);
  }

  std::vector<Rational> to_dense(std::size_t n) const {
    std::vector<Rational> d(n);
    for (const auto& [i, x] : entries_) d.at(i) = x;
    return d;
  }

  /// Scale to integer entries with content 1 and first nonzero entry positive.
  SparseVec normalized() const {
    if (entries_.empty()) return {};
    Integer den_lcm = 1;
    for (const auto& [i, x] : entries_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    Integer content = 0;
    for (const auto& [i, x] : entries_) {
      Integer n = x.get_num() * (den_lcm / x.get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
    }
    Rational scale(den_lcm, content);
    scale.canonicalize();
    if (entries_.front().second < 0) scale = -scale;
    SparseVec out;
    out.entries_.reserve(entries_.size());
    for (const auto& [i, x] : entries_) out.entries_.emplace_back(i, x * scale);
    return out;
  }

  SparseVec scaled(const Rational& s) const {
    if (s == 0) return {};
    SparseVec out = *this;
    for (auto& e : out.entries_) e.second *= s;
    return out;
  }

  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries_ == b.entries_; }
  friend bool operator<(const SparseVec& a, const SparseVec& b) { return a.entries_ < b.entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Row-major sparse rational matrix.
class SparseMat {
 public:
  SparseMat() = default;
  explicit SparseMat(std::size_t ncols) : ncols_(ncols) {}
  SparseMat(std::size_t ncols, std::vector<SparseVec> rows) : ncols_(ncols), rows_(std::move(rows)) {
    for (const auto& r : rows_) check_row(r);
  }

  static SparseMat from_dense(const std::vector<std::vector<Rational>>& d, std::size_t ncols) {
    SparseMat m(ncols);
    for (const auto& row : d) {
      if (row.size() != ncols) throw std::invalid_argument("from_dense: ragged row");
      m.add_row(SparseVec::from_dense(row));
    }
    return m;
  }

  void add_row(SparseVec r) {
    check_row(r);
    rows_.push_back(std::move(r));
  }

  std::size_t ncols() const { return ncols_; }
  std::size_t nrows() const { return rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }
  const SparseVec& row(std::size_t i) const { return rows_.at(i); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.nnz();
    return n;
  }

  /// Exact product m * x, dense result of length nrows().
  std::vector<Rational> multiply(const SparseVec& x) const {
    std::vector<Rational> xd = x.to_dense(ncols_);
    std::vector<Rational> y(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r].entries()) y[r] += v * xd[c];
    return y;
  }

  bool annihilates(const SparseVec& x) const {
    std::vector<Rational> xd = x.to_dense(ncols_);
    Rational acc;
    for (const auto& row : rows_) {
      acc = 0;
      for (const auto& [c, v] : row.entries()) acc += v * xd[c];
      if (acc != 0) return false;
    }
    return true;
  }

 private:
  void check_row(const SparseVec& r) const {
    if (!r.empty() && r.entries().back().first >= ncols_)
      throw std::out_of_range("SparseMat: column index out of range");
  }

  std::size_t ncols_ = 0;
  std::vector<SparseVec> rows_;
};

}  // namespace qlisse
