#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlisse/ratcore/modular.hpp"
#include "qlisse/ratcore/sparse.hpp"

namespace qlisse {

/// Thrown when the multi-modular image cannot be lifted with the primes at
/// hand; the caller retries with more primes.
class ReconstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Dense reduced row echelon form over Q, in place. Returns pivot columns.
inline std::vector<std::size_t> rref_dense(std::vector<std::vector<Rational>>& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t sel = r;
    while (sel < a.size() && a[sel][c] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[r], a[sel]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < ncols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return pivots;
}

}  // namespace detail

/// Canonical form of a subspace basis: reduced row echelon form of the
/// spanning vectors, each row scaled to integer content 1 (leading entry
/// positive). Two bases of the same subspace map to the same list.
inline std::vector<SparseVec> canonical_basis(const std::vector<SparseVec>& vecs, std::size_t ncols) {
  if (vecs.empty()) return {};
  // Restrict to the support so the dense pass stays small.
  std::vector<std::size_t> support;
  for (const auto& v : vecs)
    for (const auto& [i, x] : v.entries()) support.push_back(i);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  std::map<std::size_t, std::size_t> local;
  for (std::size_t k = 0; k < support.size(); ++k) local[support[k]] = k;
  std::vector<std::vector<Rational>> a(vecs.size(), std::vector<Rational>(support.size()));
  for (std::size_t r = 0; r < vecs.size(); ++r)
    for (const auto& [i, x] : vecs[r].entries()) a[r][local[i]] = x;
  detail::rref_dense(a, support.size());
  std::vector<SparseVec> out;
  for (const auto& row : a) {
    std::vector<SparseVec::Entry> e;
    for (std::size_t k = 0; k < row.size(); ++k)
      if (row[k] != 0) e.emplace_back(support[k], row[k]);
    auto v = SparseVec::from_entries(std::move(e));
    if (!v.empty()) out.push_back(v.normalized());
  }
  (void)ncols;
  return out;
}

/// Right nullspace over Q by plain dense Gauss-Jordan elimination. This is
/// the verification path; it does not scale past a few thousand columns.
inline std::vector<SparseVec> nullspace_exact(const SparseMat& m) {
  const std::size_t n = m.ncols();
  std::vector<std::vector<Rational>> a;
  a.reserve(m.nrows());
  for (const auto& row : m.rows()) a.push_back(row.to_dense(n));
  auto pivots = detail::rref_dense(a, n);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<SparseVec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<SparseVec::Entry> e;
    e.emplace_back(f, Rational(1));
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (a[r][f] != 0) e.emplace_back(pivots[r], -a[r][f]);
    basis.push_back(SparseVec::from_entries(std::move(e)));
  }
  auto out = canonical_basis(basis, n);
  for (const auto& v : out)
    if (!m.annihilates(v)) throw std::logic_error("nullspace_exact: verification failed");
  return out;
}

/// Nullspace of a matrix reduced modulo one prime.
struct ModularImage {
  std::uint64_t prime = 0;
  std::size_t rank = 0;
  std::vector<std::size_t> free_cols;
  /// One dense residue vector per free column: 1 at that column, 0 at the
  /// other free columns.
  std::vector<std::vector<std::uint64_t>> basis;
};

/// Sparse elimination mod p. Rows are taken sparsest first; each surviving
/// row picks as pivot the remaining column with the lowest column count.
/// Pivot rows are only reduced against earlier pivots, so reduction of a
/// new row visits pivots in creation order.
inline ModularImage modular_nullspace_image(const SparseMat& m, std::uint64_t p) {
  const std::size_t n = m.ncols();
  if (p >= kWordPrimeBound) throw std::invalid_argument("modular_nullspace_image: prime must be below 2^31");

  std::vector<std::size_t> col_count(n, 0);
  for (const auto& r : m.rows())
    for (const auto& e : r.entries()) ++col_count[e.first];

  std::vector<std::size_t> order(m.nrows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.row(a).nnz() < m.row(b).nnz(); });

  struct PivotRow {
    std::uint32_t col;
    std::vector<std::uint32_t> cols;
    std::vector<std::uint32_t> vals;
  };
  std::vector<PivotRow> pivots;
  std::vector<std::int64_t> pivot_of(n, -1);
  std::vector<std::uint64_t> acc(n, 0);
  std::vector<char> touched_flag(n, 0);
  std::vector<std::uint32_t> touched;
  std::priority_queue<std::int64_t, std::vector<std::int64_t>, std::greater<>> heap;

  for (std::size_t ri : order) {
    touched.clear();
    for (const auto& [c, x] : m.row(ri).entries()) {
      auto red = reduce_mod(x, p);
      if (!red) throw std::invalid_argument("modular_nullspace_image: prime divides a denominator");
      if (*red == 0) continue;
      acc[c] = *red;
      touched_flag[c] = 1;
      touched.push_back(static_cast<std::uint32_t>(c));
      if (pivot_of[c] >= 0) heap.push(pivot_of[c]);
    }
    while (!heap.empty()) {
      std::int64_t pid = heap.top();
      heap.pop();
      while (!heap.empty() && heap.top() == pid) heap.pop();
      const PivotRow& pr = pivots[static_cast<std::size_t>(pid)];
      std::uint64_t f = acc[pr.col];
      if (f == 0) continue;
      acc[pr.col] = 0;
      const std::uint64_t neg = p - f;
      for (std::size_t k = 0; k < pr.cols.size(); ++k) {
        std::uint32_t c = pr.cols[k];
        acc[c] = (acc[c] + neg * pr.vals[k]) % p;
        if (!touched_flag[c]) {
          touched_flag[c] = 1;
          touched.push_back(c);
        }
        if (pivot_of[c] >= 0 && acc[c] != 0) heap.push(pivot_of[c]);
      }
    }
    std::uint32_t best = 0;
    bool found = false;
    for (std::uint32_t c : touched) {
      if (acc[c] == 0) continue;
      if (!found || col_count[c] < col_count[best] || (col_count[c] == col_count[best] && c < best)) {
        best = c;
        found = true;
      }
    }
    if (found) {
      PivotRow pr;
      pr.col = best;
      std::uint64_t inv = inv_mod(acc[best], p);
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t c : touched) {
        if (c == best || acc[c] == 0) continue;
        pr.cols.push_back(c);
        pr.vals.push_back(static_cast<std::uint32_t>(mul_mod(acc[c], inv, p)));
      }
      pivot_of[best] = static_cast<std::int64_t>(pivots.size());
      pivots.push_back(std::move(pr));
    }
    for (std::uint32_t c : touched) {
      acc[c] = 0;
      touched_flag[c] = 0;
    }
  }

  ModularImage img;
  img.prime = p;
  img.rank = pivots.size();
  for (std::size_t c = 0; c < n; ++c)
    if (pivot_of[c] < 0) img.free_cols.push_back(c);
  for (std::size_t f : img.free_cols) {
    std::vector<std::uint64_t> x(n, 0);
    x[f] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
      const PivotRow& pr = pivots[k];
      std::uint64_t s = 0;
      for (std::size_t t = 0; t < pr.cols.size(); ++t) s = (s + pr.vals[t] * x[pr.cols[t]]) % p;
      x[pr.col] = s == 0 ? 0 : p - s;
    }
    img.basis.push_back(std::move(x));
  }
  return img;
}

namespace detail {

/// Picks the consensus group: minimal nullity first (higher nullity marks an
/// unlucky prime), then the most common free-column set among those.
inline std::vector<const ModularImage*> consensus(const std::vector<ModularImage>& images) {
  if (images.empty()) return {};
  std::size_t min_nullity = images.front().free_cols.size();
  for (const auto& im : images) min_nullity = std::min(min_nullity, im.free_cols.size());
  std::map<std::vector<std::size_t>, std::vector<const ModularImage*>> groups;
  for (const auto& im : images)
    if (im.free_cols.size() == min_nullity) groups[im.free_cols].push_back(&im);
  const std::vector<const ModularImage*>* best = nullptr;
  for (const auto& [cols, g] : groups)
    if (!best || g.size() > best->size()) best = &g;
  return *best;
}

inline std::vector<SparseVec> lift_images(const SparseMat& m, const std::vector<const ModularImage*>& group) {
  const std::size_t n = m.ncols();
  const auto& free_cols = group.front()->free_cols;
  std::vector<SparseVec> lifted;
  for (std::size_t b = 0; b < free_cols.size(); ++b) {
    std::vector<SparseVec::Entry> e;
    for (std::size_t c = 0; c < n; ++c) {
      Integer value = group.front()->basis[b][c];
      Integer modulus = static_cast<unsigned long>(group.front()->prime);
      for (std::size_t g = 1; g < group.size(); ++g) {
        value = crt_step(value, modulus, group[g]->basis[b][c], group[g]->prime);
        modulus *= static_cast<unsigned long>(group[g]->prime);
      }
      if (value == 0) continue;
      auto r = rational_reconstruct(value, modulus);
      if (!r) throw ReconstructionFailure("rational reconstruction failed at column " + std::to_string(c));
      e.emplace_back(c, *r);
    }
    SparseVec v = SparseVec::from_entries(std::move(e));
    if (!m.annihilates(v)) throw ReconstructionFailure("reconstructed vector does not annihilate the matrix");
    lifted.push_back(std::move(v));
  }
  return canonical_basis(lifted, n);
}

}  // namespace detail

/// Multi-modular right nullspace: per-prime elimination, unlucky-prime
/// filtering, CRT, rational reconstruction, exact verification. Throws
/// ReconstructionFailure when the primes do not carry enough information.
inline std::vector<SparseVec> nullspace_modular(const SparseMat& m, const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) throw std::invalid_argument("nullspace_modular: no primes");
  std::vector<std::uint64_t> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("nullspace_modular: primes must be distinct");
  std::vector<ModularImage> images;
  for (auto p : primes) {
    if (!is_prime_u64(p)) throw std::invalid_argument("nullspace_modular: " + std::to_string(p) + " is not prime");
    images.push_back(modular_nullspace_image(m, p));
  }
  auto group = detail::consensus(images);
  if (group.front()->free_cols.empty()) return {};
  return detail::lift_images(m, group);
}

struct NullspaceReport {
  std::vector<SparseVec> basis;
  std::size_t primes_used = 0;
  std::size_t rank = 0;
};

/// Adds word-sized primes one at a time until the lifted basis verifies.
inline NullspaceReport nullspace_multimodular(const SparseMat& m, std::size_t max_primes = 64) {
  std::vector<ModularImage> images;
  auto candidates = primes_below(kWordPrimeBound, max_primes * 2);
  for (auto p : candidates) {
    bool divides_den = false;
    for (const auto& r : m.rows()) {
      for (const auto& e : r.entries())
        if (!reduce_mod(e.second, p)) {
          divides_den = true;
          break;
        }
      if (divides_den) break;
    }
    if (divides_den) continue;
    images.push_back(modular_nullspace_image(m, p));
    auto group = detail::consensus(images);
    NullspaceReport rep;
    rep.primes_used = images.size();
    rep.rank = group.front()->rank;
    if (group.front()->free_cols.empty()) return rep;
    try {
      rep.basis = detail::lift_images(m, group);
      return rep;
    } catch (const ReconstructionFailure&) {
      if (images.size() >= max_primes) throw;
    }
  }
  throw ReconstructionFailure("nullspace_multimodular: ran out of primes");
}

}  // namespace qlisse
