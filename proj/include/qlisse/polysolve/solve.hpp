#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlisse/polysolve/groebner.hpp"
#include "qlisse/polysolve/univariate.hpp"
#include "qlisse/ratcore/nullspace.hpp"

namespace qlisse::poly {

using Point = std::array<Rational, kVars>;

/// Normal forms modulo a fixed basis, with the integer copy built once.
class NormalFormEngine {
 public:
  explicit NormalFormEngine(GroebnerBasis gb) : gb_(std::move(gb)) {
    for (const auto& g : gb_.polys) ints_.push_back(detail::to_int(g));
    for (const auto& g : ints_) ptrs_.push_back(&g);
  }
  const GroebnerBasis& basis() const { return gb_; }

  MultiPoly operator()(const MultiPoly& f) const {
    if (f.is_zero()) return f.with_order(gb_.order);
    Rational factor;
    detail::IntPoly h = detail::to_int(f.with_order(gb_.order), &factor);
    detail::reduce(h, ptrs_, true, &factor);
    MultiPoly r(gb_.order);
    for (const auto& [e, c] : h.terms()) r.mutable_terms().emplace_back(e, Rational(c) / factor);
    return r;
  }

 private:
  GroebnerBasis gb_;
  std::vector<detail::IntPoly> ints_;
  std::vector<const detail::IntPoly*> ptrs_;
};

/// Monic minimal polynomial of h_var (1-based) in the quotient ring of a
/// zero-dimensional ideal, by linear dependence among normal forms of powers.
inline UPoly minimal_polynomial(const NormalFormEngine& nf, int var) {
  if (nf.basis().is_unit()) return UPoly({Rational(1)});
  MultiPoly x = MultiPoly::variable(var, nf.basis().order);
  // echelon rows: pivot exponent -> (vector, combination of powers)
  struct Row {
    MultiPoly v;
    std::vector<Rational> comb;
  };
  std::vector<Row> rows;
  MultiPoly power = nf(MultiPoly::constant(1, nf.basis().order));
  for (int k = 0;; ++k) {
    if (k > 100000) throw std::runtime_error("minimal_polynomial: ideal is not zero-dimensional");
    MultiPoly v = power;
    std::vector<Rational> comb(k + 1);
    comb[k] = 1;
    for (const auto& r : rows) {
      Rational c = v.coeff(r.v.lead_exp());
      if (c == 0) continue;
      v = v - r.v.scaled(c);
      for (std::size_t i = 0; i < r.comb.size(); ++i) comb[i] -= c * r.comb[i];
    }
    if (v.is_zero()) return UPoly(comb).monic();
    Rational l = v.lead_coeff();
    v = v.scaled(1 / l);
    for (auto& c : comb) c /= l;
    // keep rows reduced against each other's pivots
    for (auto& r : rows) {
      Rational c = r.v.coeff(v.lead_exp());
      if (c == 0) continue;
      r.v = r.v - v.scaled(c);
      r.comb.resize(comb.size());
      for (std::size_t i = 0; i < comb.size(); ++i) r.comb[i] -= c * comb[i];
    }
    rows.push_back({v, comb});
    power = nf(power * x);
  }
}

struct CompletenessCertificate {
  /// bound on distinct complex solutions (dimension of the reduced quotient)
  std::size_t D = 0;
  /// standard monomials of the input ideal (solutions with multiplicity)
  std::size_t D_with_multiplicity = 0;
  std::size_t found = 0;
  bool zero_dimensional = false;
  bool certified = false;
  /// square-free factors without rational roots met on live branches
  std::vector<UPoly> residual_factors;
  /// true when produced by point verification rather than by solving
  bool verification_mode = false;
};

struct SolveResult {
  std::vector<Point> points;  // sorted lexicographically
  CompletenessCertificate certificate;
};

/// The quotient ring Q[h]/I of a zero-dimensional ideal on its standard
/// monomials. mult(i) has one row per standard monomial s: the coordinates of
/// the normal form of h_i * s. Its right kernels are the functionals phi with
/// phi(h_i f) = r phi(f), so joint kernels are point evaluations.
class QuotientAlgebra {
 public:
  explicit QuotientAlgebra(const GroebnerBasis& gb) : nf_(gb) {
    ZeroDimInfo info = is_zero_dimensional(gb);
    if (!info.zero_dimensional) throw std::invalid_argument("QuotientAlgebra: ideal is not zero-dimensional");
    standard_ = info.standard;
    for (std::size_t j = 0; j < standard_.size(); ++j) index_[standard_[j]] = j;
    for (int v = 0; v < kVars; ++v) {
      mult_[v] = SparseMat(dim());
      for (const auto& s : standard_) {
        Exponent e = s;
        ++e[v];
        if (auto it = index_.find(e); it != index_.end()) {
          mult_[v].add_row(SparseVec::from_entries({{it->second, Rational(1)}}));
        } else {
          mult_[v].add_row(coords(nf_(MultiPoly::monomial(e, Rational(1), gb.order))));
        }
      }
    }
  }

  std::size_t dim() const { return standard_.size(); }
  const std::vector<Exponent>& standard() const { return standard_; }
  const NormalFormEngine& normal_form() const { return nf_; }
  /// 1-based variable
  const SparseMat& mult(int var) const { return mult_.at(var - 1); }

  SparseVec coords(const MultiPoly& reduced) const {
    std::vector<SparseVec::Entry> e;
    for (const auto& [x, c] : reduced.terms()) e.emplace_back(index_.at(x), c);
    return SparseVec::from_entries(std::move(e));
  }

 private:
  NormalFormEngine nf_;
  std::vector<Exponent> standard_;
  std::map<Exponent, std::size_t> index_;
  std::array<SparseMat, kVars> mult_;
};

namespace detail {

inline UPoly matrix_minimal_polynomial(const std::vector<std::vector<Rational>>& r) {
  std::size_t k = r.size();
  std::vector<std::vector<Rational>> power(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i) power[i][i] = 1;
  struct Row {
    std::vector<Rational> v;
    std::size_t pivot;
    std::vector<Rational> comb;
  };
  std::vector<Row> rows;
  for (std::size_t deg = 0;; ++deg) {
    std::vector<Rational> v;
    v.reserve(k * k);
    for (const auto& row : power) v.insert(v.end(), row.begin(), row.end());
    std::vector<Rational> comb(deg + 1);
    comb[deg] = 1;
    for (const auto& row : rows) {
      Rational c = v[row.pivot];
      if (c == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * row.v[i];
      for (std::size_t i = 0; i < row.comb.size(); ++i) comb[i] -= c * row.comb[i];
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv] == 0) ++piv;
    if (piv == v.size()) return UPoly(comb).monic();
    Rational l = v[piv];
    for (auto& x : v) x /= l;
    for (auto& x : comb) x /= l;
    rows.push_back({std::move(v), piv, std::move(comb)});
    std::vector<std::vector<Rational>> next(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t m = 0; m < k; ++m) {
        if (power[i][m] == 0) continue;
        for (std::size_t j = 0; j < k; ++j) next[i][j] += power[i][m] * r[m][j];
      }
    power = std::move(next);
  }
}

inline SparseMat shifted_matrix(const SparseMat& m, const Rational& r) {
  SparseMat out(m.ncols());
  for (std::size_t j = 0; j < m.nrows(); ++j) {
    std::vector<SparseVec::Entry> e = m.row(j).entries();
    e.emplace_back(j, -r);
    out.add_row(SparseVec::from_entries(std::move(e)));
  }
  return out;
}

/// Joint eigenspace search below a subspace V (canonical basis) invariant
/// under every multiplication operator.
inline void split_branch(const QuotientAlgebra& a, const std::vector<SparseVec>& basis, int var, Point& partial,
                         std::vector<Point>& out, std::vector<UPoly>& residual) {
  if (basis.empty()) return;
  if (var > kVars) {
    out.push_back(partial);
    return;
  }
  std::size_t k = basis.size();
  std::vector<std::size_t> pivot(k);
  for (std::size_t i = 0; i < k; ++i) pivot[i] = basis[i].entries().front().first;
  // restricted operator: column l holds the coordinates of T * basis[l]
  std::vector<std::vector<Rational>> r(k, std::vector<Rational>(k));
  for (std::size_t l = 0; l < k; ++l) {
    std::vector<Rational> w = a.mult(var).multiply(basis[l]);
    std::vector<Rational> check = w;
    for (std::size_t i = 0; i < k; ++i) {
      r[i][l] = w[pivot[i]] / basis[i].entries().front().second;
      if (r[i][l] == 0) continue;
      for (const auto& [j, x] : basis[i].entries()) check[j] -= r[i][l] * x;
    }
    for (const auto& x : check)
      if (x != 0) throw std::logic_error("split_branch: subspace is not invariant");
  }
  UPoly m = squarefree_part(matrix_minimal_polynomial(r));
  std::vector<Rational> roots = rational_roots(m);
  UPoly rest = deflate(m, roots);
  if (rest.degree() > 0) residual.push_back(rest);
  for (const auto& s : roots) {
    SparseMat shifted(k);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Rational> row = r[i];
      row[i] -= s;
      shifted.add_row(SparseVec::from_dense(row));
    }
    std::vector<SparseVec> sub;
    for (const auto& n : nullspace_exact(shifted)) {
      std::map<std::size_t, Rational> acc;
      for (const auto& [l, c] : n.entries())
        for (const auto& [j, x] : basis[l].entries()) acc[j] += c * x;
      std::vector<SparseVec::Entry> e(acc.begin(), acc.end());
      sub.push_back(SparseVec::from_entries(std::move(e)));
    }
    partial[var - 1] = s;
    split_branch(a, canonical_basis(sub, a.dim()), var + 1, partial, out, residual);
  }
  partial[var - 1] = 0;
}

}  // namespace detail

/// Upper bound on the number of distinct complex zeros: dim A minus the
/// dimension, modulo a prime, of the ideal of A generated by the square-free
/// eliminants (the nilradical over Q). The bound is exact for all but finitely
/// many primes.
inline std::size_t radical_dimension_bound(const QuotientAlgebra& a) {
  std::size_t n = a.dim();
  if (n == 0) return 0;
  std::uint64_t p = 0;
  std::array<std::vector<std::vector<std::uint64_t>>, kVars> t;
  for (auto cand : primes_below(kWordPrimeBound, 64)) {
    bool ok = true;
    for (int v = 0; v < kVars && ok; ++v) {
      t[v].assign(n, std::vector<std::uint64_t>(n, 0));
      for (std::size_t j = 0; j < n && ok; ++j)
        for (const auto& [i, x] : a.mult(v + 1).row(j).entries()) {
          auto red = reduce_mod(x, cand);
          if (!red) {
            ok = false;
            break;
          }
          t[v][j][i] = *red;
        }
    }
    if (ok) {
      p = cand;
      break;
    }
  }
  if (!p) throw std::runtime_error("radical_dimension_bound: no usable prime");
  // multiplication by h_v on coordinate vectors
  auto apply = [&](int v, const std::vector<std::uint64_t>& x) {
    std::vector<std::uint64_t> y(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (!x[j]) continue;
      const auto& row = t[v][j];
      for (std::size_t i = 0; i < n; ++i)
        if (row[i]) y[i] = (y[i] + mul_mod(x[j], row[i], p)) % p;
    }
    return y;
  };
  std::vector<std::vector<std::uint64_t>> echelon;
  std::vector<std::size_t> pivots;
  std::vector<std::vector<std::uint64_t>> queue;
  auto insert = [&](std::vector<std::uint64_t> x) {
    for (std::size_t b = 0; b < echelon.size(); ++b) {
      std::uint64_t c = x[pivots[b]];
      if (!c) continue;
      for (std::size_t i = 0; i < n; ++i)
        if (echelon[b][i]) x[i] = (x[i] + p - mul_mod(c, echelon[b][i], p)) % p;
    }
    std::size_t piv = 0;
    while (piv < n && !x[piv]) ++piv;
    if (piv == n) return;
    std::uint64_t inv = inv_mod(x[piv], p);
    for (auto& e : x) e = mul_mod(e, inv, p);
    echelon.push_back(x);
    pivots.push_back(piv);
    queue.push_back(std::move(x));
  };
  for (int v = 1; v <= kVars; ++v) {
    UPoly s = squarefree_part(minimal_polynomial(a.normal_form(), v));
    std::vector<std::uint64_t> x(n, 0);
    for (int d = s.degree(); d >= 0; --d) {
      x = apply(v - 1, x);
      auto c = reduce_mod(s[d], p);
      if (!c) throw std::runtime_error("radical_dimension_bound: eliminant denominator");
      x[0] = (x[0] + *c) % p;  // standard monomial 1 comes first
    }
    insert(std::move(x));
  }
  while (!queue.empty()) {
    auto x = std::move(queue.back());
    queue.pop_back();
    for (int v = 0; v < kVars; ++v) insert(apply(v, x));
  }
  return n - echelon.size();
}

/// All rational common zeros with a completeness certificate: certified when
/// the ideal is zero-dimensional and the distinct rational points found reach
/// the bound on distinct complex zeros.
inline SolveResult solve_rational(const std::vector<MultiPoly>& gens) {
  SolveResult res;
  GroebnerBasis gb = buchberger(gens, Order::GrevLex);
  ZeroDimInfo info = is_zero_dimensional(gb);
  res.certificate.zero_dimensional = info.zero_dimensional;
  if (!info.zero_dimensional) return res;
  res.certificate.D_with_multiplicity = info.D;
  if (gb.is_unit()) {
    res.certificate.certified = true;
    return res;
  }
  QuotientAlgebra a(gb);
  res.certificate.D = radical_dimension_bound(a);
  UPoly m = squarefree_part(minimal_polynomial(a.normal_form(), 1));
  std::vector<Rational> roots = rational_roots(m);
  UPoly rest = deflate(m, roots);
  if (rest.degree() > 0) res.certificate.residual_factors.push_back(rest);
  Point partial{};
  for (const auto& r : roots) {
    auto kernel = nullspace_multimodular(detail::shifted_matrix(a.mult(1), r), 256).basis;
    partial[0] = r;
    detail::split_branch(a, canonical_basis(kernel, a.dim()), 2, partial, res.points,
                         res.certificate.residual_factors);
  }
  for (const auto& p : res.points)
    for (const auto& g : gens)
      if (g.evaluate(p) != 0) throw std::logic_error("solve_rational: returned point is not a zero");
  std::sort(res.points.begin(), res.points.end());
  res.points.erase(std::unique(res.points.begin(), res.points.end()), res.points.end());
  res.certificate.found = res.points.size();
  res.certificate.certified = res.certificate.found == res.certificate.D;
  return res;
}

/// Fallback: checks that every candidate is a common zero and that the ideal
/// is zero-dimensional; certified when the candidates exhaust the radical's D.
inline SolveResult verify_points(const std::vector<MultiPoly>& gens, std::vector<Point> candidates) {
  SolveResult res;
  res.certificate.verification_mode = true;
  for (const auto& p : candidates)
    for (const auto& g : gens)
      if (g.evaluate(p) != 0) throw std::invalid_argument("verify_points: candidate is not a common zero");
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  GroebnerBasis gb = buchberger(gens, Order::GrevLex);
  ZeroDimInfo info = is_zero_dimensional(gb);
  res.certificate.zero_dimensional = info.zero_dimensional;
  res.certificate.D_with_multiplicity = info.D;
  if (info.zero_dimensional) res.certificate.D = gb.is_unit() ? 0 : radical_dimension_bound(QuotientAlgebra(gb));
  res.points = std::move(candidates);
  res.certificate.found = res.points.size();
  res.certificate.certified = info.zero_dimensional && res.certificate.found == res.certificate.D;
  return res;
}

/// For homogeneous generators: the common zero locus is the origin exactly
/// when the leading-term ideal contains a pure power of every variable.
inline bool origin_only(const std::vector<MultiPoly>& gens) {
  for (const auto& g : gens)
    if (!g.is_homogeneous()) throw std::invalid_argument("origin_only: generator is not homogeneous");
  return is_zero_dimensional(buchberger(gens, Order::GrevLex)).zero_dimensional;
}

}  // namespace qlisse::poly
