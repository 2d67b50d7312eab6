#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qlisse/polysolve/poly.hpp"

namespace qlisse::poly {

/// Reduced Groebner basis: monic, sorted by leading monomial ascending.
struct GroebnerBasis {
  Order order = Order::GrevLex;
  std::vector<MultiPoly> polys;

  bool is_unit() const { return polys.size() == 1 && polys[0].is_constant() && !polys[0].is_zero(); }
};

namespace detail {

using IntPoly = Poly<Integer>;

inline void make_primitive(IntPoly& f) {
  if (f.is_zero()) return;
  Integer g = 0;
  for (const auto& t : f.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
    if (g == 1) break;
  }
  if (f.lead_coeff() < 0) g = -g;
  if (g != 1)
    for (auto& t : f.mutable_terms()) mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), g.get_mpz_t());
}

/// Integer primitive associate of a rational polynomial, with the factor used.
inline IntPoly to_int(const MultiPoly& p, Rational* factor = nullptr) {
  Integer den = 1;
  for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
  std::vector<IntPoly::Term> ts;
  ts.reserve(p.size());
  for (const auto& [e, c] : p.terms()) ts.emplace_back(e, c.get_num() * (den / c.get_den()));
  IntPoly f(p.order());
  f.mutable_terms() = std::move(ts);
  Integer before = f.is_zero() ? Integer(1) : f.lead_coeff();
  make_primitive(f);
  if (factor) {
    // f = factor * p
    *factor = f.is_zero() ? Rational(1) : Rational(f.lead_coeff() * den, before);
    factor->canonicalize();
  }
  return f;
}

inline MultiPoly to_monic(const IntPoly& f) {
  MultiPoly p(f.order());
  if (f.is_zero()) return p;
  std::vector<MultiPoly::Term> ts;
  ts.reserve(f.size());
  for (const auto& [e, c] : f.terms()) {
    Rational q(c, f.lead_coeff());
    q.canonicalize();
    ts.emplace_back(e, std::move(q));
  }
  p.mutable_terms() = std::move(ts);
  return p;
}

/// Fraction-free reduction. On return f is the (primitive) reduced form and
/// *scale, when given, is multiplied by the net factor applied to f.
inline void reduce(IntPoly& f, const std::vector<const IntPoly*>& by, bool full, Rational* scale = nullptr) {
  std::size_t pos = 0;
  int since_content = 0;
  while (pos < f.size()) {
    const Exponent& t = f.terms()[pos].first;
    const IntPoly* g = nullptr;
    for (const IntPoly* cand : by)
      if (divides(cand->lead_exp(), t)) {
        g = cand;
        break;
      }
    if (!g) {
      if (!full) return;
      ++pos;
      continue;
    }
    Integer a = f.terms()[pos].second, b = g->lead_coeff();
    Integer d = gcd(a, b);
    Integer fa = b / d, gb = a / d;
    if (fa < 0) {
      fa = -fa;
      gb = -gb;
    }
    IntPoly scaled_f = fa == 1 ? f : f.scaled(fa);
    f = scaled_f - g->shifted(t - g->lead_exp(), gb);
    if (scale && fa != 1) *scale *= Rational(fa);
    if (++since_content >= 4) {
      since_content = 0;
      if (!f.is_zero()) {
        Integer c = 0;
        for (const auto& term : f.terms()) {
          mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), term.second.get_mpz_t());
          if (c == 1) break;
        }
        if (c != 1) {
          for (auto& term : f.mutable_terms()) mpz_divexact(term.second.get_mpz_t(), term.second.get_mpz_t(), c.get_mpz_t());
          if (scale) *scale /= Rational(c);
        }
      }
    }
  }
  if (!f.is_zero()) {
    Integer before = f.lead_coeff();
    make_primitive(f);
    if (scale) {
      Rational r(f.lead_coeff(), before);
      r.canonicalize();
      *scale *= r;
    }
  }
}

struct Pair {
  std::size_t i, j;
  Exponent lcm;
  int sugar;
};

}  // namespace detail

struct BuchbergerStats {
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t max_basis = 0;
};

/// Reduced Groebner basis by Buchberger's algorithm with the sugar strategy
/// and Gebauer-Moeller pair elimination; coefficients kept as primitive
/// integer polynomials throughout.
inline GroebnerBasis buchberger(const std::vector<MultiPoly>& gens, Order order, BuchbergerStats* stats = nullptr) {
  using detail::IntPoly;
  std::vector<IntPoly> basis;
  std::vector<int> sugar;
  std::vector<bool> live;
  std::vector<detail::Pair> pairs;

  auto live_ptrs = [&] {
    std::vector<const IntPoly*> v;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (live[i]) v.push_back(&basis[i]);
    return v;
  };

  auto insert = [&](IntPoly h, int s) {
    const Exponent& lh = h.lead_exp();
    std::size_t hi = basis.size();
    // candidate pairs (g, h)
    struct Cand {
      std::size_t g;
      Exponent l;
      bool coprime;
      bool keep = true;
    };
    std::vector<Cand> cands;
    for (std::size_t g = 0; g < basis.size(); ++g)
      if (live[g]) cands.push_back({g, lcm(basis[g].lead_exp(), lh), coprime(basis[g].lead_exp(), lh)});
    // chain criterion among the new pairs
    for (std::size_t a = 0; a < cands.size(); ++a) {
      if (cands[a].coprime) continue;
      for (std::size_t b = 0; b < cands.size(); ++b) {
        if (a == b || !cands[b].keep) continue;
        if (divides(cands[b].l, cands[a].l) && (cands[b].l != cands[a].l || b < a)) {
          cands[a].keep = false;
          break;
        }
      }
    }
    // old pairs killed by h
    std::vector<detail::Pair> kept;
    for (const auto& p : pairs) {
      bool drop = divides(lh, p.lcm) && lcm(basis[p.i].lead_exp(), lh) != p.lcm && lcm(basis[p.j].lead_exp(), lh) != p.lcm;
      if (!drop) kept.push_back(p);
    }
    pairs = std::move(kept);
    for (const auto& c : cands) {
      if (!c.keep || c.coprime) continue;
      int sg = std::max(sugar[c.g] + total_degree(c.l - basis[c.g].lead_exp()), s + total_degree(c.l - lh));
      pairs.push_back({c.g, hi, c.l, sg});
    }
    for (std::size_t g = 0; g < basis.size(); ++g)
      if (live[g] && divides(lh, basis[g].lead_exp())) live[g] = false;
    basis.push_back(std::move(h));
    sugar.push_back(s);
    live.push_back(true);
    if (stats) stats->max_basis = std::max(stats->max_basis, basis.size());
  };

  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    IntPoly f = detail::to_int(g.with_order(order));
    detail::reduce(f, live_ptrs(), true);
    if (f.is_zero()) continue;
    if (f.is_constant()) return {order, {MultiPoly::constant(1, order)}};
    insert(std::move(f), g.degree());
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const detail::Pair& a, const detail::Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return compare(a.lcm, b.lcm, order) < 0;
    });
    detail::Pair p = *best;
    pairs.erase(best);
    const IntPoly& f = basis[p.i];
    const IntPoly& g = basis[p.j];
    Integer d = gcd(f.lead_coeff(), g.lead_coeff());
    IntPoly s = f.shifted(p.lcm - f.lead_exp(), g.lead_coeff() / d) - g.shifted(p.lcm - g.lead_exp(), f.lead_coeff() / d);
    detail::reduce(s, live_ptrs(), true);
    if (stats) ++stats->pairs_reduced;
    if (s.is_zero()) {
      if (stats) ++stats->zero_reductions;
      continue;
    }
    if (s.is_constant()) return {order, {MultiPoly::constant(1, order)}};
    insert(std::move(s), p.sugar);
  }

  // minimal basis, then inter-reduce
  std::vector<IntPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (live[i]) minimal.push_back(basis[i]);
  std::sort(minimal.begin(), minimal.end(),
            [&](const IntPoly& a, const IntPoly& b) { return compare(a.lead_exp(), b.lead_exp(), order) < 0; });
  GroebnerBasis out{order, {}};
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const IntPoly*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    IntPoly f = minimal[i];
    // the leading term is irreducible by the others; reduce the tail only
    IntPoly tail(order);
    tail.mutable_terms().assign(f.terms().begin() + 1, f.terms().end());
    Rational scale = 1;
    detail::reduce(tail, others, true, &scale);
    // f_reduced = lead + tail/scale
    MultiPoly r(order);
    std::vector<MultiPoly::Term> ts;
    ts.emplace_back(f.lead_exp(), Rational(1));
    for (const auto& [e, c] : tail.terms()) {
      Rational q = Rational(c) / scale / Rational(f.lead_coeff());
      ts.emplace_back(e, q);
    }
    r.mutable_terms() = std::move(ts);
    out.polys.push_back(std::move(r));
  }
  return out;
}

/// Remainder of f modulo the basis (unique for a Groebner basis).
inline MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& gb) {
  using detail::IntPoly;
  if (f.is_zero()) return f.with_order(gb.order);
  std::vector<IntPoly> ints;
  for (const auto& g : gb.polys) ints.push_back(detail::to_int(g));
  std::vector<const IntPoly*> ptrs;
  for (const auto& g : ints) ptrs.push_back(&g);
  Rational factor;
  IntPoly h = detail::to_int(f.with_order(gb.order), &factor);
  detail::reduce(h, ptrs, true, &factor);
  MultiPoly r(gb.order);
  std::vector<MultiPoly::Term> ts;
  for (const auto& [e, c] : h.terms()) ts.emplace_back(e, Rational(c) / factor);
  r.mutable_terms() = std::move(ts);
  return r;
}

inline bool reduces_to_zero(const MultiPoly& f, const GroebnerBasis& gb) { return normal_form(f, gb).is_zero(); }

/// S-polynomial of two rational polynomials.
inline MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  Exponent l = lcm(f.lead_exp(), g.lead_exp());
  return f.shifted(l - f.lead_exp(), 1 / f.lead_coeff()) - g.shifted(l - g.lead_exp(), 1 / g.lead_coeff());
}

/// Checks the Groebner property directly: every S-polynomial reduces to zero.
inline bool is_groebner(const GroebnerBasis& gb) {
  for (std::size_t i = 0; i < gb.polys.size(); ++i)
    for (std::size_t j = i + 1; j < gb.polys.size(); ++j)
      if (!reduces_to_zero(s_polynomial(gb.polys[i], gb.polys[j]), gb)) return false;
  return true;
}

struct ZeroDimInfo {
  bool zero_dimensional = false;
  std::size_t D = 0;
  std::vector<Exponent> standard;  // ascending in the basis order
};

/// Pure powers of every variable among the leading monomials; D counts the
/// standard monomials.
inline ZeroDimInfo is_zero_dimensional(const GroebnerBasis& gb) {
  ZeroDimInfo info;
  if (gb.is_unit()) {
    info.zero_dimensional = true;
    return info;
  }
  std::array<int, kVars> bound{};
  for (int v = 0; v < kVars; ++v) {
    bound[v] = -1;
    for (const auto& g : gb.polys) {
      const Exponent& e = g.lead_exp();
      bool pure = true;
      for (int w = 0; w < kVars; ++w)
        if (w != v && e[w]) pure = false;
      if (pure && e[v] > 0 && (bound[v] < 0 || e[v] < bound[v])) bound[v] = e[v];
    }
    if (bound[v] < 0) return info;
  }
  info.zero_dimensional = true;
  Exponent e{};
  for (e[0] = 0; e[0] < bound[0]; ++e[0])
    for (e[1] = 0; e[1] < bound[1]; ++e[1])
      for (e[2] = 0; e[2] < bound[2]; ++e[2])
        for (e[3] = 0; e[3] < bound[3]; ++e[3]) {
          bool standard = true;
          for (const auto& g : gb.polys)
            if (divides(g.lead_exp(), e)) {
              standard = false;
              break;
            }
          if (standard) info.standard.push_back(e);
        }
  std::sort(info.standard.begin(), info.standard.end(),
            [&](const Exponent& a, const Exponent& b) { return compare(a, b, gb.order) < 0; });
  info.D = info.standard.size();
  return info;
}

}  // namespace qlisse::poly
