#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qlisse/liealg/d4.hpp"
#include "qlisse/ratcore/rational.hpp"

namespace qlisse::va {

using lie::EpsVector;
using lie::GeneratorIndex;
using lie::LieElement;
using lie::WeightOmega;
using lie::operator+;
using lie::operator-;

/// Level data. k_m = -6 + 4/(2m+1).
struct VAConfig {
  Rational k;
  int m = -1;  // -1 when k was given directly

  static VAConfig from_level(Rational k) {
    if (k == -6) throw std::invalid_argument("VAConfig: critical level k = -6");
    return {std::move(k), -1};
  }
  static VAConfig from_m(int m) {
    if (m < 0) throw std::invalid_argument("VAConfig: m must be nonnegative");
    VAConfig c = from_level(Rational(-6) + make_rational(4, 2 * m + 1));
    c.m = m;
    return c;
  }
  /// Degree 2(2m+1) of the expected singular vector.
  int singular_degree() const {
    if (m < 0) throw std::logic_error("VAConfig: degree is tied to m");
    return 2 * (2 * m + 1);
  }
};

/// One factor x(-depth).
struct Factor {
  std::uint8_t depth = 1;
  std::uint8_t gen = 0;
  friend bool operator==(Factor, Factor) = default;
};

/// Canonical factor order: depth descending, then generator index ascending.
inline bool factor_before(Factor a, Factor b) {
  return a.depth != b.depth ? a.depth > b.depth : a.gen < b.gen;
}

/// x_1(-n_1) ... x_r(-n_r) 1 with factors in canonical order.
class PBWMonomial {
 public:
  PBWMonomial() = default;

  /// Sorts arbitrary factors into canonical order.
  static PBWMonomial from_factors(std::vector<Factor> fs) {
    for (auto f : fs)
      if (f.depth < 1 || f.gen >= lie::kDim) throw std::invalid_argument("PBWMonomial: bad factor");
    std::sort(fs.begin(), fs.end(), factor_before);
    PBWMonomial m;
    m.f_ = std::move(fs);
    return m;
  }

  const std::vector<Factor>& factors() const { return f_; }
  bool is_vacuum() const { return f_.empty(); }
  std::size_t size() const { return f_.size(); }

  int degree() const {
    int d = 0;
    for (auto f : f_) d += f.depth;
    return d;
  }
  EpsVector weight() const {
    EpsVector w{0, 0, 0, 0};
    for (auto f : f_) w = w + GeneratorIndex(f.gen).weight();
    return w;
  }

  PBWMonomial tail() const {
    PBWMonomial t;
    t.f_.assign(f_.begin() + 1, f_.end());
    return t;
  }
  PBWMonomial prepended(Factor x) const {
    PBWMonomial t;
    t.f_.reserve(f_.size() + 1);
    t.f_.push_back(x);
    t.f_.insert(t.f_.end(), f_.begin(), f_.end());
    return t;
  }

  /// Factor tokens g<idx>(-<n>)^<e>, space separated; "1" for the vacuum.
  std::string str() const {
    if (f_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < f_.size();) {
      std::size_t j = i;
      while (j < f_.size() && f_[j] == f_[i]) ++j;
      if (!s.empty()) s += ' ';
      s += "g" + std::to_string(f_[i].gen) + "(-" + std::to_string(f_[i].depth) + ")^" + std::to_string(j - i);
      i = j;
    }
    return s;
  }

  friend bool operator==(const PBWMonomial&, const PBWMonomial&) = default;
  friend bool operator<(const PBWMonomial& a, const PBWMonomial& b) {
    return std::lexicographical_compare(a.f_.begin(), a.f_.end(), b.f_.begin(), b.f_.end(), factor_before);
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto f : f_) h = (h ^ (static_cast<std::size_t>(f.depth) << 8 | f.gen)) * 1099511628211ull;
    return h;
  }

 private:
  std::vector<Factor> f_;
};

struct PBWHash {
  std::size_t operator()(const PBWMonomial& m) const { return m.hash(); }
};

using VAElement = std::map<PBWMonomial, Rational>;

inline void add_term(VAElement& v, const PBWMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = v.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

inline void add_scaled(VAElement& acc, const VAElement& v, const Rational& c) {
  if (c == 0) return;
  for (const auto& [m, x] : v) add_term(acc, m, x * c);
}

inline VAElement vacuum() { return {{PBWMonomial(), Rational(1)}}; }

/// Mode action on the PBW basis with memoization per (x, n, monomial).
class ModeEngine {
 public:
  explicit ModeEngine(VAConfig cfg) : cfg_(std::move(cfg)), table_(lie::d4()) {}

  const VAConfig& config() const { return cfg_; }

  /// x(n) applied to one basis monomial.
  const VAElement& apply(GeneratorIndex x, int n, const PBWMonomial& w) {
    Key key{static_cast<std::uint8_t>(x.value()), n, w};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    VAElement r = compute(x, n, w);
    return cache_.emplace(std::move(key), std::move(r)).first->second;
  }

  VAElement apply(GeneratorIndex x, int n, const VAElement& v) {
    VAElement out;
    for (const auto& [m, c] : v) add_scaled(out, apply(x, n, m), c);
    return out;
  }

  VAElement apply(const LieElement& x, int n, const VAElement& v) {
    VAElement out;
    for (const auto& [g, c] : x.terms()) add_scaled(out, apply(g, n, v), c);
    return out;
  }

  std::size_t cache_size() const { return cache_.size(); }
  void clear_cache() { cache_.clear(); }

 private:
  struct Key {
    std::uint8_t gen;
    int n;
    PBWMonomial w;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.w.hash() * 31 + (static_cast<std::size_t>(k.gen) << 16) + static_cast<std::size_t>(k.n + 1024);
    }
  };

  VAElement compute(GeneratorIndex x, int n, const PBWMonomial& w) {
    VAElement out;
    if (w.is_vacuum()) {
      if (n < 0) out.emplace(PBWMonomial::from_factors({Factor{static_cast<std::uint8_t>(-n), static_cast<std::uint8_t>(x.value())}}), 1);
      return out;
    }
    Factor head = w.factors().front();
    if (n < 0) {
      Factor mine{static_cast<std::uint8_t>(-n), static_cast<std::uint8_t>(x.value())};
      if (!factor_before(head, mine)) {
        out.emplace(w.prepended(mine), 1);
        return out;
      }
    }
    // x(n) y(-a) W' = y(-a) x(n) W' + [x,y](n-a) W' + n delta_{n,a} k (x|y) W'
    GeneratorIndex y(head.gen);
    int a = head.depth;
    PBWMonomial rest = w.tail();
    const VAElement& inner = apply(x, n, rest);
    for (const auto& [m, c] : inner) add_scaled(out, apply(y, -a, m), c);
    const LieElement& br = table_.bracket_of(x, y);
    for (const auto& [z, c] : br.terms()) add_scaled(out, apply(z, n - a, rest), c);
    if (n == a) {
      Rational central = Rational(n) * cfg_.k * table_.form_of(x, y);
      add_term(out, rest, central);
    }
    return out;
  }

  VAConfig cfg_;
  const lie::StructureTable& table_;
  std::unordered_map<Key, VAElement, KeyHash> cache_;
};

/// x(n) v without a persistent cache.
inline VAElement apply_mode(GeneratorIndex x, int n, const VAElement& v, const VAConfig& cfg) {
  ModeEngine e(cfg);
  return e.apply(x, n, v);
}

inline VAElement apply_mode(const LieElement& x, int n, const VAElement& v, const VAConfig& cfg) {
  ModeEngine e(cfg);
  return e.apply(x, n, v);
}

/// All PBW monomials of conformal degree d and g-weight lambda, sorted.
inline std::vector<PBWMonomial> enumerate_weight_space(int d, const WeightOmega& lambda) {
  std::vector<PBWMonomial> out;
  if (d < 0) return out;
  lie::WeightEps l = lie::omega_to_eps(lambda);
  EpsVector target{};
  for (int i = 0; i < 4; ++i) {
    if (!is_integer(l[i])) return out;
    target[i] = static_cast<int>(l[i].get_num().get_si());
  }
  // factors in canonical order; each next factor comes at or after the previous
  std::vector<Factor> all;
  for (int depth = d; depth >= 1; --depth)
    for (int g = 0; g < lie::kDim; ++g) all.push_back({static_cast<std::uint8_t>(depth), static_cast<std::uint8_t>(g)});
  std::vector<EpsVector> wt(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) wt[i] = GeneratorIndex(all[i].gen).weight();

  std::vector<Factor> cur;
  std::function<void(std::size_t, int, EpsVector)> rec = [&](std::size_t start, int remaining, EpsVector need) {
    if (remaining == 0) {
      if (need == EpsVector{0, 0, 0, 0}) out.push_back(PBWMonomial::from_factors(cur));
      return;
    }
    int l1 = 0;
    for (int v : need) {
      if (std::abs(v) > remaining) return;
      l1 += std::abs(v);
    }
    if (l1 > 2 * remaining) return;
    for (std::size_t i = start; i < all.size(); ++i) {
      int depth = all[i].depth;
      if (depth > remaining) continue;
      cur.push_back(all[i]);
      rec(i, remaining - depth, need - wt[i]);
      cur.pop_back();
    }
  };
  rec(0, d, target);
  std::sort(out.begin(), out.end());
  return out;
}

/// sigma applied factor-wise: sigma(y_1)(-a_1) ... sigma(y_r)(-a_r) 1.
inline VAElement apply_sigma(const VAElement& v, ModeEngine& engine, int power = 1) {
  lie::Automorphism s = lie::triality().power(((power % 3) + 3) % 3);
  VAElement out;
  for (const auto& [m, c] : v) {
    VAElement cur = vacuum();
    const auto& fs = m.factors();
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) cur = engine.apply(s(GeneratorIndex(it->gen)), -it->depth, cur);
    add_scaled(out, cur, c);
  }
  return out;
}

inline VAElement apply_sigma(const VAElement& v, const VAConfig& cfg, int power = 1) {
  ModeEngine e(cfg);
  return apply_sigma(v, e, power);
}

/// k Lambda_0 - d delta + lambda for a homogeneous element.
inline lie::AffineWeight affine_weight(const VAElement& v, const VAConfig& cfg) {
  if (v.empty()) throw std::invalid_argument("affine_weight: zero element");
  const PBWMonomial& first = v.begin()->first;
  int d = first.degree();
  EpsVector w = first.weight();
  for (const auto& [m, c] : v)
    if (m.degree() != d || m.weight() != w) throw std::invalid_argument("affine_weight: inhomogeneous element");
  return {cfg.k, Rational(-d), lie::eps_to_omega(w)};
}

}  // namespace qlisse::va
