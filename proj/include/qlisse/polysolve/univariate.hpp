#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qlisse/ratcore/modular.hpp"
#include "qlisse/ratcore/rational.hpp"

namespace qlisse::poly {

/// Dense univariate polynomial over Q, coefficients low degree first, no
/// trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static UPoly x_minus(const Rational& r) { return UPoly({-r, Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& lead() const { return c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
    return UPoly(std::move(d));
  }
  UPoly monic() const {
    if (c_.empty()) return *this;
    std::vector<Rational> d = c_;
    Rational l = lead();
    for (auto& x : d) x /= l;
    return UPoly(std::move(d));
  }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly&, const UPoly&) = default;

  /// Quotient and remainder.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("UPoly: division by zero");
    std::vector<Rational> rem = a.c_, quo;
    int db = b.degree();
    if (a.degree() >= db) quo.resize(a.degree() - db + 1);
    for (int i = a.degree(); i >= db; --i) {
      Rational q = rem[i] / b.lead();
      if (q == 0) continue;
      quo[i - db] = q;
      for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c_[j];
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }

  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UPoly squarefree_part(const UPoly& f) {
  if (f.degree() <= 0) return f.monic();
  return UPoly::divmod(f, UPoly::gcd(f, f.derivative())).first.monic();
}

namespace detail {

/// Integer coefficients with content 1.
inline std::vector<Integer> integer_coeffs(const UPoly& f) {
  Integer den = 1, content = 0;
  for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  for (const auto& c : f.coeffs()) out.push_back(c.get_num() * (den / c.get_den()));
  for (const auto& c : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  for (auto& c : out) c /= content;
  return out;
}

inline Integer eval_mod(const std::vector<Integer>& f, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = (acc * x + *it) % m;
  }
  if (acc < 0) acc += m;
  return acc;
}

}  // namespace detail

/// All rational roots of f, ascending. Works modulo a small prime where the
/// roots are simple, lifts each by Newton iteration and keeps the exact ones.
inline std::vector<Rational> rational_roots(const UPoly& f) {
  std::vector<Rational> roots;
  if (f.degree() <= 0) return roots;
  UPoly g = squarefree_part(f);
  if (g[0] == 0) {
    roots.push_back(0);
    g = UPoly::divmod(g, UPoly::x_minus(0)).first;
  }
  if (g.degree() <= 0) return roots;
  std::vector<Integer> z = detail::integer_coeffs(g);
  std::vector<Integer> dz;
  for (std::size_t i = 1; i < z.size(); ++i) dz.push_back(z[i] * static_cast<unsigned long>(i));
  Integer bound = abs(z.front()) > abs(z.back()) ? Integer(abs(z.front())) : Integer(abs(z.back()));
  Integer need = 2 * bound * bound + 1;

  for (std::uint64_t p = 1009;; p += 2) {
    if (!is_prime_u64(p)) continue;
    Integer P(static_cast<unsigned long>(p));
    if (z.back() % P == 0) continue;
    std::vector<std::uint64_t> modroots;
    bool simple = true;
    for (std::uint64_t r = 0; r < p && simple; ++r) {
      Integer R(static_cast<unsigned long>(r));
      if (detail::eval_mod(z, R, P) != 0) continue;
      if (detail::eval_mod(dz, R, P) == 0) simple = false;
      modroots.push_back(r);
    }
    if (!simple) continue;
    for (std::uint64_t r0 : modroots) {
      Integer m = P, r(static_cast<unsigned long>(r0));
      while (m < need) {
        m *= m;
        Integer fr = detail::eval_mod(z, r, m), dr = detail::eval_mod(dz, r, m), inv;
        if (mpz_invert(inv.get_mpz_t(), dr.get_mpz_t(), m.get_mpz_t()) == 0) break;
        r = (r - fr * inv) % m;
        if (r < 0) r += m;
      }
      auto q = rational_reconstruct(r, m);
      if (q && g(*q) == 0) roots.push_back(*q);
    }
    break;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// f divided by prod (x - r) over the given roots; exact.
inline UPoly deflate(const UPoly& f, const std::vector<Rational>& roots) {
  UPoly g = squarefree_part(f);
  for (const auto& r : roots) {
    auto [q, rem] = UPoly::divmod(g, UPoly::x_minus(r));
    if (!rem.is_zero()) throw std::logic_error("deflate: not a root");
    g = q;
  }
  return g;
}

}  // namespace qlisse::poly
