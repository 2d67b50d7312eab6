#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlisse/ratcore/rational.hpp"

namespace qlisse::poly {

inline constexpr int kVars = 4;

enum class Order : std::uint8_t { Lex, GrevLex };

using Exponent = std::array<std::uint16_t, kVars>;

inline int total_degree(const Exponent& e) { return e[0] + e[1] + e[2] + e[3]; }

inline Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent r;
  for (int i = 0; i < kVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
  return r;
}

/// a - b; caller guarantees b divides a.
inline Exponent operator-(const Exponent& a, const Exponent& b) {
  Exponent r;
  for (int i = 0; i < kVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return r;
}

inline bool divides(const Exponent& a, const Exponent& b) {
  for (int i = 0; i < kVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r;
  for (int i = 0; i < kVars; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool coprime(const Exponent& a, const Exponent& b) {
  for (int i = 0; i < kVars; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

/// Three-way comparison, positive when a > b. Variables h1 > h2 > h3 > h4.
inline int compare(const Exponent& a, const Exponent& b, Order o) {
  if (o == Order::GrevLex) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (int i = kVars - 1; i >= 0; --i)
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
  }
  for (int i = 0; i < kVars; ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

/// Sparse polynomial in h1..h4 with terms sorted descending under its order.
template <class Coeff>
class Poly {
 public:
  using Term = std::pair<Exponent, Coeff>;

  Poly() = default;
  explicit Poly(Order o) : order_(o) {}

  static Poly constant(Coeff c, Order o = Order::GrevLex) {
    Poly p(o);
    if (c != 0) p.terms_.emplace_back(Exponent{}, std::move(c));
    return p;
  }
  static Poly monomial(const Exponent& e, Coeff c, Order o = Order::GrevLex) {
    Poly p(o);
    if (c != 0) p.terms_.emplace_back(e, std::move(c));
    return p;
  }
  /// h_i, 1-based.
  static Poly variable(int i, Order o = Order::GrevLex) {
    if (i < 1 || i > kVars) throw std::out_of_range("variable index");
    Exponent e{};
    e[i - 1] = 1;
    return monomial(e, Coeff(1), o);
  }
  /// Collects unsorted terms; duplicates summed, zeros dropped.
  static Poly from_terms(std::vector<Term> ts, Order o = Order::GrevLex) {
    std::sort(ts.begin(), ts.end(), [o](const Term& a, const Term& b) { return compare(a.first, b.first, o) > 0; });
    Poly p(o);
    for (auto& t : ts) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
        if (p.terms_.back().second == 0) p.terms_.pop_back();
      } else if (t.second != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  Order order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Term>& mutable_terms() { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Exponent& lead_exp() const { return terms_.front().first; }
  const Coeff& lead_coeff() const { return terms_.front().second; }

  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, total_degree(t.first));
    return d;
  }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (total_degree(t.first) != total_degree(terms_.front().first)) return false;
    return true;
  }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Exponent{}); }

  Coeff coeff(const Exponent& e) const {
    for (const auto& t : terms_)
      if (t.first == e) return t.second;
    return Coeff(0);
  }

  Poly with_order(Order o) const {
    if (o == order_) return *this;
    return from_terms(terms_, o);
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, Coeff(1)); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, Coeff(-1)); }
  Poly operator-() const { return scaled(Coeff(-1)); }
  friend Poly operator*(const Coeff& s, const Poly& p) { return p.scaled(s); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    std::vector<Term> ts;
    ts.reserve(a.size() * b.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) ts.emplace_back(ea + eb, ca * cb);
    return from_terms(std::move(ts), a.order_);
  }

  Poly scaled(const Coeff& s) const {
    Poly r(order_);
    if (s == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.second *= s;
    return r;
  }

  /// c * x^e * this (order preserved by monotonicity).
  Poly shifted(const Exponent& e, const Coeff& c) const {
    Poly r(order_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [x, a] : terms_) r.terms_.emplace_back(x + e, a * c);
    return r;
  }

  Poly pow(unsigned n) const {
    Poly r = constant(Coeff(1), order_);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  template <class Value>
  Value evaluate(const std::array<Value, kVars>& x) const {
    Value acc = 0;
    for (const auto& [e, c] : terms_) {
      Value t = c;
      for (int i = 0; i < kVars; ++i)
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      acc += t;
    }
    return acc;
  }

  /// Renames variables: h_i becomes h_{perm[i]} (0-based indices).
  Poly permuted(const std::array<int, kVars>& perm) const {
    std::vector<Term> ts;
    for (const auto& [e, c] : terms_) {
      Exponent f{};
      for (int i = 0; i < kVars; ++i) f[perm[i]] = e[i];
      ts.emplace_back(f, c);
    }
    return from_terms(std::move(ts), order_);
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

 private:
  static Poly combine(const Poly& a, const Poly& b, const Coeff& sb) {
    if (a.order_ != b.order_) return combine(a, b.with_order(a.order_), sb);
    Poly r(a.order_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : compare(a.terms_[i].first, b.terms_[j].first, a.order_);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.emplace_back(b.terms_[j].first, b.terms_[j].second * sb);
        ++j;
      } else {
        Coeff s = a.terms_[i].second + b.terms_[j].second * sb;
        if (s != 0) r.terms_.emplace_back(a.terms_[i].first, std::move(s));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
  Order order_ = Order::GrevLex;
};

using MultiPoly = Poly<Rational>;
using HPolynomial = MultiPoly;

/// Scales to integer coefficients with content 1 and positive leading coefficient.
inline MultiPoly primitive_part(const MultiPoly& p) {
  if (p.is_zero()) return p;
  Integer den = 1, content = 0;
  for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
  for (const auto& t : p.terms()) {
    Integer n = t.second.get_num() * (den / t.second.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
  }
  Rational s(den, content);
  s.canonicalize();
  if (p.lead_coeff() < 0) s = -s;
  return p.scaled(s);
}

inline MultiPoly monic(const MultiPoly& p) { return p.is_zero() ? p : p.scaled(1 / p.lead_coeff()); }

// ---- text format -------------------------------------------------------

/// One term per line: <num>/<den>*h1^a*h2^b*h3^c*h4^d, grevlex descending.
inline std::string to_text(const MultiPoly& p) {
  MultiPoly q = p.with_order(Order::GrevLex);
  std::string s;
  for (const auto& [e, c] : q.terms()) {
    s += qlisse::to_string(c);
    for (int i = 0; i < kVars; ++i) s += "*h" + std::to_string(i + 1) + "^" + std::to_string(e[i]);
    s += '\n';
  }
  return s;
}

inline MultiPoly parse_text(std::string_view text) {
  std::vector<MultiPoly::Term> ts;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::size_t star = line.find('*');
    Rational c = parse_rational(line.substr(0, star));
    Exponent e{};
    std::array<bool, kVars> seen{};
    while (star != std::string::npos) {
      std::size_t next = line.find('*', star + 1);
      std::string factor = line.substr(star + 1, next == std::string::npos ? std::string::npos : next - star - 1);
      if (factor.size() < 2 || factor[0] != 'h') throw std::invalid_argument("parse_text: bad factor " + factor);
      int var = factor[1] - '0';
      if (var < 1 || var > kVars || seen[var - 1]) throw std::invalid_argument("parse_text: bad variable " + factor);
      seen[var - 1] = true;
      unsigned long pw = 1;
      if (factor.size() > 2) {
        if (factor[2] != '^') throw std::invalid_argument("parse_text: bad factor " + factor);
        pw = std::stoul(factor.substr(3));
      }
      e[var - 1] = static_cast<std::uint16_t>(pw);
      star = next;
    }
    ts.emplace_back(e, c);
  }
  return MultiPoly::from_terms(std::move(ts), Order::GrevLex);
}

/// Human-readable form, for diagnostics only.
inline std::string pretty(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : p.terms()) {
    if (!s.empty()) s += " + ";
    s += qlisse::to_string(c);
    for (int i = 0; i < kVars; ++i)
      if (e[i]) s += "*h" + std::to_string(i + 1) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
  }
  return s;
}

}  // namespace qlisse::poly
