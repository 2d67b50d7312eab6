#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlisse/zhu/zhu.hpp"

namespace qlisse::c2 {

using lie::GeneratorIndex;
using lie::LieElement;
using poly::HPolynomial;
using va::VAElement;

/// Commutative monomial over the 28 generator variables, stored as a sorted
/// multiset of generator indices.
using SymMonomial = std::vector<std::uint8_t>;
using SymElement = std::map<SymMonomial, Rational>;

inline void add_term(SymElement& s, SymMonomial m, const Rational& c) {
  if (c == 0) return;
  std::sort(m.begin(), m.end());
  auto [it, fresh] = s.try_emplace(std::move(m), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) s.erase(it);
  }
}

/// Depth-one factors become variables; anything deeper lies in C2 and maps to 0.
inline SymElement c2_project(const VAElement& v) {
  SymElement out;
  for (const auto& [m, c] : v) {
    SymMonomial w;
    bool deep = false;
    for (const auto& f : m.factors()) {
      if (f.depth != 1) {
        deep = true;
        break;
      }
      w.push_back(f.gen);
    }
    if (!deep) add_term(out, std::move(w), c);
  }
  return out;
}

/// The derivation of S(g) extending ad(x).
inline SymElement poisson_ad(GeneratorIndex x, const SymElement& s) {
  const auto& t = lie::d4();
  SymElement out;
  for (const auto& [m, c] : s) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i > 0 && m[i] == m[i - 1]) continue;
      std::size_t mult = 1;
      while (i + mult < m.size() && m[i + mult] == m[i]) ++mult;
      for (const auto& [z, b] : t.bracket_of(x, GeneratorIndex(m[i])).terms()) {
        SymMonomial r = m;
        r[i] = static_cast<std::uint8_t>(z.value());
        add_term(out, std::move(r), c * b * Rational(static_cast<long>(mult)));
      }
      i += mult - 1;
    }
  }
  return out;
}

inline SymElement poisson_ad(const LieElement& x, const SymElement& s) {
  SymElement out;
  for (const auto& [g, c] : x.terms())
    for (const auto& [m, a] : poisson_ad(g, s)) add_term(out, m, a * c);
  return out;
}

/// Keeps pure Cartan monomials, in h-coordinates. Zero weight is asserted.
inline HPolynomial chevalley_project(const SymElement& s) {
  HPolynomial out;
  for (const auto& [m, c] : s) {
    lie::EpsVector w{0, 0, 0, 0};
    bool cartan = true;
    for (auto g : m) {
      GeneratorIndex x(g);
      w = lie::operator+(w, x.weight());
      cartan = cartan && x.kind() == lie::GenKind::H;
    }
    if (w != lie::EpsVector{0, 0, 0, 0}) throw std::invalid_argument("chevalley_project: input has nonzero weight");
    if (!cartan) continue;
    HPolynomial t = HPolynomial::constant(c);
    for (auto g : m) t = t * zhu::cartan_in_h()[GeneratorIndex(g).cartan_index() - 1];
    out = out + t;
  }
  return out;
}

/// Psi of pad(f_{e1-ej}) pad(f_{e1+ej}) vpp, lowering operators moved by sigma^power.
inline HPolynomial extract_q(const SymElement& vpp, int j, int power = 0) {
  if (j < 2 || j > 4) throw std::out_of_range("extract_q: j must be 2, 3 or 4");
  return chevalley_project(poisson_ad(zhu::lowering(1, j, -1, power), poisson_ad(zhu::lowering(1, j, 1, power), vpp)));
}

/// q1..q9 with the scale fixed by the p-normalization. Each is homogeneous of
/// the conformal degree of v.
inline zhu::PolynomialSet full_q_system(const std::array<VAElement, 3>& orbit, const Rational& scale) {
  zhu::PolynomialSet set;
  set.scale = scale;
  std::array<HPolynomial, 3> base;
  int degree = orbit[0].empty() ? 0 : orbit[0].begin()->first.degree();
  for (int s = 0; s < 3; ++s) {
    SymElement vpp = c2_project(orbit[s]);
    for (int j = 2; j <= 4; ++j) {
      HPolynomial q = extract_q(vpp, j, s).scaled(scale).with_order(poly::Order::GrevLex);
      if (!q.is_zero() && (!q.is_homogeneous() || q.degree() != degree))
        throw std::runtime_error("full_q_system: q is not homogeneous of the singular degree");
      if (s == 0) base[j - 2] = q;
      else if (q != zhu::sigma_permute(base[j - 2], s))
        throw std::runtime_error("full_q_system: sigma image disagrees with permuted polynomial");
      set.polys.push_back({"q" + std::to_string(3 * s + j - 1), q});
    }
  }
  return set;
}

/// Common zero locus of homogeneous generators is the origin.
inline bool nilpotent_cone_check(const zhu::PolynomialSet& qs) { return poly::origin_only(qs.list()); }

}  // namespace qlisse::c2
