#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qlisse/liealg/d4.hpp"
#include "qlisse/polysolve/solve.hpp"
#include "qlisse/singular/singular.hpp"
#include "qlisse/vertex/pbw.hpp"

namespace qlisse::zhu {

using lie::GeneratorIndex;
using lie::LieElement;
using lie::WeightOmega;
using poly::HPolynomial;
using va::ModeEngine;
using va::PBWMonomial;
using va::VAElement;

/// PBW word in U(g): generator indices ascending, so f-block, H-block, e-block.
using Word = std::vector<std::uint8_t>;
using UEAElement = std::map<Word, Rational>;

inline void add_term(UEAElement& u, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = u.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) u.erase(it);
  }
}

inline void add_scaled(UEAElement& acc, const UEAElement& u, const Rational& c) {
  for (const auto& [w, x] : u) add_term(acc, w, x * c);
}

inline UEAElement one() { return {{Word{}, Rational(1)}}; }

inline UEAElement from_lie(const LieElement& x) {
  UEAElement u;
  for (const auto& [g, c] : x.terms()) add_term(u, Word{static_cast<std::uint8_t>(g.value())}, c);
  return u;
}

inline std::string str(const UEAElement& u) {
  if (u.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : u) {
    if (!s.empty()) s += " + ";
    s += qlisse::to_string(c);
    for (auto g : w) s += "*" + GeneratorIndex(g).name();
  }
  return s;
}

/// PBW straightening in U(g) with memoized left multiplication by generators.
class UEAlgebra {
 public:
  UEAlgebra() : table_(lie::d4()) {}

  /// x * w, re-expressed in PBW order.
  const UEAElement& left_mul(GeneratorIndex x, const Word& w) {
    Key key{static_cast<std::uint8_t>(x.value()), w};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    UEAElement r = compute(x, w);
    return cache_.emplace(std::move(key), std::move(r)).first->second;
  }

  UEAElement left_mul(GeneratorIndex x, const UEAElement& u) {
    UEAElement out;
    for (const auto& [w, c] : u) add_scaled(out, left_mul(x, w), c);
    return out;
  }

  UEAElement left_mul(const LieElement& x, const UEAElement& u) {
    UEAElement out;
    for (const auto& [g, c] : x.terms()) add_scaled(out, left_mul(g, u), c);
    return out;
  }

  /// w * u for a word w.
  UEAElement mul(const Word& w, UEAElement u) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) u = left_mul(GeneratorIndex(*it), u);
    return u;
  }

  UEAElement mul(const UEAElement& a, const UEAElement& b) {
    UEAElement out;
    for (const auto& [w, c] : a) add_scaled(out, mul(w, b), c);
    return out;
  }

  UEAElement right_mul(const UEAElement& u, const LieElement& x) { return mul(u, from_lie(x)); }

  /// ad(x) u = x u - u x, applied as a derivation over the letters of each word.
  UEAElement adjoint_act(GeneratorIndex x, const UEAElement& u) {
    UEAElement out;
    for (const auto& [w, c] : u) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && w[i] == w[i - 1]) continue;
        std::size_t mult = 1;
        while (i + mult < w.size() && w[i + mult] == w[i]) ++mult;
        const LieElement& br = table_.bracket_of(x, GeneratorIndex(w[i]));
        if (br.is_zero()) continue;
        // the run of equal letters contributes mult copies of prefix [x,y] y^(mult-1) suffix
        Word prefix(w.begin(), w.begin() + static_cast<long>(i));
        Word rest(w.begin() + static_cast<long>(i + 1), w.end());
        UEAElement tail = left_mul(br, UEAElement{{rest, Rational(1)}});
        add_scaled(out, mul(prefix, tail), c);
        for (std::size_t k = 1; k < mult; ++k) {
          // y^k [x,y] y^(mult-1-k) suffix
          Word inner(w.begin() + static_cast<long>(i + k + 1), w.end());
          UEAElement t = left_mul(br, UEAElement{{inner, Rational(1)}});
          Word before(w.begin(), w.begin() + static_cast<long>(i + k));
          add_scaled(out, mul(before, t), c);
        }
        i += mult - 1;
      }
    }
    return out;
  }

  UEAElement adjoint_act(const LieElement& x, const UEAElement& u) {
    UEAElement out;
    for (const auto& [g, c] : x.terms()) add_scaled(out, adjoint_act(g, u), c);
    return out;
  }

  std::size_t cache_size() const { return cache_.size(); }

 private:
  struct Key {
    std::uint8_t gen;
    Word w;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = 1469598103934665603ull ^ k.gen;
      for (auto g : k.w) h = (h ^ g) * 1099511628211ull;
      return h;
    }
  };

  UEAElement compute(GeneratorIndex x, const Word& w) {
    auto g = static_cast<std::uint8_t>(x.value());
    if (w.empty() || g <= w.front()) {
      Word r;
      r.reserve(w.size() + 1);
      r.push_back(g);
      r.insert(r.end(), w.begin(), w.end());
      return {{r, Rational(1)}};
    }
    // x y W = y (x W) + [x,y] W
    GeneratorIndex y(w.front());
    Word rest(w.begin() + 1, w.end());
    UEAElement out;
    for (const auto& [v, c] : UEAElement(left_mul(x, rest))) add_scaled(out, left_mul(y, v), c);
    for (const auto& [z, c] : table_.bracket_of(x, y).terms()) add_scaled(out, left_mul(z, rest), c);
    return out;
  }

  const lie::StructureTable& table_;
  std::unordered_map<Key, UEAElement, KeyHash> cache_;
};

/// The projection V^k(g) -> U(g):
/// F(1) = 1, F(a(-n-1) w) = (-1)^n (a F(w) - F(a(0) w)).
class ZhuProjector {
 public:
  ZhuProjector(ModeEngine& engine, UEAlgebra& uea) : engine_(engine), uea_(uea) {}

  const UEAElement& operator()(const PBWMonomial& m) {
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    UEAElement r;
    if (m.is_vacuum()) {
      r = one();
    } else {
      va::Factor head = m.factors().front();
      GeneratorIndex a(head.gen);
      PBWMonomial rest = m.tail();
      r = uea_.left_mul(a, UEAElement((*this)(rest)));
      add_scaled(r, (*this)(VAElement(engine_.apply(a, 0, rest))), Rational(-1));
      if ((head.depth - 1) % 2 == 1)
        for (auto& [w, c] : r) c = -c;
    }
    return memo_.emplace(m, std::move(r)).first->second;
  }

  UEAElement operator()(const VAElement& v) {
    UEAElement out;
    for (const auto& [m, c] : v) add_scaled(out, (*this)(m), c);
    return out;
  }

 private:
  ModeEngine& engine_;
  UEAlgebra& uea_;
  std::map<PBWMonomial, UEAElement> memo_;
};

inline UEAElement zhu_project(const VAElement& v, const va::VAConfig& cfg) {
  ModeEngine engine(cfg);
  UEAlgebra uea;
  ZhuProjector f(engine, uea);
  return f(v);
}

inline UEAElement adjoint_act(const LieElement& x, const UEAElement& u) {
  UEAlgebra uea;
  return uea.adjoint_act(x, u);
}

/// H_j as a linear form in h1..h4 (coordinates along the simple coroots).
inline const std::array<HPolynomial, lie::kRank>& cartan_in_h() {
  static const std::array<HPolynomial, lie::kRank> forms = [] {
    std::array<HPolynomial, lie::kRank> out;
    for (int i = 0; i < lie::kRank; ++i) {
      WeightOmega w{};
      w[i] = 1;
      lie::WeightEps e = lie::omega_to_eps(w);
      for (int j = 0; j < lie::kRank; ++j) out[j] = out[j] + HPolynomial::variable(i + 1).scaled(e[j]);
    }
    return out;
  }();
  return forms;
}

/// Drops words with an e-factor; what remains must lie in U(h).
inline HPolynomial hc_project(const UEAElement& u) {
  HPolynomial out;
  for (const auto& [w, c] : u) {
    bool has_e = false, has_f = false;
    for (auto g : w) {
      auto k = GeneratorIndex(g).kind();
      has_e = has_e || k == lie::GenKind::E;
      has_f = has_f || k == lie::GenKind::F;
    }
    if (has_e) continue;
    if (has_f) throw std::invalid_argument("hc_project: input has nonzero weight");
    HPolynomial t = HPolynomial::constant(c);
    for (auto g : w) t = t * cartan_in_h()[GeneratorIndex(g).cartan_index() - 1];
    out = out + t;
  }
  return out;
}

/// sigma^power(f_{e_i + sign e_j}).
inline LieElement lowering(int i, int j, int sign, int power = 0) {
  LieElement f = LieElement::basis(GeneratorIndex::f_of(lie::eps_root(i, j, sign)));
  return lie::triality().power(((power % 3) + 3) % 3)(f);
}

/// hc of ad(f_{e1-ej}) ad(f_{e1+ej}) vp, with both lowering operators moved
/// by sigma^power (use power s for the projection of sigma^s(v)).
inline HPolynomial lowered_projection(UEAlgebra& uea, const UEAElement& vp, int j, int power = 0) {
  return hc_project(uea.adjoint_act(lowering(1, j, -1, power), uea.adjoint_act(lowering(1, j, 1, power), vp)));
}

/// The three zero-weight projections of a singular vector of weight 2 w1:
/// which = 1 uses j = 2, which = 2 is j = 4 minus j = 3, which = 3 is j = 2 minus j = 3.
inline HPolynomial extract_p(UEAlgebra& uea, const UEAElement& vp, int which, int power = 0) {
  switch (which) {
    case 1: return lowered_projection(uea, vp, 2, power);
    case 2: return lowered_projection(uea, vp, 4, power) - lowered_projection(uea, vp, 3, power);
    case 3: return lowered_projection(uea, vp, 2, power) - lowered_projection(uea, vp, 3, power);
    default: throw std::out_of_range("extract_p: which must be 1, 2 or 3");
  }
}

inline HPolynomial extract_p(const UEAElement& vp, int which, int power = 0) {
  UEAlgebra uea;
  return extract_p(uea, vp, which, power);
}

/// h_i -> h_{sigma(i)}: h1 -> h3 -> h4 -> h1, h2 fixed.
inline constexpr std::array<int, poly::kVars> kSigmaPerm{2, 1, 3, 0};

inline HPolynomial sigma_permute(const HPolynomial& p, int power = 1) {
  HPolynomial r = p;
  for (int i = 0; i < ((power % 3) + 3) % 3; ++i) r = r.permuted(kSigmaPerm);
  return r;
}

struct LabeledPoly {
  std::string label;
  HPolynomial p;
};

struct PolynomialSet {
  std::vector<LabeledPoly> polys;
  /// v was multiplied by this before extraction
  Rational scale = 1;

  std::vector<HPolynomial> list() const {
    std::vector<HPolynomial> out;
    for (const auto& x : polys) out.push_back(x.p);
    return out;
  }
};

/// Scalar making p primitive integral with positive grevlex leading coefficient.
inline Rational normalizing_scale(const HPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("normalizing_scale: zero polynomial");
  HPolynomial q = poly::primitive_part(p.with_order(poly::Order::GrevLex));
  return q.lead_coeff() / p.with_order(poly::Order::GrevLex).lead_coeff();
}

/// Dimension of the span of the given polynomials.
inline std::size_t span_dimension(const std::vector<HPolynomial>& ps) {
  std::map<poly::Exponent, std::size_t> cols;
  for (const auto& p : ps)
    for (const auto& [e, c] : p.terms()) cols.try_emplace(e, cols.size());
  std::vector<std::vector<Rational>> a;
  for (const auto& p : ps) {
    std::vector<Rational> row(cols.size());
    for (const auto& [e, c] : p.terms()) row[cols[e]] = c;
    a.push_back(row);
  }
  return qlisse::detail::rref_dense(a, cols.size()).size();
}

/// p1..p9 from a verified sigma-orbit. The sigma-images are extracted directly
/// and must agree with the variable permutation of p1..p3.
inline PolynomialSet full_polynomial_system(const std::array<VAElement, 3>& orbit, const va::VAConfig& cfg) {
  ModeEngine engine(cfg);
  UEAlgebra uea;
  ZhuProjector zhu(engine, uea);
  PolynomialSet set;
  std::array<HPolynomial, 3> base;
  for (int s = 0; s < 3; ++s) {
    UEAElement vp = zhu(orbit[s]);
    std::array<HPolynomial, 3> ps{extract_p(uea, vp, 1, s), extract_p(uea, vp, 2, s), extract_p(uea, vp, 3, s)};
    if (s == 0) {
      base = ps;
      set.scale = normalizing_scale(ps[0]);
    }
    for (int i = 0; i < 3; ++i) {
      HPolynomial p = ps[i].scaled(set.scale);
      if (s > 0 && p != sigma_permute(base[i].scaled(set.scale), s))
        throw std::runtime_error("full_polynomial_system: sigma image disagrees with permuted polynomial");
      set.polys.push_back({"p" + std::to_string(3 * s + i + 1), p.with_order(poly::Order::GrevLex)});
    }
  }
  if (span_dimension({set.polys[0].p, set.polys[1].p, set.polys[2].p}) != 3)
    throw std::runtime_error("full_polynomial_system: p1, p2, p3 are linearly dependent");
  return set;
}

struct Classification {
  std::vector<WeightOmega> weights;  // lexicographic
  std::vector<WeightOmega> dominant_integral;
  poly::CompletenessCertificate certificate;
};

inline Classification classify(const PolynomialSet& ps) {
  auto gens = ps.list();
  poly::SolveResult r = poly::solve_rational(gens);
  Classification c;
  c.certificate = r.certificate;
  for (const auto& pt : r.points) {
    WeightOmega w{pt[0], pt[1], pt[2], pt[3]};
    for (const auto& g : gens)
      if (g.evaluate(pt) != 0) throw std::logic_error("classify: weight does not annihilate the system");
    c.weights.push_back(w);
    if (lie::is_dominant_integral(w)) c.dominant_integral.push_back(w);
  }
  return c;
}

}  // namespace qlisse::zhu
