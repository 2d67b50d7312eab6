#pragma once

#include <array>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qlisse/liealg/weights.hpp"
#include "qlisse/ratcore/rational.hpp"

namespace qlisse::lie {

/// Sparse rational combination of the 28 basis generators.
class LieElement {
 public:
  using Term = std::pair<GeneratorIndex, Rational>;

  LieElement() = default;
  static LieElement basis(GeneratorIndex g, Rational c = 1) {
    LieElement x;
    if (c != 0) x.terms_.emplace_back(g, std::move(c));
    return x;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(GeneratorIndex g) const {
    for (const auto& [h, c] : terms_)
      if (h == g) return c;
    return 0;
  }

  void add(GeneratorIndex g, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.begin();
    while (it != terms_.end() && it->first < g) ++it;
    if (it != terms_.end() && it->first == g) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    } else {
      terms_.insert(it, {g, c});
    }
  }

  LieElement& operator+=(const LieElement& o) {
    for (const auto& [g, c] : o.terms_) add(g, c);
    return *this;
  }
  LieElement& operator-=(const LieElement& o) {
    for (const auto& [g, c] : o.terms_) add(g, -c);
    return *this;
  }
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& s, const LieElement& a) {
    LieElement r;
    if (s == 0) return r;
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.second *= s;
    return r;
  }
  friend bool operator==(const LieElement&, const LieElement&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [g, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += qlisse::to_string(c) + "*" + g.name();
    }
    return s;
  }

 private:
  std::vector<Term> terms_;
};

namespace detail {

// Clifford algebra on a_1..a_4 (indices 0..3) and a_1^*..a_4^* (4..7) with
// [a_i, a_j^*]_+ = delta_ij and all other anticommutators zero.
using CliffordWord = std::vector<int>;
using CliffordElement = std::map<CliffordWord, Rational>;

inline Rational clifford_anticommutator(int i, int j) {
  if ((i < 4 && j == i + 4) || (j < 4 && i == j + 4)) return 1;
  return 0;
}

inline void clifford_normal_order(const CliffordWord& w, const Rational& c, CliffordElement& out) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (w[k] < w[k + 1]) continue;
    if (w[k] == w[k + 1]) return;  // psi^2 = 0 for these generators
    CliffordWord swapped = w;
    std::swap(swapped[k], swapped[k + 1]);
    clifford_normal_order(swapped, -c, out);
    Rational g = clifford_anticommutator(w[k], w[k + 1]);
    if (g != 0) {
      CliffordWord shorter;
      for (std::size_t t = 0; t < w.size(); ++t)
        if (t != k && t != k + 1) shorter.push_back(w[t]);
      clifford_normal_order(shorter, c * g, out);
    }
    return;
  }
  auto& slot = out[w];
  slot += c;
  if (slot == 0) out.erase(w);
}

inline CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b) {
  CliffordElement out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      CliffordWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      clifford_normal_order(w, ca * cb, out);
    }
  return out;
}

/// Normal-ordered quadratic :xy: = (xy - yx)/2.
inline CliffordElement normal_quadratic(int x, int y) {
  CliffordElement out;
  clifford_normal_order({x, y}, make_rational(1, 2), out);
  clifford_normal_order({y, x}, make_rational(-1, 2), out);
  return out;
}

/// Fermionic bilinear realizing each generator (indices 1-based in comments):
/// e_{ei-ej} = :a_i a_j^*:, e_{ei+ej} = :a_i a_j:, f_{ei-ej} = :a_j a_i^*:,
/// f_{ei+ej} = :a_j^* a_i^*:, H_i = :a_i a_i^*:.
inline CliffordElement fermionic_generator(GeneratorIndex g) {
  auto star = [](int i) { return i + 4; };
  if (g.kind() == GenKind::H) {
    int i = g.cartan_index() - 1;
    return normal_quadratic(i, star(i));
  }
  const auto& r = positive_roots()[g.root_index()];
  int i = -1, j = -1;
  for (int t = 0; t < 4; ++t)
    if (r[t] != 0) (i < 0 ? i : j) = t;
  bool plus = r[j] > 0;
  if (g.kind() == GenKind::E) return plus ? normal_quadratic(i, j) : normal_quadratic(i, star(j));
  return plus ? normal_quadratic(star(j), star(i)) : normal_quadratic(j, star(i));
}

}  // namespace detail

/// Bracket and invariant-form tables on the generator basis.
struct StructureTable {
  std::array<std::array<LieElement, kDim>, kDim> bracket;
  std::array<std::array<Rational, kDim>, kDim> form;

  const LieElement& bracket_of(GeneratorIndex x, GeneratorIndex y) const { return bracket[x.value()][y.value()]; }
  const Rational& form_of(GeneratorIndex x, GeneratorIndex y) const { return form[x.value()][y.value()]; }

  LieElement bracket_of(const LieElement& x, const LieElement& y) const {
    LieElement out;
    for (const auto& [a, ca] : x.terms())
      for (const auto& [b, cb] : y.terms()) out += (ca * cb) * bracket_of(a, b);
    return out;
  }

  Rational inv_form(const LieElement& x, const LieElement& y) const {
    Rational out;
    for (const auto& [a, ca] : x.terms())
      for (const auto& [b, cb] : y.terms()) out += ca * cb * form_of(a, b);
    return out;
  }
};

/// Brackets come from expanding commutators of the fermionic bilinears; the
/// form is the Killing form divided by 2h^vee = 12, so that (theta|theta) = 2.
inline StructureTable build_d4() {
  std::array<detail::CliffordElement, kDim> realization;
  std::map<std::pair<int, int>, std::pair<GeneratorIndex, Rational>> by_word;
  for (int g = 0; g < kDim; ++g) {
    realization[g] = detail::fermionic_generator(GeneratorIndex(g));
    int quadratic_terms = 0;
    for (const auto& [w, c] : realization[g]) {
      if (w.size() != 2) continue;
      by_word[{w[0], w[1]}] = {GeneratorIndex(g), c};
      ++quadratic_terms;
    }
    if (quadratic_terms != 1) throw std::logic_error("build_d4: generator is not a single bilinear");
  }
  if (by_word.size() != kDim) throw std::logic_error("build_d4: bilinears are not a basis");

  auto decompose = [&](const detail::CliffordElement& q) {
    LieElement out;
    Rational constant;
    for (const auto& [w, c] : q) {
      if (w.empty()) {
        constant += c;
        continue;
      }
      if (w.size() != 2) throw std::logic_error("build_d4: bracket left the quadratic span");
      const auto& [g, gc] = by_word.at({w[0], w[1]});
      out.add(g, c / gc);
    }
    // the constant parts of the bilinears must account for the constant
    Rational expected;
    for (const auto& [g, c] : out.terms()) {
      auto it = realization[g.value()].find({});
      if (it != realization[g.value()].end()) expected += c * it->second;
    }
    if (expected != constant) throw std::logic_error("build_d4: central term in bracket");
    return out;
  };

  StructureTable t;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      auto ab = detail::clifford_mul(realization[a], realization[b]);
      auto ba = detail::clifford_mul(realization[b], realization[a]);
      for (const auto& [w, c] : ba) {
        auto& slot = ab[w];
        slot -= c;
        if (slot == 0) ab.erase(w);
      }
      t.bracket[a][b] = decompose(ab);
    }

  // Killing form tr(ad x ad y) / 12.
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      Rational tr;
      for (int z = 0; z < kDim; ++z) {
        // coefficient of z in [a, [b, z]]
        const LieElement& inner = t.bracket[b][z];
        for (const auto& [w, cw] : inner.terms()) tr += cw * t.bracket[a][w.value()].coeff(GeneratorIndex(z));
      }
      t.form[a][b] = tr / 12;
    }
  return t;
}

inline const StructureTable& d4() {
  static const StructureTable table = build_d4();
  return table;
}

inline Rational inv_form(const LieElement& x, const LieElement& y) { return d4().inv_form(x, y); }
inline LieElement bracket(const LieElement& x, const LieElement& y) { return d4().bracket_of(x, y); }

/// Simple coroot a_i^vee = [e_{a_i}, f_{a_i}] as an element of h.
inline LieElement simple_coroot(int i) {
  const auto& a = simple_roots()[i - 1];
  return d4().bracket_of(GeneratorIndex::e_of(a), GeneratorIndex::f_of(a));
}

/// Linear automorphism given by the images of the basis generators.
class Automorphism {
 public:
  Automorphism() {
    for (int g = 0; g < kDim; ++g) images_[g] = LieElement::basis(GeneratorIndex(g));
  }
  explicit Automorphism(std::array<LieElement, kDim> images) : images_(std::move(images)) {}

  const LieElement& operator()(GeneratorIndex g) const { return images_[g.value()]; }
  LieElement operator()(const LieElement& x) const {
    LieElement out;
    for (const auto& [g, c] : x.terms()) out += c * images_[g.value()];
    return out;
  }
  Automorphism then(const Automorphism& next) const {
    std::array<LieElement, kDim> imgs;
    for (int g = 0; g < kDim; ++g) imgs[g] = next(images_[g]);
    return Automorphism(std::move(imgs));
  }
  Automorphism power(int n) const {
    Automorphism r;
    for (int i = 0; i < n; ++i) r = r.then(*this);
    return r;
  }

  bool preserves_brackets() const {
    const auto& t = d4();
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b)
        if ((*this)(t.bracket[a][b]) != t.bracket_of(images_[a], images_[b])) return false;
    return true;
  }
  bool preserves_form() const {
    const auto& t = d4();
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b)
        if (t.form[a][b] != t.inv_form(images_[a], images_[b])) return false;
    return true;
  }
  friend bool operator==(const Automorphism&, const Automorphism&) = default;

 private:
  std::array<LieElement, kDim> images_;
};

namespace detail {

inline Automorphism build_triality() {
  const auto& t = d4();
  // a1 -> a3 -> a4 -> a1, a2 fixed
  const std::array<int, kRank> perm{2, 1, 3, 0};
  const auto& simple = simple_roots();
  std::array<LieElement, kDim> img;
  std::array<bool, kDim> done{};

  // sum of simple-root coefficients; non-simple roots are built as [e_{a_i}, e_b]
  auto height = [](const EpsVector& r) { return 3 * r[0] + 2 * r[1] + r[2]; };
  std::vector<int> order(kNumPositiveRoots);
  for (int k = 0; k < kNumPositiveRoots; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return height(positive_roots()[a]) < height(positive_roots()[b]);
  });

  for (int i = 0; i < kRank; ++i) {
    img[GeneratorIndex::e_of(simple[i]).value()] = LieElement::basis(GeneratorIndex::e_of(simple[perm[i]]));
    img[GeneratorIndex::f_of(simple[i]).value()] = LieElement::basis(GeneratorIndex::f_of(simple[perm[i]]));
    done[GeneratorIndex::e_of(simple[i]).value()] = done[GeneratorIndex::f_of(simple[i]).value()] = true;
  }
  for (int k : order) {
    const EpsVector& beta = positive_roots()[k];
    GeneratorIndex eb = GeneratorIndex::e(k), fb = GeneratorIndex::f(k);
    if (done[eb.value()]) continue;
    bool built = false;
    for (int i = 0; i < kRank && !built; ++i) {
      EpsVector rest = beta - simple[i];
      int rk = positive_root_index(rest);
      if (rk < 0 || !done[GeneratorIndex::e(rk).value()]) continue;
      GeneratorIndex ei = GeneratorIndex::e_of(simple[i]), fi = GeneratorIndex::f_of(simple[i]);
      Rational ne = t.bracket_of(ei, GeneratorIndex::e(rk)).coeff(eb);
      Rational nf = t.bracket_of(fi, GeneratorIndex::f(rk)).coeff(fb);
      if (ne == 0 || nf == 0) continue;
      img[eb.value()] = (1 / ne) * t.bracket_of(img[ei.value()], img[GeneratorIndex::e(rk).value()]);
      img[fb.value()] = (1 / nf) * t.bracket_of(img[fi.value()], img[GeneratorIndex::f(rk).value()]);
      done[eb.value()] = done[fb.value()] = true;
      built = true;
    }
    if (!built) throw std::logic_error("triality: cannot reach root");
  }

  // Cartan part: a_i^vee -> a_{perm(i)}^vee, then rewrite H_j in coroots.
  std::array<LieElement, kRank> coroot_img;
  for (int i = 0; i < kRank; ++i) coroot_img[i] = simple_coroot(perm[i] + 1);
  // H1 = c1+c2+(c3+c4)/2, H2 = c2+(c3+c4)/2, H3 = (c3+c4)/2, H4 = (c4-c3)/2
  const Rational h = make_rational(1, 2);
  const std::array<std::array<Rational, kRank>, kRank> h_in_coroots{{
      {Rational(1), Rational(1), h, h},
      {Rational(0), Rational(1), h, h},
      {Rational(0), Rational(0), h, h},
      {Rational(0), Rational(0), -h, h},
  }};
  for (int j = 0; j < kRank; ++j) {
    LieElement x;
    for (int i = 0; i < kRank; ++i) x += h_in_coroots[j][i] * coroot_img[i];
    img[GeneratorIndex::h(j + 1).value()] = x;
  }
  Automorphism sigma(std::move(img));
  if (!sigma.preserves_brackets()) throw std::logic_error("triality: lift is not a Lie automorphism");
  return sigma;
}

}  // namespace detail

/// Order-three diagram automorphism, fixed on Chevalley generators by
/// e_{a1} -> e_{a3} -> e_{a4} -> e_{a1}, e_{a2} fixed (same for f), and
/// extended to the remaining root vectors through brackets.
inline const Automorphism& triality() {
  static const Automorphism sigma = detail::build_triality();
  return sigma;
}

/// Deterministic text dump of the bracket and form tables, sorted by index pair.
inline std::string dump_structure_table(const StructureTable& t) {
  std::ostringstream os;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      const auto& br = t.bracket[a][b];
      if (!br.is_zero()) {
        os << "[g" << a << ",g" << b << "] =";
        for (const auto& [g, c] : br.terms()) os << " " << qlisse::to_string(c) << "*g" << g.value();
        os << "\n";
      }
      if (t.form[a][b] != 0) os << "(g" << a << "|g" << b << ") = " << qlisse::to_string(t.form[a][b]) << "\n";
    }
  return os.str();
}

}  // namespace qlisse::lie
