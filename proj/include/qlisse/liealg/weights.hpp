#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "qlisse/ratcore/rational.hpp"

namespace qlisse::lie {

inline constexpr int kRank = 4;
inline constexpr int kNumPositiveRoots = 12;
inline constexpr int kDim = 28;

/// Integer coordinates in the basis e1..e4 of h^* dual to H1..H4.
using EpsVector = std::array<int, 4>;

inline EpsVector operator+(const EpsVector& a, const EpsVector& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline EpsVector operator-(const EpsVector& a, const EpsVector& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline EpsVector operator-(const EpsVector& a) { return {-a[0], -a[1], -a[2], -a[3]}; }

/// Positive roots e_i +- e_j (i < j), ascending lexicographic order of their
/// coordinate vectors. This order fixes the generator numbering.
inline const std::array<EpsVector, kNumPositiveRoots>& positive_roots() {
  static const std::array<EpsVector, kNumPositiveRoots> roots = [] {
    std::array<EpsVector, kNumPositiveRoots> r{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int s : {1, -1}) {
          EpsVector v{0, 0, 0, 0};
          v[i] = 1;
          v[j] = s;
          r[k++] = v;
        }
    std::sort(r.begin(), r.end());
    return r;
  }();
  return roots;
}

/// Index of a positive root, or -1.
inline int positive_root_index(const EpsVector& v) {
  const auto& r = positive_roots();
  for (int k = 0; k < kNumPositiveRoots; ++k)
    if (r[k] == v) return k;
  return -1;
}

inline bool is_root(const EpsVector& v) { return positive_root_index(v) >= 0 || positive_root_index(-v) >= 0; }

inline EpsVector eps_root(int i, int j, int sign) {
  EpsVector v{0, 0, 0, 0};
  v[i - 1] = 1;
  v[j - 1] = sign;
  return v;
}

/// Simple roots a1 = e1-e2, a2 = e2-e3, a3 = e3-e4, a4 = e3+e4.
inline const std::array<EpsVector, kRank>& simple_roots() {
  static const std::array<EpsVector, kRank> s{eps_root(1, 2, -1), eps_root(2, 3, -1), eps_root(3, 4, -1),
                                              eps_root(3, 4, 1)};
  return s;
}

inline const EpsVector& highest_root() {
  static const EpsVector theta = eps_root(1, 2, 1);
  return theta;
}

enum class GenKind : std::uint8_t { F, H, E };

/// Dense numbering of the 28 basis elements: f-vectors 0..11 (positive root
/// order), H1..H4 at 12..15, e-vectors 16..27.
class GeneratorIndex {
 public:
  constexpr GeneratorIndex() = default;
  constexpr explicit GeneratorIndex(int v) : v_(static_cast<std::uint8_t>(v)) {
    if (v < 0 || v >= kDim) throw std::out_of_range("GeneratorIndex");
  }
  static constexpr GeneratorIndex f(int root) { return GeneratorIndex(root); }
  static constexpr GeneratorIndex h(int i) { return GeneratorIndex(kNumPositiveRoots + i - 1); }
  static constexpr GeneratorIndex e(int root) { return GeneratorIndex(kNumPositiveRoots + kRank + root); }

  static GeneratorIndex e_of(const EpsVector& root) { return e(checked_root(root)); }
  static GeneratorIndex f_of(const EpsVector& root) { return f(checked_root(root)); }

  constexpr int value() const { return v_; }
  constexpr GenKind kind() const {
    return v_ < kNumPositiveRoots ? GenKind::F : v_ < kNumPositiveRoots + kRank ? GenKind::H : GenKind::E;
  }
  /// Position of the underlying positive root (F and E only).
  constexpr int root_index() const {
    return kind() == GenKind::F ? v_ : kind() == GenKind::E ? v_ - kNumPositiveRoots - kRank : -1;
  }
  /// 1-based Cartan index (H only).
  constexpr int cartan_index() const { return kind() == GenKind::H ? v_ - kNumPositiveRoots + 1 : 0; }

  EpsVector weight() const {
    switch (kind()) {
      case GenKind::F: return -positive_roots()[root_index()];
      case GenKind::E: return positive_roots()[root_index()];
      default: return {0, 0, 0, 0};
    }
  }

  std::string name() const {
    if (kind() == GenKind::H) return "H" + std::to_string(cartan_index());
    const auto& r = positive_roots()[root_index()];
    std::string s = kind() == GenKind::E ? "e[" : "f[";
    bool first = true;
    for (int i = 0; i < 4; ++i) {
      if (r[i] == 0) continue;
      if (!first) s += r[i] > 0 ? "+" : "-";
      else if (r[i] < 0) s += "-";
      s += "e" + std::to_string(i + 1);
      first = false;
    }
    return s + "]";
  }

  friend constexpr auto operator<=>(GeneratorIndex, GeneratorIndex) = default;

 private:
  static int checked_root(const EpsVector& root) {
    int k = positive_root_index(root);
    if (k < 0) throw std::invalid_argument("not a positive root");
    return k;
  }
  std::uint8_t v_ = 0;
};

/// Weight in fundamental-weight coordinates: sum c_i w_i, c_i = <mu, a_i^vee>.
using WeightOmega = std::array<Rational, kRank>;
/// Weight in e-coordinates (rational for half-spin weights).
using WeightEps = std::array<Rational, kRank>;

/// w1 = e1, w2 = e1+e2, w3 = (e1+e2+e3-e4)/2, w4 = (e1+e2+e3+e4)/2.
inline WeightEps omega_to_eps(const WeightOmega& c) {
  Rational half = make_rational(1, 2);
  Rational spin = (c[2] + c[3]) * half;
  return {c[0] + c[1] + spin, c[1] + spin, spin, (c[3] - c[2]) * half};
}

inline WeightOmega eps_to_omega(const WeightEps& l) {
  return {l[0] - l[1], l[1] - l[2], l[2] - l[3], l[2] + l[3]};
}

inline WeightOmega eps_to_omega(const EpsVector& v) {
  return eps_to_omega(WeightEps{Rational(v[0]), Rational(v[1]), Rational(v[2]), Rational(v[3])});
}

inline bool is_dominant_integral(const WeightOmega& w) {
  for (const auto& c : w)
    if (!is_integer(c) || c < 0) return false;
  return true;
}

/// Triality on weights: w1 -> w3 -> w4 -> w1, w2 fixed.
inline WeightOmega sigma_weight(const WeightOmega& c) { return {c[3], c[1], c[0], c[2]}; }

struct AffineWeight {
  Rational level;  // coefficient of Lambda_0
  Rational delta;  // coefficient of delta
  WeightOmega finite;
  friend bool operator==(const AffineWeight&, const AffineWeight&) = default;
};

inline std::string to_string(const WeightOmega& w) {
  return qlisse::to_string(w[0]) + "," + qlisse::to_string(w[1]) + "," + qlisse::to_string(w[2]) + "," + qlisse::to_string(w[3]);
}

}  // namespace qlisse::lie
