#pragma once

#include <array>
#include <fstream>
#include <istream>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlisse/ratcore/nullspace.hpp"
#include "qlisse/vertex/pbw.hpp"

namespace qlisse::sing {

using va::ModeEngine;
using va::PBWMonomial;
using va::VAConfig;
using va::VAElement;
using lie::GeneratorIndex;
using lie::WeightOmega;

/// e_{a_i}(0) for the four simple roots, then f_theta(1).
inline std::vector<std::pair<GeneratorIndex, int>> singular_conditions() {
  std::vector<std::pair<GeneratorIndex, int>> c;
  for (const auto& a : lie::simple_roots()) c.emplace_back(GeneratorIndex::e_of(a), 0);
  c.emplace_back(GeneratorIndex::f_of(lie::highest_root()), 1);
  return c;
}

struct ConstraintSystem {
  int degree = 0;
  WeightOmega weight{};
  std::vector<PBWMonomial> basis;
  /// one row per (condition, target monomial); conditions in order, targets sorted
  SparseMat matrix;
};

inline ConstraintSystem build_constraints(ModeEngine& engine, int d, const WeightOmega& lambda) {
  ConstraintSystem sys;
  sys.degree = d;
  sys.weight = lambda;
  sys.basis = va::enumerate_weight_space(d, lambda);
  sys.matrix = SparseMat(sys.basis.size());
  for (const auto& [x, n] : singular_conditions()) {
    std::map<PBWMonomial, std::vector<SparseVec::Entry>> rows;
    for (std::size_t col = 0; col < sys.basis.size(); ++col) {
      const VAElement& img = engine.apply(x, n, sys.basis[col]);
      for (const auto& [m, c] : img) rows[m].emplace_back(col, c);
    }
    for (auto& [m, entries] : rows) sys.matrix.add_row(SparseVec::from_entries(std::move(entries)));
  }
  return sys;
}

inline ConstraintSystem build_constraints(const VAConfig& cfg, int d, const WeightOmega& lambda) {
  ModeEngine engine(cfg);
  return build_constraints(engine, d, lambda);
}

/// All five conditions vanish exactly.
inline bool annihilated(ModeEngine& engine, const VAElement& v) {
  for (const auto& [x, n] : singular_conditions())
    if (!engine.apply(x, n, v).empty()) return false;
  return true;
}

inline bool verify_singular(const VAElement& v, const VAConfig& cfg) {
  if (v.empty()) return false;
  ModeEngine engine(cfg);
  try {
    (void)va::affine_weight(v, cfg);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return annihilated(engine, v);
}

/// Also checks that the affine weight is k Lambda_0 - d delta + lambda.
inline bool verify_singular(const VAElement& v, const VAConfig& cfg, int d, const WeightOmega& lambda) {
  if (!verify_singular(v, cfg)) return false;
  auto w = va::affine_weight(v, cfg);
  return w.level == cfg.k && w.delta == -d && w.finite == lambda;
}

struct SolveOptions {
  /// systems with at most this many columns are solved by exact elimination
  std::size_t exact_column_limit = 300;
  std::size_t max_primes = 256;
};

struct SingularResult {
  std::vector<VAElement> vectors;
  std::size_t columns = 0;
  std::size_t rows = 0;
  std::size_t primes_used = 0;
};

inline VAElement to_element(const SparseVec& x, const std::vector<PBWMonomial>& basis) {
  VAElement v;
  for (const auto& [i, c] : x.entries()) v.emplace(basis[i], c);
  return v;
}

/// Nullspace basis of the constraint system, each vector normalized to
/// integer coefficients with content 1 and positive leading coefficient.
inline SingularResult find_singular(ModeEngine& engine, int d, const WeightOmega& lambda, SolveOptions opt = {}) {
  ConstraintSystem sys = build_constraints(engine, d, lambda);
  SingularResult res;
  res.columns = sys.basis.size();
  res.rows = sys.matrix.nrows();
  std::vector<SparseVec> basis;
  if (sys.basis.size() <= opt.exact_column_limit) {
    basis = nullspace_exact(sys.matrix);
  } else {
    auto rep = nullspace_multimodular(sys.matrix, opt.max_primes);
    basis = std::move(rep.basis);
    res.primes_used = rep.primes_used;
  }
  for (const auto& x : basis) {
    VAElement v = to_element(x.normalized(), sys.basis);
    if (!annihilated(engine, v)) throw std::logic_error("find_singular: nullspace vector is not singular");
    res.vectors.push_back(std::move(v));
  }
  return res;
}

inline SingularResult find_singular(const VAConfig& cfg, int d, const WeightOmega& lambda, SolveOptions opt = {}) {
  ModeEngine engine(cfg);
  return find_singular(engine, d, lambda, opt);
}

/// Scales v to integer coefficients, content 1, leading coefficient positive.
inline VAElement normalize(const VAElement& v) {
  std::vector<SparseVec::Entry> e;
  std::vector<PBWMonomial> order;
  for (const auto& [m, c] : v) {
    e.emplace_back(order.size(), c);
    order.push_back(m);
  }
  return to_element(SparseVec::from_entries(std::move(e)).normalized(), order);
}

/// (v, sigma(v), sigma^2(v)); each image re-verified.
inline std::array<VAElement, 3> sigma_orbit(const VAElement& v, ModeEngine& engine) {
  std::array<VAElement, 3> out{v, va::apply_sigma(v, engine, 1), va::apply_sigma(v, engine, 2)};
  for (const auto& x : out)
    if (x.empty() || !annihilated(engine, x)) throw std::runtime_error("sigma_orbit: image is not singular");
  return out;
}

inline std::array<VAElement, 3> sigma_orbit(const VAElement& v, const VAConfig& cfg) {
  ModeEngine engine(cfg);
  return sigma_orbit(v, engine);
}

// ---- cache file -----------------------------------------------------------

struct SingvecFile {
  Rational k;
  int degree = 0;
  WeightOmega weight{};
  VAElement vector;
};

inline void write_singvec(std::ostream& os, const SingvecFile& f) {
  os << "singvec v1 algebra=D4 k=" << qlisse::to_string(f.k) << " degree=" << f.degree
     << " weight=" << lie::to_string(f.weight) << " order=depth-desc,genidx-asc\n";
  for (const auto& [m, c] : f.vector) {
    os << qlisse::to_string(c);
    if (!m.is_vacuum()) os << ' ' << m.str();
    os << '\n';
  }
  os << "count=" << f.vector.size() << '\n';
}

namespace detail {

inline std::string header_field(const std::string& line, const std::string& key) {
  std::istringstream is(line);
  std::string tok;
  while (is >> tok)
    if (tok.rfind(key + "=", 0) == 0) return tok.substr(key.size() + 1);
  throw std::runtime_error("singvec: missing header field " + key);
}

inline PBWMonomial parse_factors(std::istringstream& is) {
  std::vector<va::Factor> fs;
  std::string tok;
  while (is >> tok) {
    int g = 0, n = 0, e = 0;
    char tail = 0;
    if (std::sscanf(tok.c_str(), "g%d(-%d)^%d%c", &g, &n, &e, &tail) != 3 || g < 0 || g >= lie::kDim || n < 1 ||
        n > 255 || e < 1)
      throw std::runtime_error("singvec: bad factor token " + tok);
    for (int i = 0; i < e; ++i) fs.push_back({static_cast<std::uint8_t>(n), static_cast<std::uint8_t>(g)});
  }
  auto sorted = PBWMonomial::from_factors(fs);
  if (sorted.factors() != fs) throw std::runtime_error("singvec: factors not in canonical order");
  return sorted;
}

}  // namespace detail

/// Parses the cache format; throws std::runtime_error on malformed input.
inline SingvecFile read_singvec(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("singvec v1 algebra=D4 ", 0) != 0)
    throw std::runtime_error("singvec: bad header");
  if (detail::header_field(line, "order") != "depth-desc,genidx-asc") throw std::runtime_error("singvec: unknown order");
  SingvecFile f;
  f.k = parse_rational(detail::header_field(line, "k"));
  f.degree = std::stoi(detail::header_field(line, "degree"));
  {
    std::string w = detail::header_field(line, "weight");
    std::istringstream ws(w);
    std::string part;
    int i = 0;
    while (std::getline(ws, part, ',')) {
      if (i >= 4) throw std::runtime_error("singvec: bad weight");
      f.weight[i++] = parse_rational(part);
    }
    if (i != 4) throw std::runtime_error("singvec: bad weight");
  }
  bool counted = false;
  const PBWMonomial* prev = nullptr;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("count=", 0) == 0) {
      if (std::stoul(line.substr(6)) != f.vector.size()) throw std::runtime_error("singvec: count mismatch");
      counted = true;
      break;
    }
    std::istringstream ls(line);
    std::string coeff;
    ls >> coeff;
    Rational c = parse_rational(coeff);
    if (c == 0) throw std::runtime_error("singvec: zero coefficient");
    PBWMonomial m = detail::parse_factors(ls);
    if (prev && !(*prev < m)) throw std::runtime_error("singvec: lines not sorted");
    auto [it, fresh] = f.vector.emplace(std::move(m), c);
    prev = &it->first;
  }
  if (!counted) throw std::runtime_error("singvec: missing count line");
  return f;
}

inline void save_singvec(const std::string& path, const SingvecFile& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_singvec(os, f);
}

inline SingvecFile load_singvec(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  return read_singvec(is);
}

}  // namespace qlisse::sing
