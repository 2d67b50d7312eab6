#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "qlisse/zhu/zhu.hpp"
#include "support/oracles.hpp"

using namespace qlisse;
using namespace qlisse::zhu;
using lie::GeneratorIndex;

namespace {

GeneratorIndex E(int i, int j, int s) { return GeneratorIndex::e_of(lie::eps_root(i, j, s)); }
GeneratorIndex F(int i, int j, int s) { return GeneratorIndex::f_of(lie::eps_root(i, j, s)); }
std::uint8_t id(GeneratorIndex g) { return static_cast<std::uint8_t>(g.value()); }

VAElement gen_state(GeneratorIndex g, int depth) {
  return {{va::PBWMonomial::from_factors({va::Factor{static_cast<std::uint8_t>(depth), id(g)}}), Rational(1)}};
}

HPolynomial h(int i) { return HPolynomial::variable(i); }

poly::MultiPoly load(const std::string& name) {
  std::ifstream is(std::string(QLISSE_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << is.rdbuf();
  return poly::parse_text(ss.str());
}

using oracle::verma_eigenvalue;

}  // namespace

TEST(ZhuProject, Examples) {
  auto cfg = va::VAConfig::from_m(1);
  auto x = F(1, 2, -1);
  EXPECT_EQ(zhu_project(gen_state(x, 1), cfg), (UEAElement{{Word{id(x)}, Rational(1)}}));
  EXPECT_EQ(zhu_project(gen_state(x, 2), cfg), (UEAElement{{Word{id(x)}, Rational(-1)}}));
  EXPECT_EQ(zhu_project(gen_state(x, 3), cfg), (UEAElement{{Word{id(x)}, Rational(1)}}));
  EXPECT_EQ(zhu_project(va::vacuum(), cfg), one());
  // e(-1) f(-1) 1 -> f e
  auto e = E(1, 2, -1), f = F(1, 2, -1);
  VAElement ef = va::apply_mode(e, -1, gen_state(f, 1), cfg);
  EXPECT_EQ(zhu_project(ef, cfg), (UEAElement{{Word{id(f), id(e)}, Rational(1)}}));
}

TEST(ZhuProject, WellDefinedOnZhuIdeal) {
  auto cfg = va::VAConfig::from_m(1);
  va::ModeEngine engine(cfg);
  UEAlgebra uea;
  ZhuProjector zp(engine, uea);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> gen(0, lie::kDim - 1), depth(1, 3);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    std::vector<va::Factor> fs;
    int budget = 1 + static_cast<int>(rng() % 3);
    while (budget > 0) {
      int d = std::min(depth(rng), budget);
      fs.push_back({static_cast<std::uint8_t>(d), static_cast<std::uint8_t>(gen(rng))});
      budget -= d;
    }
    VAElement b{{va::PBWMonomial::from_factors(fs), Rational(1)}};
    GeneratorIndex a(gen(rng));
    VAElement rel = engine.apply(a, -2, b);
    va::add_scaled(rel, engine.apply(a, -1, b), 1);
    EXPECT_TRUE(zp(rel).empty()) << "trial " << trial;
    ++checked;
  }
  EXPECT_EQ(checked, 120);
}

TEST(Adjoint, Examples) {
  UEAlgebra uea;
  auto e = E(1, 2, -1), f = F(1, 2, -1);
  UEAElement ue{{Word{id(e)}, Rational(1)}};
  EXPECT_EQ(uea.adjoint_act(GeneratorIndex::h(1), ue), ue);
  EXPECT_TRUE(uea.adjoint_act(e, one()).empty());
  UEAElement uf{{Word{id(f)}, Rational(1)}};
  EXPECT_EQ(uea.adjoint_act(e, uf), from_lie(lie::bracket(LieElement::basis(e), LieElement::basis(f))));
}

TEST(Adjoint, MatchesCommutator) {
  UEAlgebra uea;
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> gen(0, lie::kDim - 1);
  for (int trial = 0; trial < 60; ++trial) {
    UEAElement u = one();
    int len = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < len; ++i) u = uea.left_mul(GeneratorIndex(gen(rng)), u);
    LieElement x = LieElement::basis(GeneratorIndex(gen(rng)));
    UEAElement expected = uea.left_mul(x, u);
    add_scaled(expected, uea.right_mul(u, x), -1);
    EXPECT_EQ(uea.adjoint_act(x, u), expected);
  }
}

TEST(UEA, Associativity) {
  UEAlgebra uea;
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> gen(0, lie::kDim - 1);
  auto random_word = [&] {
    UEAElement u = one();
    for (int i = 0; i < 2; ++i) u = uea.left_mul(GeneratorIndex(gen(rng)), u);
    return u;
  };
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_word(), b = random_word(), c = random_word();
    EXPECT_EQ(uea.mul(uea.mul(a, b), c), uea.mul(a, uea.mul(b, c)));
  }
}

TEST(HC, Examples) {
  UEAlgebra uea;
  auto coroot = [&](int i) { return from_lie(lie::simple_coroot(i)); };
  EXPECT_EQ(hc_project(uea.mul(coroot(1), coroot(2))), h(1) * h(2));
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(hc_project(coroot(i)), h(i));
  auto e = E(1, 2, -1), f = F(1, 2, -1);
  EXPECT_TRUE(hc_project({{Word{id(f), id(e)}, Rational(1)}}).is_zero());
  UEAElement ef = uea.left_mul(e, UEAElement{{Word{id(f)}, Rational(1)}});
  EXPECT_EQ(hc_project(ef), h(1));
  EXPECT_THROW(hc_project({{Word{id(f)}, Rational(1)}}), std::invalid_argument);
}

TEST(HC, AgreesWithVermaEigenvalues) {
  UEAlgebra uea;
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 5);
  int done = 0, nonzero = 0;
  while (done < 120) {
    auto letters = oracle::random_zero_weight_word(rng, 2, 4);
    ++done;
    UEAElement u = one();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) u = uea.left_mul(*it, u);
    WeightOmega mu;
    for (auto& c : mu) c = make_rational(num(rng), den(rng));
    poly::Point pt{mu[0], mu[1], mu[2], mu[3]};
    Rational expected = verma_eigenvalue(letters, lie::omega_to_eps(mu));
    if (expected != 0) ++nonzero;
    EXPECT_EQ(hc_project(u).evaluate(pt), expected);
  }
  EXPECT_GT(nonzero, 30);
}

TEST(Extract, LevelMinusTwo) {
  auto cfg = va::VAConfig::from_m(0);
  auto v = sing::find_singular(cfg, 2, WeightOmega{2, 0, 0, 0}).vectors.at(0);
  auto orbit = sing::sigma_orbit(v, cfg);
  auto ps = full_polynomial_system(orbit, cfg);
  ASSERT_EQ(ps.polys.size(), 9u);
  EXPECT_EQ(span_dimension({ps.polys[0].p, ps.polys[1].p, ps.polys[2].p}), 3u);
  for (const auto& p : ps.polys) EXPECT_EQ(p.p.evaluate(poly::Point{}), 0);
  EXPECT_EQ(ps.polys[1].p, h(3) * h(4));
  auto c = classify(ps);
  EXPECT_EQ(c.weights.size(), 5u);
  EXPECT_TRUE(c.certificate.certified);
  ASSERT_EQ(c.dominant_integral.size(), 1u);
  EXPECT_EQ(c.dominant_integral[0], (WeightOmega{0, 0, 0, 0}));
}

TEST(Extract, PrintedPolynomialsAtMEqualsOne) {
  auto cfg = va::VAConfig::from_m(1);
  va::ModeEngine engine(cfg);
  auto v = sing::find_singular(engine, 6, WeightOmega{2, 0, 0, 0}).vectors.at(0);
  UEAlgebra uea;
  ZhuProjector zp(engine, uea);
  UEAElement vp = zp(v);
  std::array<HPolynomial, 3> raw{extract_p(uea, vp, 1), extract_p(uea, vp, 2), extract_p(uea, vp, 3)};
  Rational s = normalizing_scale(raw[0]);
  for (int i = 0; i < 3; ++i) {
    HPolynomial p = raw[i].scaled(s).with_order(poly::Order::GrevLex);
    EXPECT_EQ(p, load("printed_p" + std::to_string(i + 1) + ".txt")) << "p" << i + 1;
    EXPECT_EQ(p.evaluate(poly::Point{make_rational(-14, 3), 0, 0, 0}), 0);
  }
  // sigma-permuted p1 carries the factors h3 and 14 + 3(h1 + 2h2 + h3 + h4)
  HPolynomial p4 = sigma_permute(raw[0].scaled(s));
  EXPECT_TRUE(poly::normal_form(p4, poly::buchberger({h(3)}, poly::Order::GrevLex)).is_zero());
  EXPECT_TRUE(
      poly::normal_form(p4, poly::buchberger({HPolynomial::constant(14) + (h(1) + h(2).scaled(2) + h(3) + h(4)).scaled(3)},
                                             poly::Order::GrevLex))
          .is_zero());
}

TEST(Sigma, PermutationIsOrderThree) {
  HPolynomial p = h(1) * h(1) * h(2) + h(3) - h(4).scaled(5);
  EXPECT_EQ(sigma_permute(p, 3), p);
  EXPECT_EQ(sigma_permute(h(1)), h(3));
  EXPECT_EQ(sigma_permute(h(3)), h(4));
  EXPECT_EQ(sigma_permute(h(4)), h(1));
  EXPECT_EQ(sigma_permute(h(2)), h(2));
}
