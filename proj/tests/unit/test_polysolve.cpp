#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "qlisse/polysolve/solve.hpp"
#include "support/oracles.hpp"

using namespace qlisse;
using namespace qlisse::poly;

namespace {

MultiPoly h(int i, Order o = Order::GrevLex) { return MultiPoly::variable(i, o); }
MultiPoly c(long x, Order o = Order::GrevLex) { return MultiPoly::constant(Rational(x), o); }

std::vector<MultiPoly> as_lex(std::vector<MultiPoly> v) {
  for (auto& p : v) p = p.with_order(Order::Lex);
  return v;
}

Point pt(long a, long b, long cc, long d) { return {Rational(a), Rational(b), Rational(cc), Rational(d)}; }

MultiPoly in_var(const UPoly& u, int var) {
  MultiPoly r;
  for (int d = 0; d <= u.degree(); ++d) r = r + h(var).pow(d).scaled(u[d]);
  return r;
}

/// Reduces by a randomly chosen divisor at every step.
MultiPoly random_reduce(MultiPoly f, const GroebnerBasis& gb, std::mt19937& rng) {
  MultiPoly rem(gb.order);
  f = f.with_order(gb.order);
  while (!f.is_zero()) {
    std::vector<const MultiPoly*> cands;
    for (const auto& g : gb.polys)
      for (const auto& [e, x] : f.terms())
        if (divides(g.lead_exp(), e)) {
          cands.push_back(&g);
          break;
        }
    if (cands.empty()) {
      rem = rem + MultiPoly::monomial(f.lead_exp(), f.lead_coeff(), gb.order);
      f = f - MultiPoly::monomial(f.lead_exp(), f.lead_coeff(), gb.order);
      continue;
    }
    const MultiPoly& g = *cands[rng() % cands.size()];
    for (const auto& [e, x] : f.terms())
      if (divides(g.lead_exp(), e)) {
        f = f - g.shifted(e - g.lead_exp(), x / g.lead_coeff());
        break;
      }
  }
  return rem;
}

MultiPoly load(const std::string& name) {
  std::ifstream is(std::string(QLISSE_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_text(ss.str());
}

}  // namespace

TEST(Buchberger, AlreadyReduced) {
  auto gb = buchberger({h(1), h(2), h(3), h(4)}, Order::GrevLex);
  ASSERT_EQ(gb.polys.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(gb.polys[i], h(4 - i));
}

TEST(Buchberger, LexExample) {
  auto gb = buchberger(as_lex({h(1) * h(1) - c(1), h(2) - h(1)}), Order::Lex);
  ASSERT_EQ(gb.polys.size(), 2u);
  EXPECT_EQ(gb.polys[0], (h(2) * h(2) - c(1)).with_order(Order::Lex));
  EXPECT_EQ(gb.polys[1], (h(1) - h(2)).with_order(Order::Lex));
}

TEST(Buchberger, Inconsistent) {
  auto gb = buchberger({h(1) * h(2) - c(1), h(1)}, Order::GrevLex);
  EXPECT_TRUE(gb.is_unit());
  ASSERT_EQ(gb.polys.size(), 1u);
  EXPECT_EQ(gb.polys[0], c(1));
}

TEST(Buchberger, RandomSystemsAreGroebner) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3), var(0, kVars - 1), deg(0, 2);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<MultiPoly> gens;
    for (int g = 0; g < 3; ++g) {
      std::vector<MultiPoly::Term> ts;
      for (int t = 0; t < 3; ++t) {
        Exponent e{};
        int d = deg(rng);
        for (int i = 0; i < d; ++i) ++e[var(rng)];
        ts.emplace_back(e, Rational(coef(rng)));
      }
      auto p = MultiPoly::from_terms(ts);
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    for (Order o : {Order::GrevLex, Order::Lex}) {
      auto gb = buchberger(gens, o);
      EXPECT_TRUE(is_groebner(gb));
      for (const auto& g : gens) EXPECT_TRUE(reduces_to_zero(g, gb));
      for (const auto& p : gb.polys) EXPECT_EQ(p.lead_coeff(), 1);
      for (std::size_t i = 0; i < gb.polys.size(); ++i)
        for (std::size_t j = 0; j < gb.polys.size(); ++j)
          if (i != j)
            for (const auto& [e, x] : gb.polys[j].terms()) EXPECT_FALSE(divides(gb.polys[i].lead_exp(), e));
    }
  }
}

TEST(Buchberger, ReductionConfluence) {
  std::mt19937 rng(5);
  auto gb = buchberger({h(1) * h(1) - h(2) * h(3), h(2) * h(2) - h(1) + c(2), h(3) * h(3) - h(4), h(4) * h(4) - h(1) * h(3)},
                       Order::GrevLex);
  std::uniform_int_distribution<int> coef(-5, 5), ex(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<MultiPoly::Term> ts;
    for (int t = 0; t < 6; ++t) {
      Exponent e{};
      for (auto& x : e) x = static_cast<std::uint16_t>(ex(rng));
      ts.emplace_back(e, Rational(coef(rng)));
    }
    auto f = MultiPoly::from_terms(ts);
    auto expected = normal_form(f, gb);
    for (int rep = 0; rep < 3; ++rep) EXPECT_EQ(random_reduce(f, gb, rng), expected);
  }
}

TEST(ZeroDim, Examples) {
  auto a = is_zero_dimensional(buchberger({h(1), h(2), h(3), h(4)}, Order::GrevLex));
  EXPECT_TRUE(a.zero_dimensional);
  EXPECT_EQ(a.D, 1u);
  EXPECT_FALSE(is_zero_dimensional(buchberger({h(1)}, Order::GrevLex)).zero_dimensional);
  auto b = is_zero_dimensional(buchberger({h(1) * h(1) - c(1), h(2) - h(1), h(3), h(4)}, Order::GrevLex));
  EXPECT_TRUE(b.zero_dimensional);
  EXPECT_EQ(b.D, 2u);
}

TEST(Univariate, RationalRoots) {
  // (x - 2/3)(x + 5)(x^2 + 1)(x - 7)^2
  UPoly f = UPoly::x_minus(make_rational(2, 3)) * UPoly::x_minus(Rational(-5)) * UPoly({Rational(1), 0, Rational(1)}) *
            UPoly::x_minus(Rational(7)) * UPoly::x_minus(Rational(7));
  auto r = rational_roots(f);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0], -5);
  EXPECT_EQ(r[1], make_rational(2, 3));
  EXPECT_EQ(r[2], 7);
  EXPECT_EQ(deflate(f, r), UPoly({Rational(1), 0, Rational(1)}));
  EXPECT_EQ(squarefree_part(f).degree(), 5);
  EXPECT_TRUE(rational_roots(UPoly({Rational(-2), 0, Rational(1)})).empty());
}

TEST(Solve, HandExample) {
  auto r = solve_rational({h(1) * h(1) - c(1), h(2) - h(1), h(3), h(4)});
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_EQ(r.points[0], pt(-1, -1, 0, 0));
  EXPECT_EQ(r.points[1], pt(1, 1, 0, 0));
  EXPECT_TRUE(r.certificate.certified);
  EXPECT_EQ(r.certificate.D, 2u);
}

TEST(Solve, Origin) {
  auto r = solve_rational({h(1), h(2), h(3), h(4)});
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_EQ(r.points[0], pt(0, 0, 0, 0));
  EXPECT_TRUE(r.certificate.certified);
  EXPECT_EQ(r.certificate.D, 1u);
}

TEST(Solve, Inconsistent) {
  auto r = solve_rational({h(1) * h(2) - c(1), h(1)});
  EXPECT_TRUE(r.points.empty());
  EXPECT_TRUE(r.certificate.certified);
}

TEST(Solve, NonRadicalCountsDistinctPoints) {
  auto r = solve_rational({h(1) * h(1), h(2) - c(3), h(3) * h(3) - c(1), h(4)});
  EXPECT_EQ(r.certificate.D_with_multiplicity, 4u);
  EXPECT_EQ(r.certificate.D, 2u);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_TRUE(r.certificate.certified);
}

TEST(Solve, IrrationalPointsLeaveResidual) {
  auto r = solve_rational({h(1) * h(1) - c(2), h(2) - c(1), h(3), h(4) * (h(4) - c(1))});
  EXPECT_TRUE(r.points.empty());
  EXPECT_FALSE(r.certificate.certified);
  ASSERT_EQ(r.certificate.residual_factors.size(), 1u);
  EXPECT_EQ(r.certificate.residual_factors[0], UPoly({Rational(-2), 0, Rational(1)}));
}

TEST(Solve, MixedRationalAndIrrational) {
  // (h1 - 1)(h1^2 - 3), other coordinates fixed
  auto r = solve_rational({(h(1) - c(1)) * (h(1) * h(1) - c(3)), h(2) + c(2), h(3), h(4) - h(1)});
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_EQ(r.points[0], pt(1, -2, 0, 1));
  EXPECT_EQ(r.certificate.D, 3u);
  EXPECT_FALSE(r.certificate.certified);
}

TEST(Solve, PlantedGrid) {
  auto r = solve_rational({(h(1) - c(1)) * (h(1) + c(2)), (h(2) - c(3)) * (h(2) - c(4)) * h(2), h(3) - h(1) * h(2),
                           h(4) + c(7)});
  EXPECT_EQ(r.points.size(), 6u);
  EXPECT_TRUE(r.certificate.certified);
  for (const auto& p : r.points) EXPECT_EQ(p[2], p[0] * p[1]);
}

TEST(Solve, PlantedRandomSystems) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 24; ++trial) {
    auto sys = oracle::planted_system(rng);
    for (const auto& p : sys.points)
      for (const auto& g : sys.gens) ASSERT_EQ(g.evaluate(p), 0);
    auto r = solve_rational(sys.gens);
    EXPECT_EQ(r.points, sys.points) << "trial " << trial;
    EXPECT_TRUE(r.certificate.certified);
    EXPECT_EQ(r.certificate.D, sys.points.size());
  }
}

TEST(Solve, SharedCoordinates) {
  // four points on two h1-fibres
  std::vector<Point> planted{pt(0, 1, 2, 3), pt(0, -1, 2, 3), pt(5, 1, 0, 0), pt(5, 2, 0, 1)};
  std::vector<MultiPoly> gens{h(1) * (h(1) - c(5)),
                              h(1) * (h(2) - c(1)) * (h(2) - c(2)) + (h(1) - c(5)) * (h(2) * h(2) - c(1)),
                              h(3) - c(2) + h(1).scaled(make_rational(2, 5)),
                              h(4) - c(3) + h(1).scaled(make_rational(3, 5)) - h(1) * (h(2) - c(1)).scaled(make_rational(1, 5))};
  for (const auto& p : planted)
    for (const auto& g : gens) ASSERT_EQ(g.evaluate(p), 0);
  auto r = solve_rational(gens);
  std::sort(planted.begin(), planted.end());
  EXPECT_EQ(r.points, planted);
  EXPECT_TRUE(r.certificate.certified);
}

TEST(Solve, VerifyPointsFallback) {
  std::vector<MultiPoly> gens{h(1) * h(1) - c(1), h(2) - h(1), h(3), h(4)};
  auto r = verify_points(gens, {pt(1, 1, 0, 0), pt(-1, -1, 0, 0)});
  EXPECT_TRUE(r.certificate.verification_mode);
  EXPECT_TRUE(r.certificate.certified);
  auto partial = verify_points(gens, {pt(1, 1, 0, 0)});
  EXPECT_FALSE(partial.certificate.certified);
  EXPECT_THROW(verify_points(gens, {pt(2, 2, 0, 0)}), std::invalid_argument);
}

TEST(OriginOnly, Examples) {
  EXPECT_TRUE(origin_only({h(1) * h(1), h(2) * h(2), h(3) * h(3), h(4) * h(4)}));
  EXPECT_FALSE(origin_only({h(1) * h(2), h(3), h(4)}));
  EXPECT_THROW(origin_only({h(1) - c(1)}), std::invalid_argument);
}

TEST(OriginOnly, PrintedQSystem) {
  std::vector<MultiPoly> q;
  for (int i = 1; i <= 9; ++i) q.push_back(load("printed_q" + std::to_string(i) + ".txt"));
  EXPECT_TRUE(origin_only(q));
  // dropping the sigma images leaves a positive-dimensional locus
  EXPECT_FALSE(origin_only({q[0]}));
}

TEST(TextFormat, RoundTrip) {
  auto p = (h(1) * h(1)).scaled(make_rational(-3, 7)) + h(2) * h(4) + c(5);
  EXPECT_EQ(to_text(p), "-3/7*h1^2*h2^0*h3^0*h4^0\n1/1*h1^0*h2^1*h3^0*h4^1\n5/1*h1^0*h2^0*h3^0*h4^0\n");
  EXPECT_EQ(parse_text(to_text(p)), p);
  EXPECT_THROW(parse_text("1/1*x1^2\n"), std::invalid_argument);
}
