#include <gtest/gtest.h>

#include <sstream>

#include "qlisse/singular/singular.hpp"

using namespace qlisse;
using namespace qlisse::sing;

namespace {

const WeightOmega kTwoOmega1{2, 0, 0, 0};

}  // namespace

TEST(Singular, ConstraintShapes) {
  auto sys = build_constraints(VAConfig::from_level(-2), 2, kTwoOmega1);
  EXPECT_EQ(sys.basis.size(), 3u);
  EXPECT_EQ(sys.matrix.ncols(), 3u);
  auto vac = build_constraints(VAConfig::from_level(make_rational(5, 7)), 0, WeightOmega{});
  EXPECT_EQ(vac.matrix.ncols(), 1u);
  EXPECT_EQ(vac.matrix.nnz(), 0u);
}

TEST(Singular, VacuumIsSingular) {
  EXPECT_TRUE(verify_singular(va::vacuum(), VAConfig::from_m(1)));
  EXPECT_TRUE(verify_singular(va::vacuum(), VAConfig::from_m(1), 0, WeightOmega{}));
}

TEST(Singular, LevelMinusTwo) {
  auto cfg = VAConfig::from_m(0);
  auto res = find_singular(cfg, 2, kTwoOmega1);
  ASSERT_EQ(res.vectors.size(), 1u);
  const auto& v = res.vectors[0];
  EXPECT_TRUE(verify_singular(v, cfg, 2, kTwoOmega1));
  EXPECT_EQ(v.size(), 3u);
  // generic level: no singular vector at this weight
  EXPECT_TRUE(find_singular(VAConfig::from_level(make_rational(1, 3)), 2, kTwoOmega1).vectors.empty());

  auto orbit = sigma_orbit(v, cfg);
  EXPECT_EQ(va::affine_weight(orbit[1], cfg).finite, (WeightOmega{0, 0, 2, 0}));
  EXPECT_EQ(va::affine_weight(orbit[2], cfg).finite, (WeightOmega{0, 0, 0, 2}));
  EXPECT_EQ(va::apply_sigma(orbit[2], cfg), v);
}

TEST(Singular, PerturbationBreaksSingularity) {
  auto cfg = VAConfig::from_m(0);
  auto v = find_singular(cfg, 2, kTwoOmega1).vectors.at(0);
  v.begin()->second += 1;
  EXPECT_FALSE(verify_singular(v, cfg));
}

TEST(Singular, SigmaEquivariance) {
  auto cfg = VAConfig::from_m(0);
  auto v = find_singular(cfg, 2, kTwoOmega1).vectors.at(0);
  auto direct = find_singular(cfg, 2, lie::sigma_weight(kTwoOmega1)).vectors;
  ASSERT_EQ(direct.size(), 1u);
  auto img = normalize(va::apply_sigma(v, cfg));
  EXPECT_EQ(img, direct[0]);
}

TEST(Singular, CacheRoundTrip) {
  auto cfg = VAConfig::from_m(0);
  auto v = find_singular(cfg, 2, kTwoOmega1).vectors.at(0);
  SingvecFile f{cfg.k, 2, kTwoOmega1, v};
  std::ostringstream os;
  write_singvec(os, f);
  std::string text = os.str();
  EXPECT_EQ(text.rfind("singvec v1 algebra=D4 k=-2/1 degree=2 weight=2/1,0/1,0/1,0/1 order=depth-desc,genidx-asc\n", 0), 0u);
  EXPECT_NE(text.find("\ncount=3\n"), std::string::npos);
  std::istringstream is(text);
  auto back = read_singvec(is);
  EXPECT_EQ(back.vector, v);
  EXPECT_EQ(back.k, cfg.k);
  EXPECT_EQ(back.weight, kTwoOmega1);
  std::ostringstream again;
  write_singvec(again, back);
  EXPECT_EQ(again.str(), text);
}

TEST(Singular, CacheRejectsMalformed) {
  auto parse = [](const std::string& s) {
    std::istringstream is(s);
    return read_singvec(is);
  };
  const std::string hdr = "singvec v1 algebra=D4 k=-2/1 degree=2 weight=2/1,0/1,0/1,0/1 order=depth-desc,genidx-asc\n";
  EXPECT_THROW(parse("garbage\n"), std::runtime_error);
  EXPECT_THROW(parse(hdr + "1/1 g20(-1)^1 g25(-1)^1\n"), std::runtime_error);
  EXPECT_THROW(parse(hdr + "1/1 g25(-1)^1 g20(-1)^1\ncount=1\n"), std::runtime_error);
  EXPECT_THROW(parse(hdr + "1/1 g20(-1)^1 g25(-1)^1\ncount=2\n"), std::runtime_error);
  EXPECT_NO_THROW(parse(hdr + "1/1 g20(-1)^1 g25(-1)^1\ncount=1\n"));
}
