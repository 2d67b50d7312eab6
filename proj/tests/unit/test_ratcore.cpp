#include <gtest/gtest.h>

#include <random>

#include "qlisse/ratcore/modular.hpp"
#include "qlisse/ratcore/nullspace.hpp"
#include "support/oracles.hpp"

using namespace qlisse;

namespace {

SparseMat mat(std::vector<std::vector<long>> rows) {
  std::size_t n = rows.empty() ? 0 : rows[0].size();
  std::vector<std::vector<Rational>> d;
  for (auto& r : rows) {
    std::vector<Rational> q;
    for (long x : r) q.emplace_back(x);
    d.push_back(q);
  }
  return SparseMat::from_dense(d, n);
}

SparseVec vec(std::vector<long> xs) {
  std::vector<Rational> d;
  for (long x : xs) d.emplace_back(x);
  return SparseVec::from_dense(d);
}

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational r = make_rational(6, -4);
  EXPECT_EQ(to_string(r), "-3/2");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  EXPECT_EQ(parse_rational("-14/3"), make_rational(-14, 3));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(make_rational(1, 0), std::exception);
}

TEST(Nullspace, ExactExamples) {
  EXPECT_EQ(nullspace_exact(mat({{1, 1}})), std::vector<SparseVec>{vec({1, -1})});
  EXPECT_TRUE(nullspace_exact(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
  EXPECT_EQ(nullspace_exact(mat({{2, -4}})), std::vector<SparseVec>{vec({2, 1})});
}

TEST(Nullspace, ModularExamples) {
  EXPECT_EQ(nullspace_modular(mat({{1, 1}}), {10007}), std::vector<SparseVec>{vec({1, -1})});
  EXPECT_EQ(nullspace_modular(mat({{3, 1}}), {10007, 10009}), std::vector<SparseVec>{vec({1, -3})});
}

TEST(Nullspace, ModularRejectsBadPrimes) {
  EXPECT_THROW(nullspace_modular(mat({{1, 1}}), {10007, 10007}), std::invalid_argument);
  EXPECT_THROW(nullspace_modular(mat({{1, 1}}), {10008}), std::invalid_argument);
}

TEST(Reconstruct, Examples) {
  EXPECT_EQ(rational_reconstruct(0, 10007), Rational(0));
  EXPECT_EQ(rational_reconstruct(3336, 10007), make_rational(1, 3));
  EXPECT_EQ(rational_reconstruct(1, 10007), Rational(1));
  EXPECT_THROW(rational_reconstruct(10007, 10007), std::invalid_argument);
}

TEST(Reconstruct, FailsWithoutSmallPreimage) {
  // 1/3 and 34/... : residue with no preimage of height <= sqrt(p/2)
  std::uint64_t p = 101;
  int found = 0;
  for (std::uint64_t r = 0; r < p; ++r)
    if (rational_reconstruct(r, p)) ++found;
  EXPECT_LT(found, 101);
}

TEST(Reconstruct, RoundTrip) {
  std::mt19937_64 rng(7);
  auto primes = primes_below(kWordPrimeBound, 20);
  for (int t = 0; t < 500; ++t) {
    long num = static_cast<long>(rng() % 20001) - 10000;
    long den = static_cast<long>(rng() % 10000) + 1;
    Rational q = make_rational(num, den);
    std::uint64_t p = primes[rng() % primes.size()];
    auto res = reduce_mod(q, p);
    ASSERT_TRUE(res);
    EXPECT_EQ(rational_reconstruct(*res, p), q);
  }
}

TEST(Modular, FieldOps) {
  PrimeFieldElem a(3, 7), b(5, 7);
  EXPECT_EQ((a + b).residue, 1u);
  EXPECT_EQ((a - b).residue, 5u);
  EXPECT_EQ((a * b).residue, 1u);
  EXPECT_EQ((a * a.inverse()).residue, 1u);
  EXPECT_THROW(a + PrimeFieldElem(1, 11), std::invalid_argument);
  EXPECT_TRUE(is_prime_u64(2147483647ull));
  EXPECT_FALSE(is_prime_u64(2147483649ull));
}

TEST(Nullspace, ModularMatchesExactOnRandomMatrices) {
  std::mt19937 rng(20240611);
  for (int t = 0; t < 120; ++t) {
    SparseMat m = oracle::random_matrix(rng, t);
    auto exact = nullspace_exact(m);
    auto report = nullspace_multimodular(m);
    EXPECT_EQ(exact, report.basis) << "trial " << t;
    for (const auto& x : exact) EXPECT_TRUE(m.annihilates(x));
  }
}

TEST(Nullspace, RationalEntries) {
  std::vector<std::vector<Rational>> d = {{make_rational(1, 3), make_rational(-2, 7), Rational(1)}};
  auto m = SparseMat::from_dense(d, 3);
  auto exact = nullspace_exact(m);
  ASSERT_EQ(exact.size(), 2u);
  EXPECT_EQ(exact, nullspace_multimodular(m).basis);
}
