#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qlisse/ratcore/rational.hpp"

namespace qlisse {

// Word-sized prime field arithmetic. Moduli stay below 2^32 so products fit
// in 64 bits.

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

/// Inverse by extended Euclid; a must be a unit mod p.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The `count` largest primes below `bound`, descending.
inline std::vector<std::uint64_t> primes_below(std::uint64_t bound, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = bound - 1; out.size() < count && n > 2; --n) {
    if (is_prime_u64(n)) out.push_back(n);
  }
  return out;
}

inline constexpr std::uint64_t kWordPrimeBound = 1ull << 31;

/// Element of Z/pZ carrying its modulus.
struct PrimeFieldElem {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 2;

  PrimeFieldElem() = default;
  PrimeFieldElem(std::uint64_t r, std::uint64_t p) : residue(r % p), modulus(p) {}

  friend PrimeFieldElem operator+(PrimeFieldElem a, PrimeFieldElem b) {
    check_same(a, b);
    std::uint64_t s = a.residue + b.residue;
    return {s >= a.modulus ? s - a.modulus : s, a.modulus};
  }
  friend PrimeFieldElem operator-(PrimeFieldElem a, PrimeFieldElem b) {
    check_same(a, b);
    return {a.residue >= b.residue ? a.residue - b.residue : a.residue + a.modulus - b.residue, a.modulus};
  }
  friend PrimeFieldElem operator*(PrimeFieldElem a, PrimeFieldElem b) {
    check_same(a, b);
    return {mul_mod(a.residue, b.residue, a.modulus), a.modulus};
  }
  PrimeFieldElem inverse() const { return {inv_mod(residue, modulus), modulus}; }
  friend bool operator==(PrimeFieldElem a, PrimeFieldElem b) = default;

 private:
  static void check_same(const PrimeFieldElem& a, const PrimeFieldElem& b) {
    if (a.modulus != b.modulus) throw std::invalid_argument("PrimeFieldElem: modulus mismatch");
  }
};

/// Image of a rational in Z/pZ; nullopt when p divides the denominator.
inline std::optional<std::uint64_t> reduce_mod(const Rational& q, std::uint64_t p) {
  std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
  if (den == 0) return std::nullopt;
  std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
  return mul_mod(num, inv_mod(den, p), p);
}

/// Smallest-height rational r/s with r/s == residue mod modulus,
/// |r|, s <= sqrt(modulus/2), gcd(s, modulus) = 1. nullopt if none exists.
inline std::optional<Rational> rational_reconstruct(const Integer& residue, const Integer& modulus) {
  if (modulus <= 0) throw std::invalid_argument("rational_reconstruct: modulus must be positive");
  Integer bound = sqrt(Integer(modulus / 2));
  Integer r0 = modulus, r1 = residue % modulus;
  if (r1 < 0) r1 += modulus;
  Integer s0 = 0, s1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), s1.get_mpz_t(), modulus.get_mpz_t());
  if (g != 1) return std::nullopt;
  return make_rational(r1, s1);
}

inline std::optional<Rational> rational_reconstruct(std::uint64_t residue, std::uint64_t modulus) {
  if (residue >= modulus) throw std::invalid_argument("rational_reconstruct: residue >= modulus");
  return rational_reconstruct(Integer(static_cast<unsigned long>(residue)), Integer(static_cast<unsigned long>(modulus)));
}

/// Incremental Chinese remaindering of one value across primes.
/// Returns x mod (m*p) with x == a mod m, x == b mod p, 0 <= x < m*p.
inline Integer crt_step(const Integer& a, const Integer& m, std::uint64_t b, std::uint64_t p) {
  std::uint64_t a_mod_p = mpz_fdiv_ui(a.get_mpz_t(), p);
  std::uint64_t m_mod_p = mpz_fdiv_ui(m.get_mpz_t(), p);
  std::uint64_t diff = b >= a_mod_p ? b - a_mod_p : b + p - a_mod_p;
  std::uint64_t t = mul_mod(diff, inv_mod(m_mod_p, p), p);
  Integer x = a + m * Integer(static_cast<unsigned long>(t));
  return x;
}

}  // namespace qlisse
