#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qlisse {

/// Arbitrary-precision rational. GMP keeps results of arithmetic in lowest
/// terms with a positive denominator; values built from a raw numerator and
/// denominator must go through make_rational().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "num/den", denominator always written (zero is "0/1").
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "a/b" or "a", optional sign on the numerator.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  Integer num, den(1);
  try {
    if (slash == std::string::npos) {
      if (num.set_str(s, 10) != 0) throw std::invalid_argument(s);
    } else {
      if (num.set_str(s.substr(0, slash), 10) != 0 ||
          den.set_str(s.substr(slash + 1), 10) != 0)
        throw std::invalid_argument(s);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
  return make_rational(num, den);
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace qlisse
