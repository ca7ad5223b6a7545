#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

#include "hochschild/errors.hpp"

namespace hochschild {

/// Exact rational scalar. Always kept in canonical form (reduced, positive denominator).
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Parses "p", "-p" or "p/q". Rejects a zero denominator and anything that
/// is not a plain decimal integer ratio.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&](const char* why) {
    throw ParseError("invalid rational \"" + std::string(text) + "\": " + why);
  };
  if (text.empty()) bad("empty");
  auto slash = text.find('/');
  auto check_int = [&](std::string_view part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) bad("missing digits");
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') bad("unexpected character");
  };
  std::string num(text.substr(0, slash));
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  check_int(text.substr(0, slash), true);
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(mpz_class(num, 10));
  } else {
    auto den_text = text.substr(slash + 1);
    check_int(den_text, false);
    mpz_class den(std::string(den_text), 10);
    if (den == 0) bad("zero denominator");
    q = Rational(mpz_class(num, 10), den);
    q.canonicalize();
  }
  return q;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline Rational factorial(unsigned n) {
  mpz_class f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

}  // namespace hochschild
