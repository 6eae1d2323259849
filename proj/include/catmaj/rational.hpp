#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <string>
#include <string_view>

#include "catmaj/error.hpp"

namespace catmaj {

// Exact rational scalar. mpq_class keeps gcd(num, den) = 1 and den > 0 after
// canonicalization, which is exactly the canonical form we promise callers.
using Rat = mpq_class;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace detail

// Accepts "p/q", integer, and plain decimal strings. A decimal is read as the
// exact fraction it denotes: "0.4" -> 2/5, never a binary float.
inline Rat parse_scalar(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) fail(Err::InvalidInput, "empty scalar");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail(Err::InvalidInput, "sign without digits in scalar '" + std::string(text) + "'");

  Rat value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      fail(Err::InvalidInput, "malformed fraction '" + std::string(text) + "'");
    mpz_class q(std::string(den), 10);
    if (q == 0) fail(Err::InvalidInput, "zero denominator in '" + std::string(text) + "'");
    value = Rat(mpz_class(std::string(num), 10), q);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) fail(Err::InvalidInput, "malformed decimal '" + std::string(text) + "'");
    if (!whole.empty() && !detail::all_digits(whole))
      fail(Err::InvalidInput, "malformed decimal '" + std::string(text) + "'");
    if (!frac.empty() && !detail::all_digits(frac))
      fail(Err::InvalidInput, "malformed decimal '" + std::string(text) + "'");
    mpz_class scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    value = Rat(digits, scale);
  } else {
    if (!detail::all_digits(s)) fail(Err::InvalidInput, "malformed scalar '" + std::string(text) + "'");
    value = Rat(mpz_class(std::string(s), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

// Canonical exact text: "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rat& r) { return r.get_str(); }

inline double to_double(const Rat& r) { return r.get_d(); }

// mpq_class(p, q) does not reduce; GMP comparisons assume canonical form, so
// route every two-argument construction through here.
inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Doubles are dyadic rationals, so this conversion is exact.
inline Rat rat_from_double(double v) {
  if (!std::isfinite(v)) fail(Err::InvalidInput, "non-finite value has no rational form");
  Rat r;
  mpq_set_d(r.get_mpq_t(), v);
  return r;
}

}  // namespace catmaj
