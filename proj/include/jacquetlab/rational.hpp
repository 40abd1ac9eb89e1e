#pragma once

// Exact rational scalars. Everything in the engine is computed over Q;
// there is no floating-point fallback anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace jacquetlab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical textual form: "p/q" with q > 1, plain "p" when q == 1.
inline std::string rat_str(const Rational& r) { return r.str(); }

inline std::optional<Rational> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Integer p(s);
      return Rational(p);
    }
    if (slash == 0 || slash + 1 >= s.size()) return std::nullopt;
    if (s.find('/', slash + 1) != std::string::npos) return std::nullopt;
    Integer p(s.substr(0, slash));
    Integer q(s.substr(slash + 1));
    if (q == 0) return std::nullopt;
    if (q < 0) {
      p = -p;
      q = -q;
    }
    return Rational(p, q);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline Rational rat_parse_or_throw(const std::string& s) {
  auto r = rat_parse(s);
  if (!r) throw std::invalid_argument("not a rational: '" + s + "'");
  return *r;
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Integer rat_floor(const Rational& r) {
  Integer p = numerator(r), q = denominator(r);
  Integer d = p / q;
  if (p < 0 && d * q != p) --d;
  return d;
}

// Representative of r mod 1 in [0, 1).
inline Rational rat_mod1(const Rational& r) { return r - Rational(rat_floor(r)); }

// a - b a non-negative integer: the comparability order used for all
// C-indexed filtrations (indices in distinct Z-cosets are incomparable).
inline bool is_int_diff(const Rational& a, const Rational& b) { return is_integer(a - b); }
inline bool leq_int(const Rational& b, const Rational& a) {
  Rational d = a - b;
  return is_integer(d) && d >= 0;
}

inline bool is_even_integer(const Rational& r) {
  return is_integer(r) && numerator(r) % 2 == 0;
}

}  // namespace jacquetlab
