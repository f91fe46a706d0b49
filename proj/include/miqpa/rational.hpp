#pragma once

/**
 * Exact rational scalars.
 *
 * Rat is GMP's mpq_class. Every value produced by arithmetic is canonical
 * (lowest terms, positive denominator); values built from an explicit
 * numerator/denominator pair go through make_rat(), which canonicalizes.
 *
 * Avoid `auto` on gmpxx expressions: they are lazy expression templates.
 */

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace miqpa {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

/// Nearest integer; exact halves go to the even neighbour.
inline Int round_half_even(const Rat& x) {
  Int fl = floor_rat(x);
  Rat frac = x - Rat(fl);
  Rat half(1, 2);
  if (frac < half) return fl;
  if (frac > half) return fl + 1;
  return (fl % 2 == 0) ? fl : Int(fl + 1);
}

inline Int isqrt_floor(const Int& x) {
  if (x < 0) throw Error("square root of a negative integer");
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

inline Int isqrt_ceil(const Int& x) {
  Int r = isqrt_floor(x);
  if (r * r < x) r += 1;
  return r;
}

/// Least integer m with m*m >= x, for rational x >= 0.
inline Int ceil_sqrt(const Rat& x) {
  if (x < 0) throw Error("square root of a negative rational");
  return isqrt_ceil(ceil_rat(x));
}

inline Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Extended gcd: returns g >= 0 with s*a + t*b = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Text form "p/q", with "/q" omitted when q == 1.
inline std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Parses "p/q" or "p"; unreduced input is accepted and canonicalized.
inline Rat parse_rat(std::string_view text) {
  auto bad = [&] { return ParseError("malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto valid_int = [](std::string_view s) {
    size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto to_int = [](std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return Int(std::string(s));
  };
  size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_int(text)) throw bad();
    return Rat(to_int(text));
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw bad();
  Int d = to_int(den);
  if (d == 0) throw bad();
  return make_rat(to_int(num), d);
}

}  // namespace miqpa
