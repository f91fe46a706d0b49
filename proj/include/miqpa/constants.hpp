#pragma once

/**
 * The explicit constants of the approximation scheme, all computed in
 * integer or rational arithmetic:
 *
 *   q_d  = ceil((5d)^{d/2})
 *   r_d  = ceil(2 d^{3/2} q_d^2)
 *   s_p  = 14 p 2^{p(p-1)/4}, replaced by the least m/1024 above it
 *   phi  = ceil(4 r_d sqrt(k / (3 eps)))
 *
 * Every square root is resolved as "least integer whose square is at least".
 */

#include <cstddef>

#include "errors.hpp"
#include "rational.hpp"

namespace miqpa {

inline Int q_const(std::size_t d) {
  return isqrt_ceil(pow_int(Int(5 * static_cast<long>(d)), d));
}

/// 4 d^3 q_d^4, the square of 2 d^{3/2} q_d^2.
inline Int r_const_sq_exact(std::size_t d) {
  Int q = q_const(d);
  Int dd(static_cast<long>(d));
  return 4 * dd * dd * dd * q * q * q * q;
}

inline Int r_const(std::size_t d) { return isqrt_ceil(r_const_sq_exact(d)); }

/// (14 p)^2 2^{p(p-1)/2} = s_p^2.
inline Int s_const_sq_exact(std::size_t p) {
  Int pp(static_cast<long>(p));
  return 196 * pp * pp * pow_int(Int(2), p * (p - 1) / 2);
}

/// Least m/2^10 with (m/2^10)^2 >= s_p^2.
inline Rat s_bar(std::size_t p) {
  Int m = isqrt_ceil(s_const_sq_exact(p) * pow_int(Int(2), 20));
  return make_rat(m, Int(1024));
}

/// Least integer phi with phi^2 >= 16 r_d^2 k / (3 eps).
inline Int phi_const(std::size_t d, std::size_t k, const Rat& eps) {
  if (eps <= 0) throw Error("phi_const: epsilon must be positive");
  Int r = r_const(d);
  Rat target = Rat(16 * r * r * Int(static_cast<long>(k))) / (3 * eps);
  return ceil_sqrt(target);
}

/// (r_{k+p} s_p + 1)^{p+1}, the bound on instances ever enqueued by the driver.
inline Rat iteration_bound(std::size_t k, std::size_t p) {
  Rat base = Rat(r_const(k + p)) * s_bar(p) + 1;
  Rat out = 1;
  for (std::size_t i = 0; i <= p; ++i) out *= base;
  return out;
}

}  // namespace miqpa
