#pragma once

/**
 * MIQP instances  min x^T H x + h^T x + constant  over {x in P, x_1..x_p in Z},
 * and the affine maps x = offset + M t that relate a reduced instance in t to
 * the instance it came from.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lp.hpp"
#include "matrix.hpp"

namespace miqpa {

struct MiqpInstance {
  RatMat H;
  RatVec h;
  Polyhedron P;
  std::size_t p = 0;
  /// Finite box; empty when P already carries the bounds (reduced instances).
  RatVec lo, hi;
  Rat constant = 0;

  std::size_t dim() const { return h.dim(); }

  Polyhedron region() const {
    if (lo.empty()) return P;
    return P.intersect(Polyhedron::box(lo, hi));
  }

  std::vector<bool> integer_mask() const {
    std::vector<bool> m(dim(), false);
    for (std::size_t i = 0; i < p; ++i) m[i] = true;
    return m;
  }

  Rat objective(const RatVec& x) const { return quad_form(H, x) + dot(h, x) + constant; }

  bool is_feasible(const RatVec& x) const {
    if (x.dim() != dim()) return false;
    for (std::size_t i = 0; i < p; ++i)
      if (!is_integer(x[i])) return false;
    if (!P.contains(x)) return false;
    for (std::size_t i = 0; i < lo.dim(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }

  void validate() const {
    const std::size_t n = dim();
    if (H.rows() != n || H.cols() != n || P.dim() != n) throw DimensionError("MiqpInstance: dimension mismatch");
    if (!H.is_symmetric()) throw NotSymmetricError("MiqpInstance: H is not symmetric");
    if (p > n) throw DimensionError("MiqpInstance: p exceeds n");
    if (!lo.empty()) {
      if (lo.dim() != n || hi.dim() != n) throw DimensionError("MiqpInstance: bounds dimension mismatch");
      for (std::size_t i = 0; i < n; ++i)
        if (lo[i] > hi[i]) throw Error("MiqpInstance: empty bound interval");
    }
  }
};

/// x = offset + M t.
struct AffineMap {
  RatVec offset;
  RatMat M;

  static AffineMap identity(std::size_t n) { return {RatVec(n), RatMat::identity(n)}; }

  RatVec apply(const RatVec& t) const { return offset + M * t; }

  /// (this after inner): t -> offset + M (inner.offset + inner.M t).
  AffineMap compose(const AffineMap& inner) const { return {offset + M * inner.offset, M * inner.M}; }
};

/// The instance in t obtained by substituting x = offset + M t, with the
/// first p_new coordinates of t integral.
inline MiqpInstance substitute(const MiqpInstance& inst, const AffineMap& map, std::size_t p_new) {
  MiqpInstance out;
  const RatVec& x0 = map.offset;
  const RatMat& M = map.M;
  RatMat Mt = M.transpose();
  out.H = Mt * inst.H * M;
  out.h = Mt * (inst.H * x0) * Rat(2) + Mt * inst.h;
  out.constant = inst.constant + quad_form(inst.H, x0) + dot(inst.h, x0);
  out.P = inst.region().substitute(x0, M);
  out.p = p_new;
  return out;
}

}  // namespace miqpa
