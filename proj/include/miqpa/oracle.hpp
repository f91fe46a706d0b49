#pragma once

/**
 * Brute-force verification for desk-scale instances.
 *
 * Every integer fiber inside the bounds is enumerated. On a fiber the
 * continuous problem is a quadratic over a polytope, whose minimum and
 * maximum are attained at a critical point of the quadratic restricted to
 * the affine hull of some face where the restricted Hessian is nonsingular
 * (along a singular direction the value is affine, so one can slide to a
 * smaller face). Enumerating row subsets of full row rank and solving the
 * restricted stationarity systems therefore gives f* and f_max exactly, and
 * the brackets below are tight; `resolution` is kept as the tolerance knob
 * of the report but no grid is needed.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"
#include "lp.hpp"
#include "matrix.hpp"

namespace miqpa {

struct OracleReport {
  bool feasible = false;
  Rat f_star_lo, f_star_hi;
  Rat f_max_lo, f_max_hi;
  RatVec argmin, argmax;
  std::optional<Rat> candidate_value;
  std::optional<Rat> certified_ratio_hi;
  Rat resolution;
  std::size_t fibers = 0;
  std::size_t critical_points = 0;
};

struct OracleLimits {
  std::size_t max_n = 4;
  std::size_t max_p = 2;
};

namespace detail {

struct FacePiece {
  RatMat R;     // x0 = R rhs_S, the least-norm point of {W_S x = rhs_S}
  RatMat N;     // kernel of W_S
  std::optional<RatMat> Kinv;  // (2 N^T H N)^{-1} when nonsingular; N empty -> unused
  std::vector<std::size_t> rows;
};

inline void face_pieces(const RatMat& W, const RatMat& H, std::size_t start, std::vector<std::size_t>& cur,
                        std::vector<FacePiece>& out) {
  const std::size_t n = W.cols();
  if (!cur.empty()) {
    RatMat WS = W.select_rows(cur);
    if (rank(WS) < cur.size()) return;  // dependent rows give a face already covered
    FacePiece f;
    f.rows = cur;
    f.R = WS.transpose() * inverse(WS * WS.transpose());
    f.N = kernel_basis(WS);
    if (f.N.cols() > 0) {
      RatMat K = f.N.transpose() * H * f.N * Rat(2);
      if (det(K) != 0) f.Kinv = inverse(K);
    }
    out.push_back(std::move(f));
  } else {
    FacePiece f;
    f.R = RatMat(n, 0);
    f.N = RatMat::identity(n);
    if (n > 0) {
      RatMat K = H * Rat(2);
      if (det(K) != 0) f.Kinv = inverse(K);
    }
    out.push_back(std::move(f));
  }
  if (cur.size() == n) return;
  for (std::size_t i = start; i < W.rows(); ++i) {
    cur.push_back(i);
    face_pieces(W, H, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

inline OracleReport oracle_bracket(const MiqpInstance& inst, const Rat& resolution, const OracleLimits& lim = {}) {
  inst.validate();
  const std::size_t n = inst.dim(), p = inst.p, nc = n - p;
  if (n > lim.max_n || p > lim.max_p) throw DimensionError("oracle_bracket: instance exceeds the desk-scale limit");
  OracleReport rep;
  rep.resolution = resolution;
  Polyhedron region = inst.region();
  if (!lp_feasible_point(region)) return rep;

  // Integer ranges from the LP relaxation.
  std::vector<Int> zlo(p), zhi(p);
  for (std::size_t i = 0; i < p; ++i) {
    auto [mn, mx] = range_along(region, RatVec::unit(n, i));
    zlo[i] = ceil_rat(mn);
    zhi[i] = floor_rat(mx);
    if (zlo[i] > zhi[i]) return rep;
  }

  // Continuous block: f(z, u) = u^T Hcc u + (2 Hci z + hc)^T u + const(z).
  RatMat WI = region.W.block(0, 0, region.num_rows(), p);
  RatMat WC = region.W.block(0, p, region.num_rows(), nc);
  RatMat Hcc = inst.H.block(p, p, nc, nc);
  std::vector<detail::FacePiece> pieces;
  std::vector<std::size_t> cur;
  detail::face_pieces(WC, Hcc, 0, cur, pieces);

  std::optional<Rat> fmin, fmax;
  auto consider = [&](const RatVec& x) {
    Rat v = inst.objective(x);
    ++rep.critical_points;
    if (!fmin || v < *fmin) {
      fmin = v;
      rep.argmin = x;
    }
    if (!fmax || v > *fmax) {
      fmax = v;
      rep.argmax = x;
    }
  };

  std::vector<Int> z = zlo;
  while (true) {
    ++rep.fibers;
    RatVec zi(p);
    for (std::size_t i = 0; i < p; ++i) zi[i] = Rat(z[i]);
    RatVec rhs = region.w - WI * zi;
    auto full = [&](const RatVec& u) { return concat(zi, u); };
    if (nc == 0) {
      if (region.contains(zi)) consider(zi);
    } else {
      RatVec g(nc);  // linear term in u on this fiber
      for (std::size_t a = 0; a < nc; ++a) {
        Rat s = inst.h[p + a];
        for (std::size_t b = 0; b < p; ++b) s += 2 * inst.H(p + a, b) * zi[b];
        g[a] = s;
      }
      for (const auto& f : pieces) {
        RatVec x0(nc);
        if (!f.rows.empty()) {
          RatVec rs(f.rows.size());
          for (std::size_t t = 0; t < f.rows.size(); ++t) rs[t] = rhs[f.rows[t]];
          x0 = f.R * rs;
        }
        RatVec u = x0;
        if (f.N.cols() > 0) {
          if (!f.Kinv) continue;
          RatVec grad0 = Hcc * x0 * Rat(2) + g;
          RatVec t = *f.Kinv * transpose_times(f.N, grad0);
          u = x0 - f.N * t;
        }
        RatVec x = full(u);
        if (region.contains(x)) consider(x);
      }
    }
    std::size_t i = 0;
    while (i < p && z[i] == zhi[i]) {
      z[i] = zlo[i];
      ++i;
    }
    if (i == p) break;
    ++z[i];
  }
  if (!fmin) return rep;
  rep.feasible = true;
  rep.f_star_lo = rep.f_star_hi = *fmin;
  rep.f_max_lo = rep.f_max_hi = *fmax;
  return rep;
}

enum class Verdict { pass, fail, inconclusive, infeasible_point };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::inconclusive: return "INCONCLUSIVE";
    case Verdict::infeasible_point: return "INFEASIBLE";
  }
  return "?";
}

/// PASS when f(x) <= eps f_max + (1 - eps) f* holds for every value in the
/// brackets, FAIL when it holds for none.
inline Verdict check_solution(const MiqpInstance& inst, const RatVec& x, const Rat& eps, OracleReport& rep) {
  if (!inst.is_feasible(x) || !rep.feasible) return Verdict::infeasible_point;
  Rat fx = inst.objective(x);
  rep.candidate_value = fx;
  Rat denom = rep.f_max_lo - rep.f_star_hi;
  if (denom > 0) rep.certified_ratio_hi = (fx - rep.f_star_lo) / denom;
  else if (fx == rep.f_star_lo && rep.f_star_lo == rep.f_star_hi) rep.certified_ratio_hi = Rat(0);
  Rat worst = eps * rep.f_max_lo + (1 - eps) * rep.f_star_lo;
  Rat best = eps * rep.f_max_hi + (1 - eps) * rep.f_star_hi;
  if (fx <= worst) return Verdict::pass;
  if (fx > best) return Verdict::fail;
  return Verdict::inconclusive;
}

}  // namespace miqpa
