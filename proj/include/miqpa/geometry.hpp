#pragma once

/**
 * Concentric ellipsoid rounding of a projected polytope and simultaneous
 * diagonalization.
 *
 * Rounding works in coordinates s of the subspace L (basis C0, s = C0^+ x).
 * A simplex spanned by projections of points of P is grown greedily: a
 * vertex is replaced whenever some point of P has a barycentric coordinate
 * of magnitude above t_d, which multiplies the volume by that magnitude.
 * At termination the exact LP ranges of the barycentric coordinates over P
 * confine proj P to a box in barycentric space. The inner ellipsoid is the
 * simplex's Steiner inellipsoid with its shape matrix rounded up to a
 * rational factor; the outer bound is the maximum of the (convex) ellipsoid
 * norm over the vertices of that box cut by sum(lambda) = 1.
 *
 * All LPs are posed over P itself; the projection is never built.
 */

#include <cstddef>
#include <optional>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "lp.hpp"
#include "matrix.hpp"
#include "symdec.hpp"

namespace miqpa {

struct SubspaceEllipsoid {
  RatMat subspace_basis;  // n x d
  RatVec a;               // center, in the subspace
  RatMat L;               // n x d, {x in span : ||L^T (x - a)|| <= 1}
};

/// Data that lets callers re-certify the sandwich without re-running LPs.
struct RoundingCertificate {
  std::vector<RatVec> simplex_points;  // d+1 points of P whose projections span the simplex
  RatMat bary;                         // (d+1) x (d+1), lambda(s) = bary * [s; 1]
  std::vector<Rat> lambda_lo, lambda_hi;
  std::vector<RatVec> box_vertices;    // vertices of {lo <= lambda <= hi, sum lambda = 1}
  Rat outer_sq;                        // max ||L^T(x - a)||^2 over proj P (upper bound)
  bool inner_ok = false;               // ellipsoid inside the simplex, per facet
  bool outer_ok = false;               // outer_sq within the target bound
};

struct InscribedEllipsoid {
  SubspaceEllipsoid ellipsoid;
  RoundingCertificate cert;
  RatMat F;  // d x d, shape in s-coordinates: ||F^T (s - c)|| <= 1
};

/// Growth threshold for the barycentric coordinates; keeps (d+1)^2 t^2 - 1 < 4 d^2.
inline Rat growth_threshold(std::size_t d) {
  if (d <= 1) return make_rat(11, 10);
  if (d == 2) return make_rat(5, 4);
  return make_rat(3, 2);
}

namespace detail {

/// Vertices of {lambda : lo <= lambda <= hi, sum lambda = 1}.
inline std::vector<RatVec> box_slice_vertices(const std::vector<Rat>& lo, const std::vector<Rat>& hi) {
  const std::size_t m = lo.size();
  std::vector<RatVec> out;
  for (std::size_t free = 0; free < m; ++free) {
    const std::size_t others = m - 1;
    for (unsigned long mask = 0; mask < (1ul << others); ++mask) {
      RatVec lam(m);
      Rat sum = 0;
      std::size_t bit = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == free) continue;
        lam[j] = (mask >> bit) & 1ul ? hi[j] : lo[j];
        sum += lam[j];
        ++bit;
      }
      lam[free] = 1 - sum;
      if (lam[free] < lo[free] || lam[free] > hi[free]) continue;
      out.push_back(std::move(lam));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline RatMat vertex_matrix(const std::vector<RatVec>& verts, std::size_t d) {
  return RatMat::from_columns(d, verts);
}

/// Rational s with D <= s^2 <= kappa D, for D > 0 and kappa > 1.
inline Rat rational_sqrt_between(const Rat& D, const Rat& kappa) {
  for (unsigned long m = 0;; ++m) {
    Int scale = pow_int(Int(2), m);
    Rat s = make_rat(ceil_sqrt(D * Rat(scale * scale)), scale);
    if (s * s <= kappa * D) return s;
  }
}

}  // namespace detail

/// Checks that {s : ||K (s - c)|| <= 1} lies in the simplex whose barycentric
/// map has linear part `lin` ((d+1) x d) and value lam_c at c.
inline bool ellipsoid_in_simplex(const RatMat& K, const RatMat& lin, const RatVec& lam_c) {
  RatMat Kinv_t = inverse(K).transpose();
  for (std::size_t j = 0; j < lin.rows(); ++j) {
    if (lam_c[j] < 0) return false;
    RatVec g = Kinv_t * lin.row(j);
    if (norm_sq(g) > lam_c[j] * lam_c[j]) return false;
  }
  return true;
}

/// Max of ||K (V lambda - c)||^2 over the listed lambdas (V is d x (d+1)).
inline Rat max_quad_over(const RatMat& K, const RatMat& V, const RatVec& c, const std::vector<RatVec>& lams) {
  Rat best = 0;
  for (const auto& lam : lams) {
    Rat v = norm_sq(K * (V * lam - c));
    if (v > best) best = v;
  }
  return best;
}

inline InscribedEllipsoid inscribe_ellipsoid(const Polyhedron& P, const RatMat& subspace_basis) {
  if (subspace_basis.rows() != P.dim()) throw DimensionError("inscribe_ellipsoid: basis dimension mismatch");
  const RatMat C0 = subspace_basis.select_columns(independent_columns(subspace_basis));
  const std::size_t d = C0.cols();
  if (d == 0) throw NotFullDimensionalError("inscribe_ellipsoid: zero-dimensional subspace");
  const RatMat C0dag = left_inverse(C0);
  const RatMat lift = C0dag.transpose();  // objective u on s becomes lift * u on x

  auto to_s = [&](const RatVec& x) { return C0dag * x; };
  auto solve_lp = [&](const RatVec& u_s, Sense sense) {
    auto r = lp_optimize(P, lift * u_s, sense);
    if (r.status == LpStatus::infeasible) throw InfeasibleError("inscribe_ellipsoid: polytope is empty");
    if (r.status == LpStatus::unbounded) throw UnboundedError("inscribe_ellipsoid: polytope is unbounded");
    return *r.point;
  };

  std::vector<RatVec> X;  // points of P
  std::vector<RatVec> V;  // their s-coordinates
  X.push_back(solve_lp(RatVec::unit(d, 0), Sense::minimize));
  V.push_back(to_s(X[0]));
  for (std::size_t i = 1; i <= d; ++i) {
    std::vector<RatVec> edges;
    for (std::size_t j = 1; j < i; ++j) edges.push_back(V[j] - V[0]);
    RatMat E = RatMat::from_rows(d, edges);
    RatVec u = kernel_basis(E).col(0);
    RatVec xmax = solve_lp(u, Sense::maximize);
    RatVec xmin = solve_lp(u, Sense::minimize);
    Rat base = dot(u, V[0]);
    Rat up = dot(u, to_s(xmax)) - base;
    Rat down = base - dot(u, to_s(xmin));
    if (up == 0 && down == 0)
      throw NotFullDimensionalError("inscribe_ellipsoid: projection is lower-dimensional");
    X.push_back(up >= down ? xmax : xmin);
    V.push_back(to_s(X.back()));
  }

  const Rat t = growth_threshold(d);
  RatMat Ainv;
  std::vector<Rat> lo(d + 1), hi(d + 1);
  for (;;) {
    RatMat A(d + 1, d + 1);
    for (std::size_t j = 0; j <= d; ++j) {
      for (std::size_t i = 0; i < d; ++i) A(i, j) = V[j][i];
      A(d, j) = 1;
    }
    Ainv = inverse(A);
    bool replaced = false;
    for (std::size_t j = 0; j <= d && !replaced; ++j) {
      RatVec K = Ainv.row(j).segment(0, d);
      Rat k0 = Ainv(j, d);
      RatVec xmax = solve_lp(K, Sense::maximize);
      RatVec xmin = solve_lp(K, Sense::minimize);
      hi[j] = dot(K, to_s(xmax)) + k0;
      lo[j] = dot(K, to_s(xmin)) + k0;
      if (hi[j] > t) {
        X[j] = xmax;
        V[j] = to_s(xmax);
        replaced = true;
      } else if (lo[j] < -t) {
        X[j] = xmin;
        V[j] = to_s(xmin);
        replaced = true;
      }
    }
    if (!replaced) break;
  }

  const Rat dd(static_cast<long>(d));
  RatMat lin = Ainv.block(0, 0, d + 1, d);
  RatMat Gs = lin.transpose() * lin * (dd * (dd + 1));
  LdlForm ldl = ldl_decompose(Gs);

  std::vector<RatVec> box = detail::box_slice_vertices(lo, hi);
  Rat centroid_w = Rat(1) / (dd + 1);
  Rat max_norm = 0;
  for (const auto& lam : box) {
    Rat s = 0;
    for (const auto& l : lam) s += (l - centroid_w) * (l - centroid_w);
    if (s > max_norm) max_norm = s;
  }
  const Rat target = 4 * dd * dd * dd;
  const Rat kappa = target / (dd * (dd + 1) * max_norm);

  RatVec sd(d);
  for (std::size_t i = 0; i < d; ++i) sd[i] = detail::rational_sqrt_between(ldl.D(i, i), kappa);
  RatMat F = ldl.L * RatMat::diagonal(sd);

  RatMat Vm = detail::vertex_matrix(V, d);
  RatVec c = Vm * RatVec(std::vector<Rat>(d + 1, centroid_w));

  InscribedEllipsoid out;
  out.F = F;
  out.ellipsoid.subspace_basis = C0;
  out.ellipsoid.a = C0 * c;
  out.ellipsoid.L = lift * F;
  out.cert.simplex_points = X;
  out.cert.bary = Ainv;
  out.cert.lambda_lo = lo;
  out.cert.lambda_hi = hi;
  out.cert.box_vertices = box;
  RatMat Ft = F.transpose();
  RatVec lam_c(std::vector<Rat>(d + 1, centroid_w));
  out.cert.inner_ok = ellipsoid_in_simplex(Ft, lin, lam_c);
  out.cert.outer_sq = max_quad_over(Ft, Vm, c, box);
  out.cert.outer_ok = out.cert.outer_sq <= target;
  if (!out.cert.inner_ok || !out.cert.outer_ok)
    throw Error("inscribe_ellipsoid: sandwich certificate failed");
  return out;
}

struct SimDiagResult {
  std::size_t d = 0;
  RatMat subspace_basis;  // n x d
  RatMat D;               // d x d diagonal
  SubspaceEllipsoid ellipsoid;
  InscribedEllipsoid rounding;  // the C-ellipsoid before rescaling
  RatMat Ltilde;
  Int q;
  Rat outer_sq;  // max ||L^T(x - a)||^2 over proj P
  bool inner_ok = false;
  bool outer_ok = false;
};

/// Squared radius bound for the outer ellipsoid: (2 d^{3/2} q_d^2)^2.
inline Rat sandwich_ratio_sq(std::size_t d) { return Rat(r_const_sq_exact(d)); }

inline SimDiagResult simultaneous_diagonalize(const RatMat& H, const Polyhedron& P, const RatMat& M_basis) {
  if (!H.is_symmetric()) throw NotSymmetricError("simultaneous_diagonalize: H is not symmetric");
  const std::size_t n = H.rows();
  if (P.dim() != n || M_basis.rows() != n) throw DimensionError("simultaneous_diagonalize: dimension mismatch");

  LdlForm first = ldl_decompose(H);
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < n; ++i)
    if (first.D(i, i) != 0) nz.push_back(i);
  RatMat L2 = first.L.select_columns(nz);
  RatVec D2(nz.size());
  for (std::size_t i = 0; i < nz.size(); ++i) D2[i] = first.D(nz[i], nz[i]);

  RatMat span = hstack(M_basis, L2);
  RatMat C0 = span.select_columns(independent_columns(span));

  SimDiagResult out;
  out.d = C0.cols();
  out.subspace_basis = C0;
  if (out.d == 0) {
    out.D = RatMat(0, 0);
    out.ellipsoid.subspace_basis = C0;
    out.ellipsoid.a = RatVec(n);
    out.ellipsoid.L = RatMat(n, 0);
    out.q = 1;
    out.outer_sq = 0;
    out.inner_ok = out.outer_ok = true;
    return out;
  }
  const std::size_t d = out.d;

  out.rounding = inscribe_ellipsoid(P, C0);
  const RatMat& C = out.rounding.ellipsoid.L;
  RatMat M = left_inverse(C) * L2;
  if (C * M != L2) throw Error("simultaneous_diagonalize: factor columns left the subspace");
  RatMat Htilde = M * RatMat::diagonal(D2) * M.transpose();
  LdlForm second = ldl_decompose(Htilde);

  out.q = q_const(d);
  Rat q(out.q);
  out.Ltilde = second.L;
  out.D = second.D / (q * q);
  RatMat L = C * second.L * q;
  out.ellipsoid.subspace_basis = C0;
  out.ellipsoid.a = out.rounding.ellipsoid.a;
  out.ellipsoid.L = L;
  if (L * out.D * L.transpose() != H) throw Error("simultaneous_diagonalize: H = L D L^T failed");

  // In s-coordinates, L^T (x - a) = K (s - c) with K = q Ltilde^T F^T.
  RatMat K = second.L.transpose() * out.rounding.F.transpose() * q;
  const auto& cert = out.rounding.cert;
  RatMat Vm = RatMat::from_columns(d, [&] {
    std::vector<RatVec> vs;
    RatMat C0dag = left_inverse(C0);
    for (const auto& x : cert.simplex_points) vs.push_back(C0dag * x);
    return vs;
  }());
  Rat dd(static_cast<long>(d));
  RatVec lam_c(std::vector<Rat>(d + 1, Rat(1) / (dd + 1)));
  RatVec c = Vm * lam_c;
  out.inner_ok = ellipsoid_in_simplex(K, cert.bary.block(0, 0, d + 1, d), lam_c);
  out.outer_sq = max_quad_over(K, Vm, c, cert.box_vertices);
  out.outer_ok = out.outer_sq <= sandwich_ratio_sq(d);
  if (!out.inner_ok || !out.outer_ok)
    throw Error("simultaneous_diagonalize: sandwich certificate failed");
  return out;
}

/// (w^T a, ||K^{-T} C0^T w||^2) for E = {x in span : ||L^T(x-a)|| <= 1}, K = L^T C0:
/// the maximum of w^T x over E is the first value plus the square root of the second.
inline std::pair<Rat, Rat> ellipsoid_support_sq(const SubspaceEllipsoid& E, const RatVec& w) {
  const RatMat& C0 = E.subspace_basis;
  RatMat K = E.L.transpose() * C0;
  RatVec g = inverse(K).transpose() * transpose_times(C0, w);
  return {dot(w, E.a), norm_sq(g)};
}

}  // namespace miqpa
