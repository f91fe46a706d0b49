#pragma once

/**
 * Spherical form of a full-dimensional bounded MIQP, and the aligned pair /
 * flat direction dichotomy on it.
 *
 * The change of basis is (y, z) = Lfull^T x with Lfull = [L_y | L_z], where
 * H = L_y D L_y^T comes from simultaneous diagonalization with M = span(e^1..e^p)
 * and L_z spans the orthogonal complement of span(L_y). Since the lattice
 * coordinates of y are exactly x_1..x_p, every MILP derived from the form can
 * be posed back in x-space with the original integrality.
 */

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "instance.hpp"
#include "lattice.hpp"
#include "lp.hpp"
#include "matrix.hpp"

namespace miqpa {

struct SphericalForm {
  std::size_t n = 0, d = 0, k = 0, p = 0;
  RatMat D;  // d x d diagonal, |D_11| >= ... >= |D_dd|
  RatVec c, l;
  Polyhedron P;  // in (y, z)
  LatticeBasis lattice;
  RatVec a;
  Int r_d;
  RatMat Lfull;  // (y, z) = Lfull^T x
  RatMat back;   // x = back (y, z), back = Lfull^{-T}
  MiqpInstance source;

  // Containment certificate in y-space.
  std::vector<RatVec> simplex_y;
  std::vector<RatVec> box_vertices;  // barycentric
  Rat outer_sq;
  bool inner_ok = false;
  bool outer_ok = false;

  RatMat Ly() const { return Lfull.block(0, 0, n, d); }
  RatVec to_yz(const RatVec& x) const { return transpose_times(Lfull, x); }
  RatVec to_x(const RatVec& yz) const { return back * yz; }
  RatVec y_of(const RatVec& yz) const { return yz.segment(0, d); }

  Rat objective(const RatVec& yz) const {
    RatVec y = yz.segment(0, d), z = yz.segment(d, n - d);
    Rat v = source.constant + dot(c, y) + dot(l, z);
    for (std::size_t i = 0; i < k; ++i) v += D(i, i) * y[i] * y[i];
    return v;
  }

  /// Some z with (y, z) in P, or nullopt.
  std::optional<RatVec> lift(const RatVec& y) const {
    RatVec base = concat(y, RatVec(n - d));
    if (n == d) return P.contains(base) ? std::optional<RatVec>(base) : std::nullopt;
    RatMat M(n, n - d);
    for (std::size_t j = 0; j < n - d; ++j) M(d + j, j) = 1;
    auto z = lp_feasible_point(P.substitute(base, M));
    if (!z) return std::nullopt;
    return base + M * *z;
  }
};

namespace detail {

/// Inner and outer ball checks for B(a,1) and B(a,r) around the y-space simplex.
inline void certify_spherical(SphericalForm& sf) {
  const std::size_t d = sf.d;
  RatMat Y = RatMat::from_columns(d, sf.simplex_y);
  RatMat aug = vstack(Y, RatMat::from_rows(d + 1, {RatVec(std::vector<Rat>(d + 1, Rat(1)))}));
  RatMat A = inverse(aug);  // lambda(y) = A [y; 1]
  RatVec a1 = concat(sf.a, RatVec{1});
  RatVec lam_a = A * a1;
  sf.inner_ok = true;
  for (std::size_t j = 0; j <= d; ++j) {
    RatVec lin = A.row(j).segment(0, d);
    if (lam_a[j] < 0 || lam_a[j] * lam_a[j] < norm_sq(lin)) sf.inner_ok = false;
  }
  sf.outer_sq = 0;
  for (const auto& lam : sf.box_vertices) {
    Rat q = norm_sq(Y * lam - sf.a);
    if (q > sf.outer_sq) sf.outer_sq = q;
  }
  sf.outer_ok = sf.outer_sq <= Rat(sf.r_d * sf.r_d);
}

}  // namespace detail

/// Requires a full-dimensional bounded region and H != 0 or p > 0.
inline SphericalForm to_spherical_form(const MiqpInstance& inst) {
  inst.validate();
  const std::size_t n = inst.dim();
  const std::size_t p = inst.p;
  Polyhedron region = inst.region();
  if (!is_full_dimensional(region)) throw NotFullDimensionalError("to_spherical_form: region is not full-dimensional");

  RatMat Mb(n, p);
  for (std::size_t i = 0; i < p; ++i) Mb(i, i) = 1;
  SimDiagResult sd = simultaneous_diagonalize(inst.H, region, Mb);
  if (sd.d == 0) throw Error("to_spherical_form: no quadratic or integer part");
  const std::size_t d = sd.d;

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return abs_rat(sd.D(i, i)) > abs_rat(sd.D(j, j));
  });
  RatMat Ly = sd.ellipsoid.L.select_columns(order);
  RatVec Dd(d);
  for (std::size_t i = 0; i < d; ++i) Dd[i] = sd.D(order[i], order[i]);

  SphericalForm sf;
  sf.n = n;
  sf.d = d;
  sf.p = p;
  sf.D = RatMat::diagonal(Dd);
  for (std::size_t i = 0; i < d; ++i)
    if (Dd[i] != 0) ++sf.k;
  sf.r_d = r_const(d);
  sf.Lfull = hstack(Ly, orth_complement_basis(Ly));
  sf.back = inverse(sf.Lfull.transpose());
  RatVec cl = solve(sf.Lfull, inst.h);
  sf.c = cl.segment(0, d);
  sf.l = cl.segment(d, n - d);
  sf.P = region.substitute(RatVec(n), sf.back);
  sf.a = transpose_times(Ly, sd.ellipsoid.a);
  sf.source = inst;

  // b^i = L_y^T e^i, projected onto the orthogonal complement of the image of
  // the part of span(L_y) orthogonal to M.
  RatMat B = Ly.block(0, 0, p, d).transpose();
  if (p == 0) {
    sf.lattice = LatticeBasis(RatMat(d, 0));
  } else if (p == d) {
    sf.lattice = LatticeBasis(B);
  } else {
    RatMat N = Ly * kernel_basis(Ly.block(0, 0, p, d));
    RatMat Nimg = Ly.transpose() * N;
    sf.lattice = lattice_project(LatticeBasis(B), orth_complement_basis(Nimg));
  }

  for (const auto& x : sd.rounding.cert.simplex_points) sf.simplex_y.push_back(transpose_times(Ly, x));
  sf.box_vertices = sd.rounding.cert.box_vertices;
  detail::certify_spherical(sf);
  if (!sf.inner_ok || !sf.outer_ok) throw Error("to_spherical_form: containment certificate failed");
  return sf;
}

struct AlignedPair {
  RatVec y_plus, y_minus;
  /// Full (y, z) points of P above y_plus and y_minus.
  RatVec lift_plus, lift_minus;
};

struct FlatResult {
  RatVec v;     // in y-space, v^T B integral
  RatVec v_x;   // L_y v: the same functional on x, supported on x_1..x_p
  Rat mu, nu;   // min and max of v^T y over P
  Rat width_bound;  // r_d * s_bar(p)
  bool width_ok = false;
};

struct Dichotomy {
  std::optional<AlignedPair> aligned;
  std::optional<FlatResult> flat;
  bool is_aligned() const { return aligned.has_value(); }
};

inline bool is_aligned_pair(const SphericalForm& sf, const AlignedPair& ap) {
  const std::size_t d = sf.d;
  LatticeBasis twice(sf.lattice.matrix() * Rat(2));
  for (const RatVec* y : {&ap.y_plus, &ap.y_minus}) {
    if (norm_sq(*y - sf.a) > 1) return false;
    if (!twice.contains_mod_perp(*y)) return false;
  }
  if (ap.y_plus[0] - ap.y_minus[0] < 1) return false;
  Rat lateral = 0;
  for (std::size_t i = 1; i < d; ++i) lateral += (ap.y_plus[i] - ap.y_minus[i]) * (ap.y_plus[i] - ap.y_minus[i]);
  return lateral <= make_rat(1, 4);
}

inline FlatResult flat_from_direction(const SphericalForm& sf, RatVec v) {
  FlatResult f;
  f.v_x = sf.Ly() * v;
  auto [mn, mx] = range_along(sf.P, concat(v, RatVec(sf.n - sf.d)));
  f.mu = mn;
  f.nu = mx;
  f.width_bound = Rat(sf.r_d) * s_bar(sf.p);
  f.width_ok = mx - mn <= f.width_bound;
  f.v = std::move(v);
  return f;
}

inline Dichotomy aligned_or_flat(const SphericalForm& sf) {
  const std::size_t d = sf.d;
  LatticeBasis twice(sf.lattice.matrix() * Rat(2));
  RatVec shift = RatVec::unit(d, 0) * make_rat(3, 4);
  Dichotomy out;
  std::vector<RatVec> ys;
  for (const RatVec& center : {sf.a + shift, sf.a - shift}) {
    BallOrFlat r = ball_point_or_flat(center, make_rat(1, 4), twice);
    if (!r.is_point()) {
      out.flat = flat_from_direction(sf, r.flat.v * Rat(2));
      if (!out.flat->width_ok) throw Error("aligned_or_flat: flat direction exceeds the width bound");
      return out;
    }
    ys.push_back(std::move(r.point));
  }
  AlignedPair ap;
  ap.y_plus = ys[0];
  ap.y_minus = ys[1];
  auto lp = sf.lift(ap.y_plus), lm = sf.lift(ap.y_minus);
  if (!lp || !lm) throw Error("aligned_or_flat: aligned vector has no lift in P");
  ap.lift_plus = *lp;
  ap.lift_minus = *lm;
  out.aligned = std::move(ap);
  return out;
}

}  // namespace miqpa
