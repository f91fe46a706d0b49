// Acceptance suite: one PASS/FAIL line per criterion.
//
// Bounds are recomputed here with plain integer arithmetic instead of
// calling the library's constants, and containment claims are re-checked
// with LPs and vertex enumeration.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <miqpa/miqpa.hpp>

#include "support.hpp"

using namespace miqpa;
using miqpa::testing::Rng;

namespace {

using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Independent integer helpers

Int sqrt_floor(const Int& x) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

// Least integer whose square is at least x (x >= 0 rational).
Int sqrt_ceil_rat(const Rat& x) {
  Int guess = sqrt_floor(Int(x.get_num() / x.get_den()));
  while (Rat(guess * guess) < x) ++guess;
  while (guess > 0 && Rat((guess - 1) * (guess - 1)) >= x) --guess;
  return guess;
}

Int ipow(long b, unsigned long e) {
  Int r = 1;
  for (unsigned long i = 0; i < e; ++i) r *= b;
  return r;
}

Int q_of(std::size_t d) { return sqrt_ceil_rat(Rat(ipow(5 * static_cast<long>(d), d))); }

Int r_of(std::size_t d) {
  Int q = q_of(d);
  Int dd(static_cast<long>(d));
  return sqrt_ceil_rat(Rat(4 * dd * dd * dd * q * q * q * q));
}

Int phi_of(std::size_t d, std::size_t k, const Rat& eps) {
  Int r = r_of(d);
  return sqrt_ceil_rat(Rat(16 * r * r * Int(static_cast<long>(k))) / (3 * eps));
}

bool unimodular(const RatMat& T) {
  for (std::size_t i = 0; i < T.rows(); ++i)
    for (std::size_t j = 0; j < T.cols(); ++j)
      if (!is_integer(T(i, j))) return false;
  Rat d = miqpa::testing::cofactor_det(T);
  return d == 1 || d == -1;
}

RatMat random_basis(Rng& rng, std::size_t d, std::size_t p, long max_den) {
  for (;;) {
    RatMat b = rng.mat(d, p, -9, 9, max_den);
    if (rank(b) == p) return b;
  }
}

// ---------------------------------------------------------------------------
// Instance corpus

MiqpInstance box_instance(RatMat H, RatVec h, std::size_t p, const Rat& lo, const Rat& hi) {
  const std::size_t n = h.dim();
  MiqpInstance inst;
  inst.H = std::move(H);
  inst.h = std::move(h);
  inst.p = p;
  inst.P = Polyhedron::free_space(n);
  inst.lo = RatVec(std::vector<Rat>(n, lo));
  inst.hi = RatVec(std::vector<Rat>(n, hi));
  return inst;
}

RatMat random_low_rank(Rng& rng, std::size_t n, std::size_t k) {
  for (;;) {
    RatMat H(n, n);
    for (std::size_t t = 0; t < k; ++t) {
      RatVec u = rng.vec(n, -2, 2, 2);
      Rat s = rng.uniform(0, 1) ? Rat(1) : Rat(-1);
      H += RatMat::from_columns(n, {u}) * RatMat::from_rows(n, {u}) * s;
    }
    if (rank(H) == k) return H;
  }
}

// Bounded polytope around the origin: a box, per-variable bounds and a few
// random cuts with positive right-hand sides.
MiqpInstance random_miqp(Rng& rng, std::size_t n, std::size_t p, std::size_t k) {
  MiqpInstance inst = box_instance(random_low_rank(rng, n, k), rng.vec(n, -4, 4, 3), p, 0, 0);
  for (std::size_t i = 0; i < n; ++i) {
    inst.lo[i] = -rng.rat(1, 4, 2);
    inst.hi[i] = rng.rat(1, 4, 2);
  }
  int cuts = static_cast<int>(rng.uniform(0, 3));
  for (int c = 0; c < cuts; ++c) {
    RatVec a = rng.vec(n, -3, 3);
    if (a.is_zero()) continue;
    inst.P.add_row(a, rng.rat(1, 6, 2));
  }
  return inst;
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(rng.uniform(static_cast<long>(lo), static_cast<long>(hi)));
}

// ---------------------------------------------------------------------------
// Reporting

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;  // 0: none
  std::function<Outcome()> run;
};

// ---------------------------------------------------------------------------
// 1-3: symmetric decomposition

Outcome symdec_identity() {
  Rng rng(101);
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = pick(rng, 1, 8);
    RatMat H = rng.symmetric(n, -9, 9, 9);
    auto sd = symmetric_decompose(H);
    RatMat lhs = miqpa::testing::naive_matmul(miqpa::testing::naive_matmul(sd.B, H), sd.B.transpose());
    if (!(lhs == sd.D) || !sd.D.is_diagonal() || rank(sd.D) != rank(H)) ++bad;
  }
  return {bad == 0, "200 matrices, " + std::to_string(bad) + " violations"};
}

Outcome symdec_frobenius() {
  Rng rng(101);  // same corpus
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t n = pick(rng, 1, 8);
    RatMat H = rng.symmetric(n, -9, 9, 9);
    auto sd = symmetric_decompose(H);
    Rat bound(ipow(5 * static_cast<long>(n), n));
    Rat fb = 0, fi = 0;
    RatMat Bi = inverse(sd.B);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        fb += sd.B(i, j) * sd.B(i, j);
        fi += Bi(i, j) * Bi(i, j);
      }
    if (fb > bound || fi > bound) ++bad;
  }
  return {bad == 0, "200 matrices, " + std::to_string(bad) + " violations"};
}

Outcome symdec_subdeterminants() {
  Rng rng(103);
  int bad = 0, entries = 0;
  auto lead_plus = [](std::size_t k, std::size_t extra) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < k; ++i) v.push_back(i);
    v.push_back(extra);
    return v;
  };
  for (int t = 0; t < 50; ++t) {
    RatMat H = rng.symmetric(4, -9, 9);
    auto sd = symmetric_decompose(H, true);
    for (std::size_t k = 0; k + 1 < 4; ++k) {
      const std::size_t kk = k + 1;
      RatMat G = sd.pivot_products[k] * H * sd.pivot_products[k].transpose();
      std::vector<std::size_t> lead(kk);
      for (std::size_t i = 0; i < kk; ++i) lead[i] = i;
      Rat dk = miqpa::testing::cofactor_det(G.select_rows(lead).select_columns(lead));
      if (dk == 0) continue;
      for (std::size_t i = kk; i < 4; ++i)
        for (std::size_t j = kk; j < 4; ++j) {
          Rat num = miqpa::testing::cofactor_det(G.select_rows(lead_plus(kk, i)).select_columns(lead_plus(kk, j)));
          ++entries;
          if (sd.history[k](i, j) != num / dk) ++bad;
        }
    }
  }
  return {bad == 0 && entries > 0, std::to_string(entries) + " entries compared, " + std::to_string(bad) + " mismatches"};
}

// ---------------------------------------------------------------------------
// 4-5: lattices

Outcome lll() {
  Rng rng(104);
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t p = pick(rng, 1, 4);
    std::size_t d = p + pick(rng, 0, 2);
    LatticeBasis lb(random_basis(rng, d, p, 5));
    auto red = lll_reduce(lb);
    const RatMat& R = red.basis.matrix();
    // Recompute Gram-Schmidt from scratch.
    std::vector<RatVec> g;
    RatMat mu(p, p);
    bool ok = true;
    for (std::size_t i = 0; i < p; ++i) {
      RatVec gi = R.col(i);
      for (std::size_t j = 0; j < i; ++j) {
        mu(i, j) = dot(R.col(i), g[j]) / norm_sq(g[j]);
        gi -= g[j] * mu(i, j);
        if (abs_rat(mu(i, j)) > make_rat(1, 2)) ok = false;
      }
      g.push_back(gi);
    }
    for (std::size_t i = 1; i < p; ++i) {
      Rat lhs = norm_sq(g[i]) + mu(i, i - 1) * mu(i, i - 1) * norm_sq(g[i - 1]);
      if (lhs < make_rat(3, 4) * norm_sq(g[i - 1])) ok = false;
    }
    Rat det_sq = 1;
    for (const auto& gi : g) det_sq *= norm_sq(gi);
    Rat prod = 1;
    for (std::size_t i = 0; i < p; ++i) prod *= norm_sq(R.col(i));
    if (prod > Rat(ipow(2, p * (p - 1) / 2)) * det_sq) ok = false;
    if (!unimodular(red.transform) || !(lb.matrix() * red.transform == R)) ok = false;
    RatMat B = lb.matrix();
    if (miqpa::testing::cofactor_det(B.transpose() * B) != det_sq) ok = false;
    if (!ok) ++bad;
  }
  return {bad == 0, "100 bases, " + std::to_string(bad) + " violations"};
}

Outcome ball_or_flat() {
  Rng rng(105);
  int bad = 0, points = 0, flats = 0;
  for (int t = 0; t < 100; ++t) {
    std::size_t p = pick(rng, 1, 2);
    std::size_t d = p + pick(rng, 0, 3 - p);
    LatticeBasis lb(random_basis(rng, d, p, 4));
    RatVec a = rng.vec(d, -20, 20, 7);
    Rat delta = rng.rat(0, 8, 4);
    auto res = ball_point_or_flat(a, delta, lb);
    bool ok = true;
    if (res.is_point()) {
      ++points;
      // y - proj(y) onto span(B) must be B z with z integral after projection.
      ok = norm_sq(res.point - a) <= delta * delta;
      RatMat B = lb.matrix();
      RatVec z = solve(B.transpose() * B, transpose_times(B, res.point));
      for (const auto& c : z) ok = ok && is_integer(c);
    } else {
      ++flats;
      RatVec vb = transpose_times(lb.matrix(), res.flat.v);
      for (const auto& c : vb) ok = ok && is_integer(c);
      ok = ok && !vb.is_zero();
      Rat w_sq = 4 * delta * delta * norm_sq(res.flat.v);
      Rat bound = Rat(Int(static_cast<long>(p * p)) * ipow(2, p * (p - 1) / 2));
      ok = ok && w_sq <= bound;
    }
    if (!ok) ++bad;
  }
  return {bad == 0, std::to_string(points) + " point / " + std::to_string(flats) + " flat, " + std::to_string(bad) +
                        " violations"};
}

// ---------------------------------------------------------------------------
// 6-8: geometry and the spherical form

Polyhedron random_polytope(Rng& rng, std::size_t n) {
  long r = rng.uniform(2, 6);
  Polyhedron P = Polyhedron::box(RatVec(std::vector<Rat>(n, Rat(-r))), RatVec(std::vector<Rat>(n, Rat(r))));
  int extra = static_cast<int>(rng.uniform(0, 4));
  for (int c = 0; c < extra; ++c) {
    RatVec a = rng.vec(n, -4, 4, 3);
    if (!a.is_zero()) P.add_row(a, rng.rat(1, 10, 3));
  }
  return P;
}

// max over the ellipsoid {||L^T(x-a)|| <= 1} of w^T x is w^T a + ||L^{-1} w|| (L square).
bool facet_holds(const RatMat& L, const RatVec& a, const RatVec& w, const Rat& rhs) {
  RatVec g = solve(L, w);
  Rat slack = rhs - dot(w, a);
  return slack >= 0 && slack * slack >= norm_sq(g);
}

Outcome ellipsoid_sandwich() {
  Rng rng(106);
  int bad = 0, done = 0;
  while (done < 30) {
    std::size_t d = pick(rng, 1, 3);
    Polyhedron P = random_polytope(rng, d);
    if (!is_full_dimensional(P)) continue;
    ++done;
    RatMat H = rng.symmetric(d, -4, 4, 3);
    auto r = simultaneous_diagonalize(H, P, RatMat::identity(d));
    bool ok = r.d == d && r.inner_ok;
    const RatMat& L = r.ellipsoid.L;  // d x d since the subspace is everything
    for (std::size_t i = 0; ok && i < P.num_rows(); ++i) ok = facet_holds(L, r.ellipsoid.a, P.W.row(i), P.w[i]);
    Int q = q_of(d);
    Int dd(static_cast<long>(d));
    Rat ratio_sq(4 * dd * dd * dd * q * q * q * q);
    ok = ok && sandwich_ratio_sq(d) == ratio_sq;
    for (const auto& v : enumerate_vertices(P))
      if (norm_sq(transpose_times(L, v - r.ellipsoid.a)) > ratio_sq) ok = false;
    ok = ok && L * r.D * L.transpose() == H;
    if (!ok) ++bad;
  }
  return {bad == 0, "30 polytopes, " + std::to_string(bad) + " violations"};
}

// Points of the region: convex combinations of vertices with random weights.
std::vector<RatVec> random_region_points(Rng& rng, const Polyhedron& region, int count) {
  auto verts = enumerate_vertices(region);
  std::vector<RatVec> out;
  for (int t = 0; t < count; ++t) {
    RatVec x(region.dim());
    Rat total = 0;
    std::vector<Rat> w;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      w.push_back(Rat(rng.uniform(0, 5)));
      total += w.back();
    }
    if (total == 0) {
      w[0] = 1;
      total = 1;
    }
    for (std::size_t i = 0; i < verts.size(); ++i) x += verts[i] * (w[i] / total);
    out.push_back(x);
  }
  return out;
}

Outcome spherical_form() {
  Rng rng(107);
  int bad = 0, done = 0, points = 0;
  while (done < 30) {
    std::size_t n = pick(rng, 1, 4);
    std::size_t k = pick(rng, 1, std::min<std::size_t>(2, n));
    std::size_t p = pick(rng, 0, std::min<std::size_t>(2, n));
    MiqpInstance inst = random_miqp(rng, n, p, k);
    Polyhedron region = inst.region();
    if (!is_full_dimensional(region)) continue;
    ++done;
    SphericalForm sf = to_spherical_form(inst);
    bool ok = sf.inner_ok && sf.outer_ok;
    for (std::size_t i = 1; i < sf.d; ++i) ok = ok && abs_rat(sf.D(i - 1, i - 1)) >= abs_rat(sf.D(i, i));
    // Inner ball: support of proj_y P along random directions u exceeds u^T a + |u|.
    for (int t = 0; t < 12; ++t) {
      RatVec u = rng.vec(sf.d, -5, 5, 3);
      if (u.is_zero()) continue;
      auto r = lp_optimize(sf.P, concat(u, RatVec(n - sf.d)), Sense::maximize);
      Rat gap = *r.value - dot(u, sf.a);
      ok = ok && gap >= 0 && gap * gap >= norm_sq(u);
    }
    // Outer ball on every vertex.
    Rat rr(r_of(sf.d) * r_of(sf.d));
    for (const auto& v : enumerate_vertices(region)) ok = ok && norm_sq(sf.y_of(sf.to_yz(v)) - sf.a) <= rr;
    for (const auto& x : random_region_points(rng, region, 10)) {
      ++points;
      RatVec yz = sf.to_yz(x);
      ok = ok && sf.objective(yz) == inst.objective(x) && sf.P.contains(yz);
    }
    if (!ok) ++bad;
  }
  return {bad == 0, "30 instances, " + std::to_string(points) + " points, " + std::to_string(bad) + " violations"};
}

// A random point of P above y (a vertex of the fiber for a random objective).
std::optional<RatVec> random_lift(Rng& rng, const SphericalForm& sf, const RatVec& y) {
  Polyhedron fiber = sf.P;
  for (std::size_t i = 0; i < sf.d; ++i) fiber.add_equality(RatVec::unit(sf.n, i), y[i]);
  auto r = lp_optimize(fiber, concat(RatVec(sf.d), rng.vec(sf.n - sf.d, -3, 3)), Sense::minimize);
  if (r.status != LpStatus::optimal) return std::nullopt;
  return r.point;
}

Outcome aligned_gap() {
  Rng rng(108);
  int bad = 0, done = 0, from_driver = 0;
  while (done < 50) {
    std::size_t n = pick(rng, 1, 3);
    std::size_t k = pick(rng, 1, std::min<std::size_t>(2, n));
    bool wide = done % 3 == 2 && n >= 2;
    std::size_t p = wide ? 1 : 0;
    MiqpInstance inst = random_miqp(rng, n, p, k);
    if (wide) {
      inst.lo = RatVec(std::vector<Rat>(n, Rat(-100000)));
      inst.hi = RatVec(std::vector<Rat>(n, Rat(100000)));
      inst.P = Polyhedron::free_space(n);
    }
    if (!is_full_dimensional(inst.region())) continue;
    SphericalForm sf = to_spherical_form(inst);
    AlignedPair ap;
    if (wide) {
      Dichotomy dc = aligned_or_flat(sf);
      if (!dc.is_aligned()) continue;
      ap = *dc.aligned;
      ++from_driver;
    } else {
      // Any y is in the lattice when p = 0; build y+- by hand.
      RatVec lateral = rng.vec(sf.d, -1, 1, 8) * make_rat(1, 8);
      lateral[0] = 0;
      Rat t = make_rat(1, 2) + rng.rat(0, 1, 4) / 4;  // in [1/2, 3/4]
      ap.y_plus = sf.a + RatVec::unit(sf.d, 0) * t + lateral;
      ap.y_minus = sf.a - RatVec::unit(sf.d, 0) * t;
    }
    if (!is_aligned_pair(sf, ap)) {
      ++bad;
      ++done;
      continue;
    }
    auto lp = random_lift(rng, sf, ap.y_plus), lm = random_lift(rng, sf, ap.y_minus);
    ++done;
    if (!lp || !lm) {
      ++bad;
      continue;
    }
    RatVec mid = (*lp + *lm) * make_rat(1, 2);
    Rat f1 = sf.objective(*lp), f2 = sf.objective(*lm), f3 = sf.objective(mid);
    Rat gap = std::max({f1, f2, f3}) - std::min({f1, f2, f3});
    if (16 * gap < 3 * abs_rat(sf.D(0, 0))) ++bad;
  }
  return {bad == 0, "50 pairs (" + std::to_string(from_driver) + " from aligned_or_flat), " + std::to_string(bad) +
                        " violations"};
}

// ---------------------------------------------------------------------------
// 9-12: end to end

struct EndToEnd {
  bool ran = false;
  int solves = 0, infeasible = 0, pass = 0, fail = 0, inconclusive = 0, resolved = 0;
  int bound_violations = 0;
  std::size_t max_enqueued = 0;
  double seconds = 0;
};

EndToEnd& end_to_end() {
  static EndToEnd e;
  if (e.ran) return e;
  e.ran = true;
  auto t0 = Clock::now();
  Rng rng(109);
  int done = 0;
  while (done < 40) {
    std::size_t n = pick(rng, 1, 4);
    std::size_t k = pick(rng, 0, std::min<std::size_t>(2, n));
    std::size_t p = pick(rng, 0, std::min<std::size_t>(2, n));
    MiqpInstance inst = random_miqp(rng, n, p, k);
    if (!lp_feasible_point(inst.region())) continue;
    ++done;
    OracleReport rep = oracle_bracket(inst, make_rat(1, 128));
    for (Rat eps : {Rat(1), make_rat(1, 2), make_rat(1, 4)}) {
      ++e.solves;
      SolveResult res = solve(inst, eps);
      e.max_enqueued = std::max(e.max_enqueued, res.stats.enqueued);
      // Bound with floor(r_{k+p} s_p) computed from its square.
      Int r = r_of(k + p);
      Int pp(static_cast<long>(p));
      Int base = sqrt_floor(r * r * 196 * pp * pp * ipow(2, p * (p - 1) / 2)) + 1;
      Int bound = 1;
      for (std::size_t i = 0; i <= p; ++i) bound *= base;
      if (Int(static_cast<long>(res.stats.enqueued)) > bound) ++e.bound_violations;
      if (!res.feasible()) {
        ++e.infeasible;
        if (rep.feasible) ++e.fail;
        else ++e.pass;
        continue;
      }
      OracleReport r128 = rep;
      Verdict v = check_solution(inst, res.solution->x, eps, r128);
      if (v == Verdict::pass) ++e.pass;
      else if (v == Verdict::inconclusive) {
        ++e.inconclusive;
        OracleReport fine = oracle_bracket(inst, make_rat(1, 512));
        if (check_solution(inst, res.solution->x, eps, fine) == Verdict::pass) ++e.resolved;
        else ++e.fail;
      } else {
        ++e.fail;
      }
    }
  }
  e.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return e;
}

Outcome epsilon_guarantee() {
  const EndToEnd& e = end_to_end();
  bool ok = e.fail == 0 && e.inconclusive * 10 < e.solves && e.resolved == e.inconclusive && e.seconds < 600;
  std::ostringstream os;
  os << e.solves << " solves, " << e.infeasible << " reported infeasible, " << e.pass << " PASS, " << e.fail
     << " FAIL, " << e.inconclusive << " INCONCLUSIVE (" << e.resolved << " resolved at 1/512), " << e.seconds << " s";
  return {ok, os.str()};
}

Outcome iteration_count() {
  const EndToEnd& e = end_to_end();
  return {e.bound_violations == 0, std::to_string(e.solves) + " solves, max enqueued " +
                                       std::to_string(e.max_enqueued) + ", " + std::to_string(e.bound_violations) +
                                       " over the bound"};
}

Outcome pure_milp() {
  Rng rng(111);
  int bad = 0, done = 0, infeasible = 0;
  while (done < 50) {
    std::size_t n = pick(rng, 1, 4);
    std::size_t p = pick(rng, 0, std::min<std::size_t>(2, n));
    MiqpInstance inst = random_miqp(rng, n, p, 1);
    inst.H = RatMat(n, n);
    ++done;
    OracleReport rep = oracle_bracket(inst, make_rat(1, 128));
    SolveResult res = solve(inst, make_rat(1, 2));
    if (!rep.feasible) {
      ++infeasible;
      if (res.feasible()) ++bad;
      continue;
    }
    if (!res.feasible() || res.solution->value != rep.f_star_lo || rep.f_star_lo != rep.f_star_hi) ++bad;
  }
  return {bad == 0, "50 instances (" + std::to_string(infeasible) + " infeasible), " + std::to_string(bad) +
                        " mismatches"};
}

Outcome mesh_count() {
  Rng rng(112);
  int bad = 0, calls = 0;
  std::size_t most = 0;
  int mixed = 0;
  while (calls < 45) {
    std::size_t n = pick(rng, 1, 3);
    std::size_t k = pick(rng, 1, std::min<std::size_t>(2, n));
    // Every other form has an integer variable on a box wide enough to be aligned.
    bool wide = calls % 2 == 1 && n >= 2;
    MiqpInstance inst = random_miqp(rng, n, wide ? 1 : 0, k);
    if (wide) {
      inst.lo = RatVec(std::vector<Rat>(n, Rat(-100000)));
      inst.hi = RatVec(std::vector<Rat>(n, Rat(100000)));
    }
    if (!is_full_dimensional(inst.region())) continue;
    SphericalForm sf = to_spherical_form(inst);
    Dichotomy dc = aligned_or_flat(sf);
    if (!dc.is_aligned()) continue;
    if (sf.p > 0) ++mixed;
    for (Rat eps : {Rat(1), make_rat(1, 2), make_rat(1, 4)}) {
      ++calls;
      MeshResult m = mesh_approximate(sf, *dc.aligned, eps);
      Int phi = phi_of(sf.d, sf.k, eps);
      Int boxes = 1;
      for (std::size_t i = 0; i < sf.k; ++i) boxes *= phi;
      most = std::max(most, m.milp_solves);
      if (m.phi != phi || m.box_count != boxes || Int(static_cast<long>(m.milp_solves)) > boxes) ++bad;
    }
  }
  return {bad == 0 && mixed > 0, std::to_string(calls) + " mesh calls (" + std::to_string(mixed) +
                                     " forms with integer variables), at most " + std::to_string(most) +
                        " subproblems solved, " + std::to_string(bad) + " over phi^k"};
}

}  // namespace

int main() {
  std::vector<Criterion> all = {
      {1, "symmetric decomposition identity", 10, symdec_identity},
      {2, "Frobenius bound on B and B^-1", 0, symdec_frobenius},
      {3, "intermediate entries are subdeterminant ratios", 0, symdec_subdeterminants},
      {4, "LLL reduction", 0, lll},
      {5, "ball point or flat direction", 0, ball_or_flat},
      {6, "ellipsoid sandwich", 60, ellipsoid_sandwich},
      {7, "spherical form", 0, spherical_form},
      {8, "aligned gap", 0, aligned_gap},
      {9, "end-to-end epsilon guarantee", 600, epsilon_guarantee},
      {10, "iteration bound", 0, iteration_count},
      {11, "pure MILP exactness", 0, pure_milp},
      {12, "mesh subproblem count", 0, mesh_count},
  };
  int failed = 0;
  for (auto& c : all) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget_s > 0 && s >= c.budget_s) {
      o.pass = false;
      o.detail += ", over the time budget";
    }
    if (!o.pass) ++failed;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", s);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail << " ["
              << secs << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
