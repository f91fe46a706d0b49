#pragma once

/**
 * The approximation scheme proper.
 *
 *  - reduce_hyperplane / presolve_full_dim: parametrize the mixed-integer
 *    points of a hyperplane and use that to make the region full-dimensional.
 *  - mesh_approximate: split [a_i - r_d, a_i + r_d] into phi equal pieces for
 *    each quadratic coordinate, replace y_i^2 by its secant on every box and
 *    keep the best box MILP. Boxes are searched best-bound first with exact
 *    LP bounds, so the answer is the box optimum the exhaustive scheme would
 *    return (ties: smallest box index) while usually solving far fewer MILPs.
 *  - decompose_flat: one instance per integer value of v^T y.
 *  - solve: the work-list driver tying the steps together.
 */

#include <algorithm>
#include <cstddef>
#include <functional>
#include <future>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "log.hpp"
#include "lp.hpp"
#include "matrix.hpp"
#include "milp.hpp"
#include "spherical.hpp"

namespace miqpa {

// ---------------------------------------------------------------------------
// Hyperplane reduction and presolve

struct HyperplaneReduction {
  bool empty = false;
  AffineMap map;  // x = offset + M t over all of {a^T x = beta, x_1..x_p integral}
  std::size_t p_new = 0;
};

/// Parametrizes S = {x in Z^p x R^{n-p} : a^T x = beta}.
inline HyperplaneReduction reduce_hyperplane(const RatVec& a, const Rat& beta, std::size_t p) {
  const std::size_t n = a.dim();
  if (a.is_zero()) throw Error("reduce_hyperplane: zero normal");
  if (p > n) throw DimensionError("reduce_hyperplane: p exceeds n");
  HyperplaneReduction out;

  std::size_t j = n;
  for (std::size_t i = p; i < n; ++i)
    if (a[i] != 0) {
      j = i;
      break;
    }
  if (j < n) {
    // Solve for the continuous x_j; the others become the parameters in order.
    out.p_new = p;
    out.map.offset = RatVec::unit(n, j) * (beta / a[j]);
    out.map.M = RatMat(n, n - 1);
    std::size_t col = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      out.map.M(i, col) = 1;
      out.map.M(j, col) = -a[i] / a[j];
      ++col;
    }
    return out;
  }

  // Integer coefficients only: scale to a primitive integer vector.
  Int den = 1;
  for (std::size_t i = 0; i < p; ++i) den = lcm_int(den, a[i].get_den());
  std::vector<Int> c(p);
  Int g = 0;
  for (std::size_t i = 0; i < p; ++i) {
    Rat s = a[i] * Rat(den);
    c[i] = s.get_num();
    g = gcd_int(g, c[i]);
  }
  for (auto& ci : c) ci /= g;
  Rat bt = beta * Rat(den) / Rat(g);
  if (!is_integer(bt)) {
    out.empty = true;
    return out;
  }

  // Unimodular U with c^T U = e_1^T, built from 2x2 extended-gcd steps.
  RatMat U = RatMat::identity(p);
  for (std::size_t k = 1; k < p; ++k) {
    if (c[k] == 0) continue;
    Int s, t;
    Int gg = ext_gcd(c[0], c[k], s, t);
    Int f0 = -c[k] / gg, fk = c[0] / gg;
    for (std::size_t r = 0; r < p; ++r) {
      Rat u0 = U(r, 0), uk = U(r, k);
      U(r, 0) = Rat(s) * u0 + Rat(t) * uk;
      U(r, k) = Rat(f0) * u0 + Rat(fk) * uk;
    }
    c[0] = gg;
    c[k] = 0;
  }
  if (c[0] < 0)
    for (std::size_t r = 0; r < p; ++r) U(r, 0) = -U(r, 0);

  out.p_new = p - 1;
  out.map.offset = RatVec(n);
  for (std::size_t r = 0; r < p; ++r) out.map.offset[r] = U(r, 0) * bt;
  out.map.M = RatMat(n, n - 1);
  for (std::size_t k = 1; k < p; ++k)
    for (std::size_t r = 0; r < p; ++r) out.map.M(r, k - 1) = U(r, k);
  for (std::size_t i = p; i < n; ++i) out.map.M(i, i - 1) = 1;
  return out;
}

struct Presolved {
  bool empty = false;  // an implied hyperplane holds no mixed-integer point
  MiqpInstance inst;
  AffineMap map;  // original x = map(t)
  std::vector<std::string> provenance;
};

/// Substitutes implied equalities away until the region is full-dimensional.
inline Presolved presolve_full_dim(const MiqpInstance& in) {
  Presolved out;
  out.inst = in;
  out.map = AffineMap::identity(in.dim());
  while (out.inst.dim() > 0) {
    Polyhedron region = out.inst.region();
    std::optional<std::size_t> pick;
    for (auto i : implied_equalities(region))
      if (!region.W.row(i).is_zero()) {
        pick = i;
        break;
      }
    if (!pick) break;
    RatVec a = region.W.row(*pick);
    const Rat& beta = region.w[*pick];
    auto red = reduce_hyperplane(a, beta, out.inst.p);
    std::ostringstream os;
    os << "hyperplane " << a << " = " << to_string(beta) << ": n " << out.inst.dim() << " -> "
       << out.inst.dim() - 1;
    if (red.empty) {
      os << ", no mixed-integer point";
      out.provenance.push_back(os.str());
      out.empty = true;
      return out;
    }
    os << ", p " << out.inst.p << " -> " << red.p_new;
    out.provenance.push_back(os.str());
    out.inst = substitute(out.inst, red.map, red.p_new);
    out.map = out.map.compose(red.map);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mesh partition

struct MeshOptions {
  std::size_t jobs = 1;
};

struct MeshResult {
  std::optional<RatVec> x;   // in the coordinates of sf.source
  std::optional<RatVec> yz;
  std::optional<Rat> value;  // true objective at x
  std::optional<Rat> box_value;  // g + c^T y + l^T z at x on its box
  std::vector<Int> box_index;    // 1-based (j_1..j_k)
  Int phi;
  Int box_count;  // phi^k
  std::size_t milp_solves = 0;
  std::size_t nodes = 0;
  std::size_t lp_solves = 0;
  // Certified chain.
  Rat ratio;          // 16 k r_d^2 / (3 phi^2)
  bool ratio_ok = false;
  bool count_ok = false;
  Rat aligned_gap;    // max - min of f over the aligned triple
  bool gap_ok = false;
  bool sandwich_ok = false;  // g <= f <= g + gamma k r^2/phi^2 at the returned point
  std::vector<std::string> log;
};

namespace detail {

struct MeshNode {
  std::vector<Int> lo, hi;  // index ranges, inclusive
  Rat bound;
};

inline bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

inline MeshResult mesh_approximate(const SphericalForm& sf, const AlignedPair& pair, const Rat& eps,
                                   const MeshOptions& opt = {}) {
  if (eps <= 0 || eps > 1) throw Error("mesh_approximate: epsilon must lie in (0, 1]");
  const std::size_t k = sf.k;
  if (k == 0) throw Error("mesh_approximate: objective has no quadratic part");
  const MiqpInstance& src = sf.source;
  const RatMat Ly = sf.Ly();
  const Polyhedron region = src.region();
  const std::vector<bool> mask = src.integer_mask();

  MeshResult out;
  out.phi = phi_const(sf.d, k, eps);
  out.box_count = pow_int(out.phi, k);
  const Rat r(sf.r_d);
  const Rat phi(out.phi);
  const Rat step = 2 * r / phi;
  const Rat gamma = abs_rat(sf.D(0, 0));
  const Rat rr_pp = r * r / (phi * phi);  // (step/2)^2
  std::size_t npos = 0;
  Rat neg_sum = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (sf.D(i, i) > 0) ++npos;
    else neg_sum -= sf.D(i, i);
  }
  const Rat leaf_shift = gamma * rr_pp * Rat(static_cast<long>(npos));
  out.ratio = Rat(16 * static_cast<long>(k)) * r * r / (3 * phi * phi);
  out.ratio_ok = out.ratio <= eps;

  std::vector<RatVec> ycol(k);
  for (std::size_t i = 0; i < k; ++i) ycol[i] = Ly.col(i);
  auto left = [&](std::size_t i, const Int& j) -> Rat { return sf.a[i] - r + step * Rat(j - 1); };
  auto right = [&](std::size_t i, const Int& j) -> Rat { return sf.a[i] - r + step * Rat(j); };

  // Secant objective on a node's box, and the constant it carries.
  auto node_problem = [&](const detail::MeshNode& nd, Polyhedron& P, RatVec& obj, Rat& cst) {
    P = region;
    obj = src.h;
    cst = src.constant;
    for (std::size_t i = 0; i < k; ++i) {
      Rat l = left(i, nd.lo[i]), u = right(i, nd.hi[i]);
      P.add_row(ycol[i], u);
      P.add_row(-ycol[i], -l);
      obj += ycol[i] * (sf.D(i, i) * (l + u));
      cst -= sf.D(i, i) * l * u;
    }
  };
  auto is_leaf = [&](const detail::MeshNode& nd) {
    for (std::size_t i = 0; i < k; ++i)
      if (nd.lo[i] != nd.hi[i]) return false;
    return true;
  };
  // Lower bound on every box MILP value inside the node; nullopt if the node is empty.
  auto bound = [&](const detail::MeshNode& nd) -> std::optional<Rat> {
    Polyhedron P;
    RatVec obj;
    Rat cst;
    node_problem(nd, P, obj, cst);
    auto lp = lp_optimize(P, obj);
    if (!lp.optimal()) return std::nullopt;
    Rat slack = leaf_shift;
    if (!is_leaf(nd)) {
      slack += rr_pp * neg_sum;
      for (std::size_t i = 0; i < k; ++i) {
        if (sf.D(i, i) <= 0) continue;
        Rat w = right(i, nd.hi[i]) - left(i, nd.lo[i]);
        slack += sf.D(i, i) * w * w / 4;
      }
    }
    return *lp.value + cst - slack;
  };
  struct LeafOutcome {
    std::optional<RatVec> x;
    Rat value;
  };
  auto solve_leaf = [&](const detail::MeshNode& nd) {
    Polyhedron P;
    RatVec obj;
    Rat cst;
    node_problem(nd, P, obj, cst);
    auto res = milp_solve(MilpInstance{obj, P, mask, {}, {}});
    LeafOutcome lo;
    if (res.optimal()) {
      lo.x = res.point;
      lo.value = *res.value + cst - leaf_shift;
    }
    return lo;
  };

  detail::MeshNode root;
  for (std::size_t i = 0; i < k; ++i) {
    auto [mn, mx] = range_along(region, ycol[i]);
    Rat tlo = (mn - (sf.a[i] - r)) / step, thi = (mx - (sf.a[i] - r)) / step;
    Int jl = ceil_rat(tlo), jh = floor_rat(thi) + 1;
    root.lo.push_back(std::max(jl, Int(1)));
    root.hi.push_back(std::min(jh, out.phi));
  }

  auto worse = [](const detail::MeshNode& x, const detail::MeshNode& y) {
    if (x.bound != y.bound) return x.bound > y.bound;
    return detail::lex_less(y.lo, x.lo);
  };
  std::priority_queue<detail::MeshNode, std::vector<detail::MeshNode>, decltype(worse)> queue(worse);
  if (auto b = bound(root)) {
    root.bound = *b;
    queue.push(root);
  }
  ++out.lp_solves;

  std::optional<Rat> best;
  std::vector<Int> best_idx;
  auto dominated = [&](const detail::MeshNode& nd) {
    if (!best) return false;
    if (nd.bound > *best) return true;
    return nd.bound == *best && detail::lex_less(best_idx, nd.lo);
  };

  const std::size_t jobs = std::max<std::size_t>(1, opt.jobs);
  while (!queue.empty()) {
    std::vector<detail::MeshNode> batch;
    while (!queue.empty() && batch.size() < jobs) {
      detail::MeshNode nd = queue.top();
      queue.pop();
      if (dominated(nd)) continue;
      batch.push_back(std::move(nd));
    }
    if (batch.empty()) break;
    out.nodes += batch.size();

    // Each task returns either a leaf outcome or up to two children.
    struct Work {
      std::optional<LeafOutcome> leaf;
      std::vector<detail::MeshNode> kids;
      std::size_t lps = 0;
    };
    auto run = [&](const detail::MeshNode& nd) {
      Work wk;
      if (is_leaf(nd)) {
        wk.leaf = solve_leaf(nd);
        return wk;
      }
      std::size_t axis = 0;
      Int widest = -1;
      for (std::size_t i = 0; i < k; ++i) {
        Int w = nd.hi[i] - nd.lo[i];
        if (w > widest) {
          widest = w;
          axis = i;
        }
      }
      Int mid = (nd.lo[axis] + nd.hi[axis]) / 2;
      detail::MeshNode a = nd, b = nd;
      a.hi[axis] = mid;
      b.lo[axis] = mid + 1;
      for (auto* c : {&a, &b}) {
        ++wk.lps;
        if (auto bd = bound(*c)) {
          c->bound = *bd;
          wk.kids.push_back(std::move(*c));
        }
      }
      return wk;
    };
    std::vector<Work> done;
    if (batch.size() == 1) {
      done.push_back(run(batch[0]));
    } else {
      std::vector<std::future<Work>> fs;
      for (const auto& nd : batch) fs.push_back(std::async(std::launch::async, run, std::cref(nd)));
      for (auto& f : fs) done.push_back(f.get());
    }
    for (std::size_t b = 0; b < batch.size(); ++b) {
      Work& wk = done[b];
      out.lp_solves += wk.lps;
      if (wk.leaf) {
        ++out.milp_solves;
        if (!wk.leaf->x) continue;
        const Rat& v = wk.leaf->value;
        if (!best || v < *best || (v == *best && detail::lex_less(batch[b].lo, best_idx))) {
          best = v;
          best_idx = batch[b].lo;
          out.x = wk.leaf->x;
        }
        continue;
      }
      for (auto& c : wk.kids) queue.push(std::move(c));
    }
  }

  out.count_ok = Int(static_cast<long>(out.milp_solves)) <= out.box_count;
  Rat fp = sf.objective(pair.lift_plus), fm = sf.objective(pair.lift_minus);
  Rat fo = sf.objective((pair.lift_plus + pair.lift_minus) * make_rat(1, 2));
  out.aligned_gap = std::max({fp, fm, fo}) - std::min({fp, fm, fo});
  out.gap_ok = out.aligned_gap * 16 >= 3 * gamma;

  std::ostringstream os;
  os << "phi = " << out.phi << ", boxes = " << out.box_count << ", box MILPs solved = " << out.milp_solves;
  out.log.push_back(os.str());
  out.log.push_back("16 k r_d^2 / (3 phi^2) = " + to_string(out.ratio) + " <= eps = " + to_string(eps) +
                    (out.ratio_ok ? " holds" : " FAILS"));
  out.log.push_back("aligned triple gap = " + to_string(out.aligned_gap) + " >= 3|D_11|/16 = " +
                    to_string(3 * gamma / 16) + (out.gap_ok ? " holds" : " FAILS"));
  if (!out.x) {
    out.log.push_back("every box MILP infeasible");
    return out;
  }
  out.yz = sf.to_yz(*out.x);
  out.value = src.objective(*out.x);
  out.box_value = best;
  out.box_index = best_idx;
  Rat upper = *best + gamma * Rat(static_cast<long>(k)) * rr_pp;
  out.sandwich_ok = *best <= *out.value && *out.value <= upper;
  out.log.push_back("box value " + to_string(*best) + " <= f = " + to_string(*out.value) +
                    " <= box value + gamma k r_d^2/phi^2 = " + to_string(upper) +
                    (out.sandwich_ok ? " holds" : " FAILS"));
  log::at(2, "mesh: ", out.log.front());
  return out;
}

// ---------------------------------------------------------------------------
// Flat decomposition

/// Slices {v^T y = t} for t = ceil(mu) .. floor(min(nu, mu + r_d s_p)), pulled back to x.
inline std::vector<MiqpInstance> decompose_flat(const SphericalForm& sf, const FlatResult& flat) {
  std::vector<MiqpInstance> out;
  Rat top = std::min<Rat>(flat.nu, flat.mu + flat.width_bound);
  for (Int t = ceil_rat(flat.mu); Rat(t) <= top; ++t) {
    MiqpInstance slice = sf.source;
    slice.P.add_equality(flat.v_x, Rat(t));
    out.push_back(std::move(slice));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Driver

struct Solution {
  RatVec x;
  Rat value;
  std::vector<std::string> provenance;
  std::vector<std::string> certificate;
};

struct SolveOptions {
  std::size_t jobs = 1;
};

struct SolveStats {
  std::size_t iterations = 0;
  std::size_t enqueued = 0;
  std::size_t mesh_calls = 0;
  std::size_t flat_calls = 0;
  std::size_t linear_calls = 0;
  std::size_t box_milps = 0;
  std::size_t max_depth = 0;
  Rat iteration_bound;
  bool certificates_ok = true;
};

struct SolveResult {
  std::optional<Solution> solution;
  SolveStats stats;
  bool feasible() const { return solution.has_value(); }
};

inline SolveResult solve(const MiqpInstance& inst, const Rat& eps, const SolveOptions& opt = {}) {
  inst.validate();
  if (eps <= 0 || eps > 1) throw Error("solve: epsilon must lie in (0, 1]");
  if (inst.lo.empty()) throw Error("solve: explicit finite bounds are required");
  SolveResult res;
  res.stats.iteration_bound = iteration_bound(rank(inst.H), inst.p);

  struct Item {
    MiqpInstance local;
    AffineMap map;
    std::vector<std::string> trail;
    std::size_t depth = 0;
  };
  std::vector<Item> work;
  work.push_back({inst, AffineMap::identity(inst.dim()), {}, 0});
  res.stats.enqueued = 1;

  auto offer = [&](const RatVec& x, std::vector<std::string> trail, std::vector<std::string> cert) {
    if (!inst.is_feasible(x)) throw Error("solve: candidate is not feasible for the input");
    Rat v = inst.objective(x);
    log::at(1, "candidate value ", to_string(v));
    if (res.solution && v >= res.solution->value) return;
    res.solution = Solution{x, v, std::move(trail), std::move(cert)};
  };

  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    ++res.stats.iterations;
    res.stats.max_depth = std::max(res.stats.max_depth, it.depth);
    log::at(1, "iteration ", res.stats.iterations, ": n = ", it.local.dim(), ", p = ", it.local.p);

    if (it.local.dim() == 0) {
      if (it.local.P.contains(RatVec(0))) {
        it.trail.push_back("single point");
        offer(it.map.offset, it.trail, {});
      }
      continue;
    }
    if (!milp_feasible(it.local.region(), it.local.integer_mask())) continue;

    Presolved pre = presolve_full_dim(it.local);
    for (auto& s : pre.provenance) it.trail.push_back(s);
    if (pre.empty) continue;
    AffineMap map = it.map.compose(pre.map);
    const MiqpInstance& loc = pre.inst;
    if (loc.dim() == 0) {
      it.trail.push_back("single point");
      offer(map.offset, it.trail, {});
      continue;
    }

    if (rank(loc.H) == 0) {
      ++res.stats.linear_calls;
      auto r = milp_solve(MilpInstance{loc.h, loc.region(), loc.integer_mask(), {}, {}});
      if (!r.optimal()) continue;
      it.trail.push_back("linear objective: exact MILP");
      offer(map.apply(*r.point), it.trail, {"exact optimum of the linear subproblem"});
      continue;
    }

    SphericalForm sf = to_spherical_form(loc);
    std::ostringstream os;
    os << "spherical form: d = " << sf.d << ", k = " << sf.k << ", p = " << sf.p << ", r_d = " << sf.r_d;
    it.trail.push_back(os.str());
    Dichotomy dc = aligned_or_flat(sf);
    if (dc.is_aligned()) {
      ++res.stats.mesh_calls;
      MeshResult mr = mesh_approximate(sf, *dc.aligned, eps, MeshOptions{opt.jobs});
      res.stats.box_milps += mr.milp_solves;
      bool ok = mr.ratio_ok && mr.count_ok && mr.gap_ok && (!mr.x || mr.sandwich_ok);
      if (!ok) res.stats.certificates_ok = false;
      if (!mr.x) continue;
      it.trail.push_back("aligned: mesh partition");
      offer(map.apply(*mr.x), it.trail, mr.log);
      continue;
    }

    ++res.stats.flat_calls;
    auto slices = decompose_flat(sf, *dc.flat);
    it.trail.push_back("flat: " + std::to_string(slices.size()) + " slices of width " +
                       to_string(dc.flat->nu - dc.flat->mu));
    for (std::size_t s = slices.size(); s-- > 0;) {
      if (!milp_feasible(slices[s].region(), slices[s].integer_mask())) continue;
      Item child{std::move(slices[s]), map, it.trail, it.depth + 1};
      child.trail.back() += ", slice " + std::to_string(s);
      work.push_back(std::move(child));
      ++res.stats.enqueued;
    }
  }
  return res;
}

}  // namespace miqpa
