#pragma once

/**
 * Exact branch-and-bound for mixed integer linear programs with a small
 * number of integer variables.
 *
 * Depth-first; at each node the most fractional masked variable is split
 * (lowest index on ties) and the child with the better relaxation bound is
 * explored first. Nodes whose bound is no better than the incumbent are
 * pruned, so the result is the first optimal point found in this fixed
 * order and is reproducible.
 *
 * Optionally, past a depth threshold, a node is split along a flat integral
 * direction instead: the integer projection of the node polytope is
 * rounded, the ball/flat dichotomy is run on the image of Z^p, and a Flat
 * answer yields one child per integer value of u^T x_I.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "lattice.hpp"
#include "lp.hpp"
#include "matrix.hpp"

namespace miqpa {

struct MilpInstance {
  RatVec objective;
  Polyhedron P;
  std::vector<bool> integer_mask;
  /// Optional finite box; empty vectors mean P alone bounds the problem.
  RatVec lo, hi;

  static MilpInstance leading_integers(RatVec objective, Polyhedron P, std::size_t p) {
    MilpInstance m;
    m.integer_mask.assign(P.dim(), false);
    for (std::size_t i = 0; i < p && i < P.dim(); ++i) m.integer_mask[i] = true;
    m.objective = std::move(objective);
    m.P = std::move(P);
    return m;
  }

  Polyhedron region() const {
    if (lo.empty()) return P;
    return P.intersect(Polyhedron::box(lo, hi));
  }
};

struct MilpOptions {
  /// Depth after which nodes branch along flat directions; 0 disables it.
  std::size_t flatness_depth = 0;
  /// Stop at the first mixed-integer feasible point.
  bool first_feasible = false;
};

struct MilpStats {
  std::size_t nodes = 0;
  std::size_t lp_solves = 0;
  std::size_t flat_branches = 0;
};

struct MilpResult {
  LpStatus status = LpStatus::infeasible;
  std::optional<RatVec> point;
  std::optional<Rat> value;
  MilpStats stats;

  bool optimal() const { return status == LpStatus::optimal; }
};

inline bool is_mixed_integer(const RatVec& x, const std::vector<bool>& mask) {
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (mask[i] && !is_integer(x[i])) return false;
  return true;
}

namespace detail {

struct BbNode {
  Polyhedron P;
  RatVec x;  // relaxation optimum
  Rat bound;
  std::size_t depth = 0;
};

/// Children along a flat direction of the node's integer projection, or nullopt.
inline std::optional<std::vector<Polyhedron>> flat_split(const Polyhedron& P, const std::vector<bool>& mask) {
  const std::size_t n = P.dim();
  std::vector<std::size_t> ints;
  for (std::size_t i = 0; i < n; ++i)
    if (mask[i]) ints.push_back(i);
  if (ints.empty()) return std::nullopt;
  RatMat S(n, ints.size());
  for (std::size_t j = 0; j < ints.size(); ++j) S(ints[j], j) = 1;
  InscribedEllipsoid E;
  try {
    E = inscribe_ellipsoid(P, S);
  } catch (const NotFullDimensionalError&) {
    return std::nullopt;
  }
  // y = C^T x maps the integer projection onto a body containing B(C^T a, 1).
  RatMat CtS = E.ellipsoid.L.transpose() * S;
  LatticeBasis lb(CtS);
  auto res = ball_point_or_flat(transpose_times(E.ellipsoid.L, E.ellipsoid.a), 1, lb);
  if (res.is_point()) return std::nullopt;
  RatVec u_int = transpose_times(CtS, res.flat.v);
  RatVec u(n);
  for (std::size_t j = 0; j < ints.size(); ++j) u[ints[j]] = u_int[j];
  auto [mn, mx] = range_along(P, u);
  std::vector<Polyhedron> kids;
  for (Int t = ceil_rat(mn); Rat(t) <= mx; ++t) {
    Polyhedron child = P;
    child.add_equality(u, Rat(t));
    kids.push_back(std::move(child));
  }
  return kids;
}

}  // namespace detail

inline MilpResult milp_solve(const MilpInstance& m, const MilpOptions& opt = {}) {
  const std::size_t n = m.P.dim();
  if (m.objective.dim() != n || m.integer_mask.size() != n) throw DimensionError("milp_solve: dimension mismatch");
  MilpResult out;
  std::optional<Rat> incumbent;

  auto relax = [&](const Polyhedron& P) {
    ++out.stats.lp_solves;
    return lp_optimize(P, m.objective, Sense::minimize);
  };

  Polyhedron root = m.region();
  auto r0 = relax(root);
  if (r0.status == LpStatus::unbounded) {
    out.status = LpStatus::unbounded;
    return out;
  }
  if (!r0.optimal()) return out;

  std::vector<detail::BbNode> stack;
  stack.push_back({root, *r0.point, *r0.value, 0});
  while (!stack.empty()) {
    detail::BbNode node = std::move(stack.back());
    stack.pop_back();
    ++out.stats.nodes;
    if (incumbent && node.bound >= *incumbent) continue;
    if (is_mixed_integer(node.x, m.integer_mask)) {
      incumbent = node.bound;
      out.point = node.x;
      out.value = node.bound;
      out.status = LpStatus::optimal;
      if (opt.first_feasible) break;
      continue;
    }

    std::vector<Polyhedron> kids;
    if (opt.flatness_depth > 0 && node.depth >= opt.flatness_depth) {
      if (auto split = detail::flat_split(node.P, m.integer_mask)) {
        kids = std::move(*split);
        ++out.stats.flat_branches;
      }
    }
    if (kids.empty()) {
      std::size_t pick = n;
      Rat best_dist = -1;
      for (std::size_t i = 0; i < n; ++i) {
        if (!m.integer_mask[i] || is_integer(node.x[i])) continue;
        Rat frac = node.x[i] - Rat(floor_rat(node.x[i]));
        Rat dist = abs_rat(frac - make_rat(1, 2));
        if (pick == n || dist < best_dist) {
          pick = i;
          best_dist = dist;
        }
      }
      Polyhedron down = node.P, up = node.P;
      down.add_row(RatVec::unit(n, pick), Rat(floor_rat(node.x[pick])));
      up.add_row(-RatVec::unit(n, pick), -Rat(ceil_rat(node.x[pick])));
      kids.push_back(std::move(down));
      kids.push_back(std::move(up));
    }

    std::vector<detail::BbNode> live;
    for (auto& k : kids) {
      auto r = relax(k);
      if (!r.optimal()) continue;
      if (incumbent && *r.value >= *incumbent) continue;
      live.push_back({std::move(k), *r.point, *r.value, node.depth + 1});
    }
    // Push worst first so the best-bound child is popped next; stable among equals.
    std::stable_sort(live.begin(), live.end(),
                     [](const detail::BbNode& a, const detail::BbNode& b) { return a.bound > b.bound; });
    for (auto& c : live) stack.push_back(std::move(c));
  }
  return out;
}

/// Some point of P with the masked coordinates integral, or nullopt if none exists.
inline std::optional<RatVec> milp_feasible(const Polyhedron& P, const std::vector<bool>& mask,
                                           const RatVec& lo = {}, const RatVec& hi = {}) {
  MilpInstance m;
  m.objective = RatVec(P.dim());
  m.P = P;
  m.integer_mask = mask;
  m.lo = lo;
  m.hi = hi;
  MilpOptions opt;
  opt.first_feasible = true;
  auto r = milp_solve(m, opt);
  return r.point;
}

}  // namespace miqpa
