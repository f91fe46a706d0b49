#pragma once

/**
 * Exact linear programming over {x : W x <= w} with free variables.
 *
 * Dense tableau, two phases, Bland's rule throughout. Free variables are
 * split as x = x+ - x-; rows with negative right-hand side get an
 * artificial column. An optimal basic solution of the split system need
 * not be a vertex of the original polyhedron (a free coordinate can sit at
 * zero without any row being tight), so optimal points are pushed along the
 * kernel of the tight rows until they are.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace miqpa {

struct Polyhedron {
  RatMat W;
  RatVec w;

  Polyhedron() = default;
  Polyhedron(RatMat W_, RatVec w_) : W(std::move(W_)), w(std::move(w_)) {
    if (W.rows() != w.dim()) throw DimensionError("polyhedron: W and w disagree on row count");
  }
  /// The whole of R^n (no rows).
  static Polyhedron free_space(std::size_t n) { return Polyhedron(RatMat(0, n), RatVec(0)); }

  /// lo <= x <= hi, rows ordered x_0 <= hi_0, -x_0 <= -lo_0, x_1 <= ...
  static Polyhedron box(const RatVec& lo, const RatVec& hi) {
    Polyhedron p = free_space(lo.dim());
    for (std::size_t i = 0; i < lo.dim(); ++i) {
      p.add_row(RatVec::unit(lo.dim(), i), hi[i]);
      p.add_row(-RatVec::unit(lo.dim(), i), -lo[i]);
    }
    return p;
  }

  std::size_t dim() const { return W.cols(); }
  std::size_t num_rows() const { return W.rows(); }

  void add_row(const RatVec& a, const Rat& b) {
    if (a.dim() != dim()) throw DimensionError("polyhedron: row length mismatch");
    W = vstack(W, RatMat::from_rows(dim(), {a}));
    std::vector<Rat> vals(w.begin(), w.end());
    vals.push_back(b);
    w = RatVec(std::move(vals));
  }

  /// a^T x = b as the pair a^T x <= b, -a^T x <= -b.
  void add_equality(const RatVec& a, const Rat& b) {
    add_row(a, b);
    add_row(-a, -b);
  }

  bool contains(const RatVec& x) const {
    if (x.dim() != dim()) throw DimensionError("polyhedron: point dimension mismatch");
    RatVec lhs = W * x;
    for (std::size_t i = 0; i < num_rows(); ++i)
      if (lhs[i] > w[i]) return false;
    return true;
  }

  std::vector<std::size_t> tight_rows(const RatVec& x) const {
    std::vector<std::size_t> out;
    RatVec lhs = W * x;
    for (std::size_t i = 0; i < num_rows(); ++i)
      if (lhs[i] == w[i]) out.push_back(i);
    return out;
  }

  /// Image under x = x0 + M u, as a polyhedron in u.
  Polyhedron substitute(const RatVec& x0, const RatMat& M) const {
    return Polyhedron(W * M, w - W * x0);
  }

  /// Same polyhedron with the rows of `other` appended.
  Polyhedron intersect(const Polyhedron& other) const {
    return Polyhedron(vstack(W, other.W), concat(w, other.w));
  }
};

enum class LpStatus { optimal, infeasible, unbounded };
enum class Sense { minimize, maximize };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::optional<RatVec> point;
  std::optional<Rat> value;

  bool optimal() const { return status == LpStatus::optimal; }
};

namespace detail {

/// Standard-form tableau: rows A y = b (b >= 0), y >= 0, minimize cost^T y.
class Tableau {
 public:
  Tableau(RatMat a, RatVec b, std::vector<std::size_t> basis)
      : t_(a.rows(), a.cols() + 1), basis_(std::move(basis)) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) t_(i, j) = a(i, j);
      t_(i, a.cols()) = b[i];
    }
  }

  std::size_t rows() const { return t_.rows(); }
  std::size_t cols() const { return t_.cols() - 1; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rat& entry(std::size_t i, std::size_t j) const { return t_(i, j); }
  const Rat& rhs(std::size_t i) const { return t_(i, cols()); }

  /// Runs Bland's rule on `cost` restricted to columns < active_cols.
  /// Returns false if unbounded.
  bool optimize(const std::vector<Rat>& cost, std::size_t active_cols) {
    std::vector<Rat> red(active_cols);
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < active_cols; ++j) {
        Rat r = cost[j];
        for (std::size_t i = 0; i < rows(); ++i)
          if (t_(i, j) != 0 && cost[basis_[i]] != 0) r -= cost[basis_[i]] * t_(i, j);
        if (r < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      const std::size_t j = *enter;
      std::optional<std::size_t> leave;
      Rat best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (t_(i, j) <= 0) continue;
        Rat ratio = rhs(i) / t_(i, j);
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, j);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t ncol = t_.cols();
    Rat inv = 1 / t_(r, c);
    for (std::size_t j = 0; j < ncol; ++j)
      if (t_(r, j) != 0) t_(r, j) *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || t_(i, c) == 0) continue;
      Rat f = t_(i, c);
      for (std::size_t j = 0; j < ncol; ++j)
        if (t_(r, j) != 0) t_(i, j) -= f * t_(r, j);
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < rows(); ++i)
      if (i != r) keep.push_back(i);
    t_ = t_.select_rows(keep);
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  std::vector<Rat> solution() const {
    std::vector<Rat> y(cols(), Rat(0));
    for (std::size_t i = 0; i < rows(); ++i) y[basis_[i]] = rhs(i);
    return y;
  }

 private:
  RatMat t_;
  std::vector<std::size_t> basis_;
};

struct SimplexOutcome {
  LpStatus status;
  RatVec x;
};

/// Minimizes c^T x over {W x <= w}; x free. Returned x is a basic solution of the split system.
inline SimplexOutcome simplex_min(const Polyhedron& P, const RatVec* c) {
  const std::size_t n = P.dim();
  const std::size_t m = P.num_rows();

  if (m == 0) {
    if (c && !c->is_zero()) return {LpStatus::unbounded, RatVec(n)};
    return {LpStatus::optimal, RatVec(n)};
  }

  std::vector<std::size_t> neg_rows;
  for (std::size_t i = 0; i < m; ++i)
    if (P.w[i] < 0) neg_rows.push_back(i);

  const std::size_t n_struct = 2 * n + m;
  const std::size_t n_total = n_struct + neg_rows.size();
  RatMat a(m, n_total);
  RatVec b(m);
  std::vector<std::size_t> basis(m);
  std::size_t art = n_struct;
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = P.w[i] < 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& v = P.W(i, j);
      if (v == 0) continue;
      a(i, j) = flip ? Rat(-v) : v;
      a(i, n + j) = flip ? v : Rat(-v);
    }
    a(i, 2 * n + i) = flip ? -1 : 1;
    b[i] = flip ? Rat(-P.w[i]) : P.w[i];
    if (flip) {
      a(i, art) = 1;
      basis[i] = art++;
    } else {
      basis[i] = 2 * n + i;
    }
  }

  Tableau tab(std::move(a), std::move(b), std::move(basis));

  if (!neg_rows.empty()) {
    std::vector<Rat> cost1(n_total, Rat(0));
    for (std::size_t j = n_struct; j < n_total; ++j) cost1[j] = 1;
    tab.optimize(cost1, n_total);
    Rat infeas = 0;
    for (std::size_t i = 0; i < tab.rows(); ++i)
      if (tab.basis()[i] >= n_struct) infeas += tab.rhs(i);
    if (infeas > 0) return {LpStatus::infeasible, RatVec(n)};
    // Artificials still basic sit at zero: pivot them out or drop the redundant row.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis()[i] < n_struct) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < n_struct; ++j)
        if (tab.entry(i, j) != 0) {
          col = j;
          break;
        }
      if (col) {
        tab.pivot(i, *col);
        ++i;
      } else {
        tab.drop_row(i);
      }
    }
  }

  if (c) {
    std::vector<Rat> cost2(n_total, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
      cost2[j] = (*c)[j];
      cost2[n + j] = -(*c)[j];
    }
    if (!tab.optimize(cost2, n_struct)) return {LpStatus::unbounded, RatVec(n)};
  }

  std::vector<Rat> y = tab.solution();
  RatVec x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = y[j] - y[n + j];
  return {LpStatus::optimal, std::move(x)};
}

/// Moves a point along directions that keep all tight rows tight (and, for
/// an optimal point, the objective unchanged) until the tight rows have full
/// rank. Stops early if the polyhedron has a lineality direction.
inline RatVec purify_to_vertex(const Polyhedron& P, RatVec x) {
  const std::size_t n = P.dim();
  for (;;) {
    auto tight = P.tight_rows(x);
    RatMat wt = P.W.select_rows(tight);
    if (rank(wt) == n) return x;
    RatMat ker = kernel_basis(wt);
    RatVec d = ker.col(0);
    RatVec wd = P.W * d;
    RatVec slack = P.w - P.W * x;
    std::optional<Rat> step;
    int dir = 0;
    for (int s : {1, -1}) {
      for (std::size_t i = 0; i < P.num_rows(); ++i) {
        Rat rate = s * wd[i];
        if (rate <= 0) continue;
        Rat t = slack[i] / rate;
        if (!step || t < *step) step = t;
      }
      if (step) {
        dir = s;
        break;
      }
    }
    if (!step) return x;
    x += d * (Rat(dir) * *step);
  }
}

}  // namespace detail

/// Exact optimum over P. The returned point is a vertex whenever P is pointed.
inline LpResult lp_optimize(const Polyhedron& P, const RatVec& objective, Sense sense = Sense::minimize) {
  if (objective.dim() != P.dim()) throw DimensionError("lp_optimize: objective dimension mismatch");
  RatVec c = sense == Sense::minimize ? objective : RatVec(-objective);
  auto out = detail::simplex_min(P, &c);
  LpResult res;
  res.status = out.status;
  if (out.status != LpStatus::optimal) return res;
  RatVec x = detail::purify_to_vertex(P, std::move(out.x));
  res.value = dot(objective, x);
  res.point = std::move(x);
  return res;
}

/// Some point of P, or nullopt when P is empty.
inline std::optional<RatVec> lp_feasible_point(const Polyhedron& P) {
  auto out = detail::simplex_min(P, nullptr);
  if (out.status != LpStatus::optimal) return std::nullopt;
  return out.x;
}

/// Rows i with W_i x = w_i on all of P.
inline std::vector<std::size_t> implied_equalities(const Polyhedron& P) {
  auto x0 = lp_feasible_point(P);
  if (!x0) throw InfeasibleError("implied_equalities: polyhedron is empty");
  std::vector<std::size_t> out;
  RatVec lhs = P.W * *x0;
  for (std::size_t i = 0; i < P.num_rows(); ++i) {
    if (lhs[i] != P.w[i]) continue;
    RatVec row = P.W.row(i);
    if (row.is_zero()) {
      out.push_back(i);
      continue;
    }
    auto r = lp_optimize(P, row, Sense::minimize);
    if (r.optimal() && *r.value == P.w[i]) out.push_back(i);
  }
  return out;
}

inline bool is_full_dimensional(const Polyhedron& P) {
  for (auto i : implied_equalities(P))
    if (!P.W.row(i).is_zero()) return false;
  return true;
}

/// (min, max) of v^T x over P.
inline std::pair<Rat, Rat> range_along(const Polyhedron& P, const RatVec& v) {
  auto lo = lp_optimize(P, v, Sense::minimize);
  if (lo.status == LpStatus::infeasible) throw InfeasibleError("range_along: polyhedron is empty");
  if (lo.status == LpStatus::unbounded) throw UnboundedError("range_along: unbounded below");
  auto hi = lp_optimize(P, v, Sense::maximize);
  if (hi.status == LpStatus::unbounded) throw UnboundedError("range_along: unbounded above");
  return {*lo.value, *hi.value};
}

inline Rat width_along(const Polyhedron& P, const RatVec& v) {
  auto [lo, hi] = range_along(P, v);
  return hi - lo;
}

/// All vertices of a bounded P, sorted lexicographically. Exhaustive over row subsets.
inline std::vector<RatVec> enumerate_vertices(const Polyhedron& P, std::size_t dim_limit = 6) {
  const std::size_t n = P.dim();
  if (n > dim_limit) throw DimensionError("enumerate_vertices: dimension over limit");
  std::set<RatVec> found;
  if (n == 0) {
    if (P.contains(RatVec(0))) found.insert(RatVec(0));
    return {found.begin(), found.end()};
  }
  const std::size_t m = P.num_rows();
  if (m < n) return {};
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (;;) {
    RatMat a = P.W.select_rows(idx);
    if (det(a) != 0) {
      RatVec rhs(n);
      for (std::size_t i = 0; i < n; ++i) rhs[i] = P.w[idx[i]];
      RatVec x = solve(a, rhs);
      if (P.contains(x)) found.insert(std::move(x));
    }
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == m - n + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {found.begin(), found.end()};
}

}  // namespace miqpa
