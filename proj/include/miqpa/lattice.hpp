#pragma once

/**
 * Lattices of rank p in Q^d given by a d x p basis matrix (columns are the
 * generators b^1..b^p). Gram-Schmidt data is exact; LLL runs directly on
 * the rational vectors with parameter 3/4 and recomputes the orthogonal
 * basis after every change, which is cheap at the ranks used here.
 */

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace miqpa {

struct GramSchmidt {
  std::vector<RatVec> g;
  std::vector<Rat> norm_sq;  // ||g^i||^2
  RatMat mu;                 // mu(i,j) for j < i, 1 on the diagonal
};

inline GramSchmidt gram_schmidt(const RatMat& B) {
  const std::size_t p = B.cols();
  GramSchmidt gs;
  gs.mu = RatMat::identity(p);
  for (std::size_t i = 0; i < p; ++i) {
    RatVec b = B.col(i);
    RatVec g = b;
    for (std::size_t j = 0; j < i; ++j) {
      Rat m = dot(b, gs.g[j]) / gs.norm_sq[j];
      gs.mu(i, j) = m;
      if (m != 0) g -= gs.g[j] * m;
    }
    Rat n2 = norm_sq(g);
    if (n2 == 0) throw RankDeficientError("gram_schmidt: basis columns are dependent");
    gs.g.push_back(std::move(g));
    gs.norm_sq.push_back(std::move(n2));
  }
  return gs;
}

class LatticeBasis {
 public:
  LatticeBasis() = default;
  explicit LatticeBasis(RatMat B) : B_(std::move(B)), gs_(gram_schmidt(B_)) {}

  const RatMat& matrix() const { return B_; }
  std::size_t rank() const { return B_.cols(); }
  std::size_t dim() const { return B_.rows(); }
  const GramSchmidt& gs() const { return gs_; }

  /// det(Lambda)^2 = det(B^T B) = prod ||g^i||^2.
  Rat det_sq() const {
    Rat d = 1;
    for (const auto& n : gs_.norm_sq) d *= n;
    return d;
  }

  /// True iff y lies in Lambda + span(Lambda)^perp.
  bool contains_mod_perp(const RatVec& y) const {
    if (rank() == 0) return true;
    RatVec coords = left_inverse(B_) * y;
    for (const auto& c : coords)
      if (!is_integer(c)) return false;
    return true;
  }

 private:
  RatMat B_;
  GramSchmidt gs_;
};

struct LllResult {
  LatticeBasis basis;  // R
  RatMat transform;    // integer, unimodular, R = B * transform
};

inline bool is_lll_reduced(const GramSchmidt& gs) {
  const std::size_t p = gs.g.size();
  Rat half(1, 2), three_q(3, 4);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs_rat(gs.mu(i, j)) > half) return false;
  for (std::size_t i = 1; i < p; ++i) {
    Rat m = gs.mu(i, i - 1);
    if (gs.norm_sq[i] + m * m * gs.norm_sq[i - 1] < three_q * gs.norm_sq[i - 1]) return false;
  }
  return true;
}

inline LllResult lll_reduce(const LatticeBasis& lb) {
  const std::size_t p = lb.rank();
  RatMat R = lb.matrix();
  RatMat T = RatMat::identity(p);
  if (p == 0) return {lb, T};
  GramSchmidt gs = lb.gs();
  const Rat three_q(3, 4);

  auto sub_col = [](RatMat& m, std::size_t dst, std::size_t src, const Rat& q) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
  };

  std::size_t k = 1;
  while (k < p) {
    for (std::size_t jj = k; jj-- > 0;) {
      Int q = round_half_even(gs.mu(k, jj));
      if (q == 0) continue;
      Rat qr(q);
      sub_col(R, k, jj, qr);
      sub_col(T, k, jj, qr);
      // mu_k,l -= q mu_j,l for l <= j; g-vectors are unchanged.
      for (std::size_t l = 0; l <= jj; ++l) gs.mu(k, l) -= qr * gs.mu(jj, l);
    }
    Rat m = gs.mu(k, k - 1);
    if (gs.norm_sq[k] + m * m * gs.norm_sq[k - 1] >= three_q * gs.norm_sq[k - 1]) {
      ++k;
    } else {
      R.swap_cols(k, k - 1);
      T.swap_cols(k, k - 1);
      gs = gram_schmidt(R);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return {LatticeBasis(std::move(R)), std::move(T)};
}

struct FlatDirection {
  RatVec v;
  Rat width_sq;  // (2 delta ||v||)^2, the squared width of the ball along v
};

struct BallOrFlat {
  enum class Kind { point, flat } kind = Kind::point;
  RatVec point;
  FlatDirection flat;

  bool is_point() const { return kind == Kind::point; }
};

/// Either a point of B(a, delta) in Lambda + span(Lambda)^perp, or an
/// integral-on-Lambda direction v with (2 delta ||v||)^2 <= p^2 2^{p(p-1)/2}.
inline BallOrFlat ball_point_or_flat(const RatVec& a, const Rat& delta, const LatticeBasis& lb) {
  if (a.dim() != lb.dim()) throw DimensionError("ball_point_or_flat: center dimension mismatch");
  if (delta < 0) throw Error("ball_point_or_flat: negative radius");
  BallOrFlat out;
  const std::size_t p = lb.rank();
  if (p == 0) {
    out.point = a;
    return out;
  }
  LllResult red = lll_reduce(lb);
  RatMat Rhat = red.basis.matrix();
  RatMat T = red.transform;
  std::size_t longest = 0;
  Rat best = -1;
  for (std::size_t i = 0; i < p; ++i) {
    Rat n2 = norm_sq(Rhat.col(i));
    if (n2 > best) {
      best = n2;
      longest = i;
    }
  }
  Rhat.swap_cols(longest, p - 1);
  T.swap_cols(longest, p - 1);

  RatMat Rdag = left_inverse(Rhat);
  RatVec lambda = Rdag * a;
  RatVec a_lat = Rhat * lambda;
  RatVec rounded(p);
  for (std::size_t i = 0; i < p; ++i) rounded[i] = Rat(round_half_even(lambda[i]));
  RatVec y_lat = Rhat * rounded;
  if (norm_sq(y_lat - a_lat) <= delta * delta) {
    out.point = y_lat + (a - a_lat);
    return out;
  }
  // B = Rhat U with U = T^{-1}; v = (u B^+)^T for u the last row of U.
  RatMat U = inverse(T);
  RatVec u = U.row(p - 1);
  RatVec v = transpose_times(left_inverse(lb.matrix()), u);
  out.kind = BallOrFlat::Kind::flat;
  out.flat.width_sq = 4 * delta * delta * norm_sq(v);
  out.flat.v = std::move(v);
  return out;
}

/// p^2 2^{p(p-1)/2}, the squared width bound of the flat branch.
inline Rat flat_width_bound_sq(std::size_t p) {
  Int two_pow = pow_int(Int(2), p * (p - 1) / 2);
  return Rat(Int(static_cast<long>(p * p)) * two_pow);
}

/// Orthogonal projection of the generators onto span(subspace_basis).
inline LatticeBasis lattice_project(const LatticeBasis& lb, const RatMat& subspace_basis) {
  if (subspace_basis.rows() != lb.dim()) throw DimensionError("lattice_project: dimension mismatch");
  RatMat S = subspace_basis.select_columns(independent_columns(subspace_basis));
  RatMat proj = projector(S) * lb.matrix();
  if (rank(proj) < lb.rank()) throw RankDeficientError("lattice_project: projection drops rank");
  return LatticeBasis(std::move(proj));
}

}  // namespace miqpa
