#pragma once

/**
 * Symmetric decomposition B H B^T = D with complete pivoting and +-1 row
 * combinations (a Dax-Kaniel variant), and the derived form H = L D L^T.
 *
 * Iteration k brings the entry of largest magnitude in the trailing block
 * to position (k,k): swap row/col s into k, then, if the maximum sat off the
 * diagonal at (s,r), add gamma times row/col r to row/col k. Gaussian
 * elimination of row and column k follows. The same row operations applied
 * to the identity accumulate B.
 */

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace miqpa {

struct PivotRecord {
  std::size_t k = 0;  // 0-based iteration index
  std::size_t s = 0;
  std::size_t r = 0;
  int gamma = 0;      // 0 when no row combination happened (s == r or degenerate)
  bool degenerate = false;
};

struct SymDecomp {
  RatMat B;
  RatMat D;
  std::vector<PivotRecord> pivot_log;
  /// H^(k) after each iteration and the accumulated pivot product P_k...P_1,
  /// filled only on request.
  std::vector<RatMat> history;
  std::vector<RatMat> pivot_products;
};

struct LdlForm {
  RatMat L;
  RatMat D;
};

inline SymDecomp symmetric_decompose(const RatMat& Hhat, bool keep_history = false) {
  if (!Hhat.is_symmetric()) throw NotSymmetricError("symmetric_decompose: input is not symmetric");
  const std::size_t n = Hhat.rows();
  SymDecomp out;
  RatMat H = Hhat;
  RatMat B = RatMat::identity(n);
  RatMat Pprod = RatMat::identity(n);

  auto add_row_col = [&](RatMat& m, std::size_t dst, std::size_t src, const Rat& f) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
  };

  for (std::size_t k = 0; k + 1 < n; ++k) {
    PivotRecord rec;
    rec.k = k;
    Rat best = 0;
    std::size_t s = k, r = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Rat v = abs_rat(H(i, j));
        if (v > best) {
          best = v;
          s = i;
          r = j;
        }
      }
    if (best == 0) {
      rec.s = rec.r = k;
      rec.degenerate = true;
      out.pivot_log.push_back(rec);
      if (keep_history) {
        out.history.push_back(H);
        out.pivot_products.push_back(Pprod);
      }
      continue;
    }
    rec.s = s;
    rec.r = r;

    // Swapping s into k moves r only if r == k, which s <= r rules out unless s == r == k.
    H.swap_rows(s, k);
    H.swap_cols(s, k);
    B.swap_rows(s, k);
    Pprod.swap_rows(s, k);
    if (r != s) {
      int gamma = (H(r, k) * (H(k, k) + H(r, r)) >= 0) ? 1 : -1;
      rec.gamma = gamma;
      Rat g(gamma);
      add_row_col(H, k, r, g);
      for (std::size_t i = 0; i < n; ++i) H(i, k) += g * H(i, r);
      add_row_col(B, k, r, g);
      add_row_col(Pprod, k, r, g);
    }

    const Rat pivot = H(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (H(i, k) == 0) continue;
      Rat e = H(i, k) / pivot;
      add_row_col(H, i, k, -e);
      add_row_col(B, i, k, -e);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (H(k, j) == 0) continue;
      Rat e = H(k, j) / pivot;
      for (std::size_t i = 0; i < n; ++i) H(i, j) -= e * H(i, k);
    }
    out.pivot_log.push_back(rec);
    if (keep_history) {
      out.history.push_back(H);
      out.pivot_products.push_back(Pprod);
    }
  }
  out.B = std::move(B);
  out.D = std::move(H);
  return out;
}

/// H = L D L^T with L = B^{-1}.
inline LdlForm ldl_decompose(const RatMat& Hhat) {
  SymDecomp sd = symmetric_decompose(Hhat);
  return {inverse(sd.B), std::move(sd.D)};
}

}  // namespace miqpa
