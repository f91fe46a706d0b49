#pragma once

// Random generators and small independent oracles shared by the test binaries.

#include <cstdint>
#include <random>
#include <vector>

#include <miqpa/matrix.hpp>

namespace miqpa::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }

  // num in [lo, hi], den in [1, max_den].
  Rat rat(long lo, long hi, long max_den) { return make_rat(uniform(lo, hi), uniform(1, max_den)); }

  RatVec vec(std::size_t n, long lo, long hi, long max_den = 1) {
    RatVec v(n);
    for (auto& x : v) x = rat(lo, hi, max_den);
    return v;
  }

  RatMat mat(std::size_t r, std::size_t c, long lo, long hi, long max_den = 1) {
    RatMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rat(lo, hi, max_den);
    return m;
  }

  RatMat symmetric(std::size_t n, long lo, long hi, long max_den = 1) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rat(lo, hi, max_den);
    return m;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

// Triple loop with no shortcuts, used as a second opinion on matmul.
inline RatMat naive_matmul(const RatMat& a, const RatMat& b) {
  RatMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rat s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// Laplace expansion along the first row.
inline Rat cofactor_det(const RatMat& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Rat s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    Rat minor = cofactor_det(a.select_rows(rows).select_columns(cols));
    s += (j % 2 == 0 ? Rat(1) : Rat(-1)) * a(0, j) * minor;
  }
  return s;
}

}  // namespace miqpa::testing
