#pragma once

/**
 * Dense rational vectors and matrices plus the exact linear-algebra kernels
 * the rest of the library is built on.
 *
 * Norms are never square-rooted: callers compare squared quantities.
 * Elimination-based kernels (det, rank, solve) use fraction-free Bareiss
 * elimination so intermediate entries stay ratios of minors of the input.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace miqpa {

class RatVec {
 public:
  RatVec() = default;
  explicit RatVec(std::size_t dim) : data_(dim, Rat(0)) {}
  RatVec(std::initializer_list<Rat> init) : data_(init) {}
  explicit RatVec(std::vector<Rat> data) : data_(std::move(data)) {}

  static RatVec unit(std::size_t dim, std::size_t i) {
    RatVec v(dim);
    v[i] = 1;
    return v;
  }

  std::size_t dim() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  Rat& operator[](std::size_t i) { return data_[i]; }
  const Rat& operator[](std::size_t i) const { return data_[i]; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  std::span<const Rat> view() const { return data_; }
  const std::vector<Rat>& values() const { return data_; }

  /// Coordinates [first, first + count).
  RatVec segment(std::size_t first, std::size_t count) const {
    return RatVec(std::vector<Rat>(data_.begin() + first, data_.begin() + first + count));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return x == 0; });
  }

  RatVec& operator+=(const RatVec& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  RatVec& operator-=(const RatVec& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  RatVec& operator*=(const Rat& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  RatVec& operator/=(const Rat& s) {
    for (auto& x : data_) x /= s;
    return *this;
  }

  friend RatVec operator+(RatVec a, const RatVec& b) { return a += b; }
  friend RatVec operator-(RatVec a, const RatVec& b) { return a -= b; }
  friend RatVec operator*(RatVec a, const Rat& s) { return a *= s; }
  friend RatVec operator*(const Rat& s, RatVec a) { return a *= s; }
  friend RatVec operator/(RatVec a, const Rat& s) { return a /= s; }
  friend RatVec operator-(RatVec a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend bool operator==(const RatVec& a, const RatVec& b) { return a.data_ == b.data_; }
  friend bool operator<(const RatVec& a, const RatVec& b) { return a.data_ < b.data_; }

 private:
  void check_same(const RatVec& o) const {
    if (o.dim() != dim()) throw DimensionError("vector dimension mismatch");
  }
  std::vector<Rat> data_;
};

inline Rat dot(const RatVec& a, const RatVec& b) {
  if (a.dim() != b.dim()) throw DimensionError("dot: dimension mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat norm_sq(const RatVec& a) { return dot(a, a); }

inline RatVec concat(const RatVec& a, const RatVec& b) {
  std::vector<Rat> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return RatVec(std::move(out));
}

/// Row-major dense rational matrix.
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}
  RatMat(std::initializer_list<std::initializer_list<Rat>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RatMat identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RatMat diagonal(const RatVec& d) {
    RatMat m(d.dim(), d.dim());
    for (std::size_t i = 0; i < d.dim(); ++i) m(i, i) = d[i];
    return m;
  }

  static RatMat from_columns(std::size_t rows, const std::vector<RatVec>& cols) {
    RatMat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].dim() != rows) throw DimensionError("from_columns: column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static RatMat from_rows(std::size_t cols, const std::vector<RatVec>& rows) {
    RatMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].dim() != cols) throw DimensionError("from_rows: row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVec row(std::size_t i) const {
    return RatVec(std::vector<Rat>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_));
  }
  RatVec col(std::size_t j) const {
    RatVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  RatVec diag() const {
    RatVec v(std::min(rows_, cols_));
    for (std::size_t i = 0; i < v.dim(); ++i) v[i] = (*this)(i, i);
    return v;
  }

  void set_row(std::size_t i, const RatVec& v) {
    if (v.dim() != cols_) throw DimensionError("set_row: length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  void set_col(std::size_t j, const RatVec& v) {
    if (v.dim() != rows_) throw DimensionError("set_col: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  RatMat transpose() const {
    RatMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  RatMat select_columns(const std::vector<std::size_t>& idx) const {
    RatMat m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }
  RatMat select_rows(const std::vector<std::size_t>& idx) const {
    RatMat m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }
  RatMat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    RatMat m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return x == 0; });
  }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && (*this)(i, j) != 0) return false;
    return true;
  }

  RatMat& operator+=(const RatMat& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  RatMat& operator-=(const RatMat& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  RatMat& operator*=(const Rat& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  RatMat& operator/=(const Rat& s) {
    for (auto& x : data_) x /= s;
    return *this;
  }
  friend RatMat operator+(RatMat a, const RatMat& b) { return a += b; }
  friend RatMat operator-(RatMat a, const RatMat& b) { return a -= b; }
  friend RatMat operator*(RatMat a, const Rat& s) { return a *= s; }
  friend RatMat operator*(const Rat& s, RatMat a) { return a *= s; }
  friend RatMat operator/(RatMat a, const Rat& s) { return a /= s; }

  friend bool operator==(const RatMat& a, const RatMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const RatMat& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionError("matrix shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

inline RatMat matmul(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
  RatMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rat& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline RatMat operator*(const RatMat& a, const RatMat& b) { return matmul(a, b); }

inline RatVec operator*(const RatMat& a, const RatVec& x) {
  if (a.cols() != x.dim()) throw DimensionError("matrix-vector: dimension mismatch");
  RatVec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

/// x^T A, returned as a column vector.
inline RatVec transpose_times(const RatMat& a, const RatVec& x) {
  if (a.rows() != x.dim()) throw DimensionError("transpose_times: dimension mismatch");
  RatVec y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += a(i, j) * x[i];
  }
  return y;
}

inline RatMat hstack(const RatMat& a, const RatMat& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack: row counts differ");
  RatMat m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline RatMat vstack(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack: column counts differ");
  RatMat m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

/// Sum of squared entries (the Frobenius norm, squared).
inline Rat frobenius_sq(const RatMat& a) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return s;
}

inline Rat quad_form(const RatMat& h, const RatVec& x) { return dot(x, h * x); }

namespace detail {

/// Fraction-free forward elimination in place. Returns pivot columns;
/// `sign` flips with every row interchange.
inline std::vector<std::size_t> bareiss_eliminate(RatMat& m, int& sign, std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  sign = 1;
  Rat prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < col_limit && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      m.swap_rows(p, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Reduced row echelon form (Gauss-Jordan over the rationals); returns pivot columns.
inline std::vector<std::size_t> rref_in_place(RatMat& m, std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < col_limit && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

inline Rat det(const RatMat& a) {
  if (!a.is_square()) throw DimensionError("det: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return Rat(1);
  RatMat m = a;
  int sign = 1;
  auto piv = detail::bareiss_eliminate(m, sign, n);
  if (piv.size() < n) return Rat(0);
  return sign > 0 ? m(n - 1, n - 1) : Rat(-m(n - 1, n - 1));
}

inline std::size_t rank(const RatMat& a) {
  RatMat m = a;
  int sign = 1;
  return detail::bareiss_eliminate(m, sign, m.cols()).size();
}

/// Solves A x = b for square nonsingular A (Bareiss forward pass, exact back-substitution).
inline RatVec solve(const RatMat& a, const RatVec& b) {
  if (!a.is_square()) throw DimensionError("solve: matrix is not square");
  if (a.rows() != b.dim()) throw DimensionError("solve: right-hand side length mismatch");
  const std::size_t n = a.rows();
  RatMat m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  int sign = 1;
  auto piv = detail::bareiss_eliminate(m, sign, n);
  if (piv.size() < n) throw SingularMatrixError("solve: singular matrix");
  RatVec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rat s = m(ii, n);
    for (std::size_t j = ii + 1; j < n; ++j) s -= m(ii, j) * x[j];
    x[ii] = s / m(ii, ii);
  }
  return x;
}

inline RatMat inverse(const RatMat& a) {
  if (!a.is_square()) throw DimensionError("inverse: matrix is not square");
  const std::size_t n = a.rows();
  RatMat m = hstack(a, RatMat::identity(n));
  auto piv = detail::rref_in_place(m, n);
  if (piv.size() < n) throw SingularMatrixError("inverse: singular matrix");
  return m.block(0, n, n, n);
}

/// Some solution of A x = b (any shape), or nullopt when inconsistent.
inline std::optional<RatVec> solve_any(const RatMat& a, const RatVec& b) {
  if (a.rows() != b.dim()) throw DimensionError("solve_any: right-hand side length mismatch");
  RatMat m(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    m(i, a.cols()) = b[i];
  }
  auto piv = detail::rref_in_place(m, a.cols());
  for (std::size_t i = piv.size(); i < m.rows(); ++i)
    if (m(i, a.cols()) != 0) return std::nullopt;
  RatVec x(a.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = m(r, a.cols());
  return x;
}

/// Columns form a basis of {x : A x = 0}.
inline RatMat kernel_basis(const RatMat& a) {
  RatMat m = a;
  auto piv = detail::rref_in_place(m, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec v(a.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return RatMat::from_columns(a.cols(), basis);
}

/// Columns form a basis of {x : B^T x = 0}.
inline RatMat orth_complement_basis(const RatMat& b) { return kernel_basis(b.transpose()); }

/// B^+ = (B^T B)^{-1} B^T for B with full column rank.
inline RatMat left_inverse(const RatMat& b) {
  RatMat bt = b.transpose();
  RatMat gram = bt * b;
  if (rank(gram) < gram.rows()) throw RankDeficientError("left_inverse: columns are linearly dependent");
  return inverse(gram) * bt;
}

/// Indices of a maximal linearly independent prefix-greedy subset of columns.
inline std::vector<std::size_t> independent_columns(const RatMat& a) {
  RatMat m = a;
  return detail::rref_in_place(m, a.cols());
}

/// Orthogonal projector onto the column span of `basis` (full column rank).
inline RatMat projector(const RatMat& basis) {
  if (basis.cols() == 0) return RatMat(basis.rows(), basis.rows());
  return basis * left_inverse(basis);
}

inline std::string to_string(const RatVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) s += ' ';
    s += to_string(v[i]);
  }
  return s + "]";
}

inline std::string to_string(const RatMat& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ' ';
      s += to_string(m(i, j));
    }
  }
  return s + "]";
}

inline std::ostream& operator<<(std::ostream& os, const RatVec& v) { return os << to_string(v); }
inline std::ostream& operator<<(std::ostream& os, const RatMat& m) { return os << to_string(m); }

}  // namespace miqpa
