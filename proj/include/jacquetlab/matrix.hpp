#pragma once

// Sparse exact matrices and vectors over Q. Zero entries are never stored;
// all arithmetic is exact; iteration order is always by increasing index so
// every downstream computation is reproducible bit-for-bit.

#include "jacquetlab/polynomial.hpp"
#include "jacquetlab/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace jacquetlab {

using SparseVec = std::map<int, Rational>;  // index -> nonzero value

inline void vec_add_scaled(SparseVec& dst, const SparseVec& src, const Rational& s) {
  if (s == 0) return;
  for (const auto& [i, v] : src) {
    auto it = dst.find(i);
    if (it == dst.end()) {
      dst.emplace(i, v * s);
    } else {
      it->second += v * s;
      if (it->second == 0) dst.erase(it);
    }
  }
}

inline void vec_scale(SparseVec& v, const Rational& s) {
  if (s == 0) {
    v.clear();
    return;
  }
  for (auto& [i, val] : v) val *= s;
}

inline Rational vec_get(const SparseVec& v, int i) {
  auto it = v.find(i);
  return it == v.end() ? Rational(0) : it->second;
}

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }
  static ExactMatrix zero(int rows, int cols) { return ExactMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void set(int r, int c, const Rational& v) {
    check(r, c);
    if (v == 0)
      col_[c].erase(r);
    else
      col_[c][r] = v;
  }
  void add(int r, int c, const Rational& v) {
    check(r, c);
    auto it = col_[c].find(r);
    if (it == col_[c].end()) {
      if (v != 0) col_[c].emplace(r, v);
    } else {
      it->second += v;
      if (it->second == 0) col_[c].erase(it);
    }
  }
  Rational at(int r, int c) const {
    check(r, c);
    auto it = col_[c].find(r);
    return it == col_[c].end() ? Rational(0) : it->second;
  }
  const SparseVec& column(int c) const { return col_.at(c); }
  void set_column(int c, SparseVec v) {
    if (c < 0 || c >= cols_) throw std::out_of_range("column index");
    col_[c] = std::move(v);
  }

  size_t nnz() const {
    size_t n = 0;
    for (const auto& c : col_) n += c.size();
    return n;
  }
  bool is_zero() const { return nnz() == 0; }

  SparseVec apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [j, xv] : x) {
      if (j < 0 || j >= cols_) throw std::out_of_range("apply: vector index");
      vec_add_scaled(y, col_[j], xv);
    }
    return y;
  }

  ExactMatrix operator*(const ExactMatrix& b) const {
    if (cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    ExactMatrix p(rows_, b.cols_);
    for (int j = 0; j < b.cols_; ++j) p.col_[j] = apply(b.col_[j]);
    return p;
  }
  ExactMatrix operator+(const ExactMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    ExactMatrix s = *this;
    for (int j = 0; j < cols_; ++j) vec_add_scaled(s.col_[j], b.col_[j], 1);
    return s;
  }
  ExactMatrix operator-(const ExactMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix diff shape mismatch");
    ExactMatrix s = *this;
    for (int j = 0; j < cols_; ++j) vec_add_scaled(s.col_[j], b.col_[j], -1);
    return s;
  }
  ExactMatrix operator*(const Rational& s) const {
    ExactMatrix m(rows_, cols_);
    if (s == 0) return m;
    m.col_ = col_;
    for (auto& c : m.col_)
      for (auto& [i, v] : c) v *= s;
    return m;
  }
  bool operator==(const ExactMatrix& b) const {
    return rows_ == b.rows_ && cols_ == b.cols_ && col_ == b.col_;
  }

  ExactMatrix pow(int e) const {
    if (rows_ != cols_) throw std::invalid_argument("pow: square matrix required");
    if (e < 0) throw std::invalid_argument("pow: negative exponent");
    ExactMatrix acc = identity(rows_);
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
  }

  Rational trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace: square matrix required");
    Rational t = 0;
    for (int i = 0; i < cols_; ++i) t += at(i, i);
    return t;
  }

  // Faddeev-LeVerrier; exact, adequate at the dimensions that occur here.
  RatPoly char_poly() const {
    if (rows_ != cols_) throw std::invalid_argument("char_poly: square matrix required");
    const int n = rows_;
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    ExactMatrix m = zero(n, n);
    for (int k = 1; k <= n; ++k) {
      ExactMatrix am = *this * m;
      for (int i = 0; i < n; ++i) am.add(i, i, c[n - k + 1]);
      m = am;
      c[n - k] = (*this * m).trace() * Rational(-1, k);
    }
    return RatPoly(std::move(c));
  }

 private:
  void check(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
  }
  int rows_ = 0, cols_ = 0;
  std::vector<SparseVec> col_;  // column-major sparse storage
};

}  // namespace jacquetlab
