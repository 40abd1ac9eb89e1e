#pragma once

// Reduced-echelon subspaces with a pluggable pivot scan order, kernels,
// cokernels, and exact solving against column spans.
//
// The scan order matters: quotient representatives are chosen as the
// non-pivot coordinates, and the window machinery orders coordinates so that
// pivots are consumed near artificial window edges first, leaving
// representatives in the safely materialized interior. With the default
// identity order this is the ordinary RREF with lowest-index pivots.

#include "jacquetlab/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace jacquetlab {

class Subspace {
 public:
  explicit Subspace(int ambient, std::vector<int> scan_order = {})
      : ambient_(ambient), order_(std::move(scan_order)) {
    if (order_.empty()) {
      order_.resize(ambient_);
      std::iota(order_.begin(), order_.end(), 0);
    }
    if (static_cast<int>(order_.size()) != ambient_)
      throw std::invalid_argument("scan order size mismatch");
    rank_of_.assign(ambient_, -1);
    for (int k = 0; k < ambient_; ++k) {
      if (order_[k] < 0 || order_[k] >= ambient_ || rank_of_[order_[k]] != -1)
        throw std::invalid_argument("scan order is not a permutation");
      rank_of_[order_[k]] = k;
    }
  }

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<SparseVec>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  std::vector<int> non_pivots() const {
    std::vector<bool> used(ambient_, false);
    for (int p : pivots_) used[p] = true;
    std::vector<int> out;
    for (int i = 0; i < ambient_; ++i)
      if (!used[i]) out.push_back(i);
    return out;
  }

  // Normal form of v modulo the subspace: zero at every pivot coordinate.
  SparseVec reduce(SparseVec v) const {
    for (size_t i = 0; i < basis_.size(); ++i) {
      Rational c = vec_get(v, pivots_[i]);
      if (c != 0) vec_add_scaled(v, basis_[i], -c);
    }
    return v;
  }

  // As reduce(), also reporting v = sum coeffs[i] * basis[i] + residue.
  SparseVec reduce_with_coeffs(SparseVec v, std::vector<Rational>* coeffs) const {
    if (coeffs) coeffs->assign(basis_.size(), Rational(0));
    for (size_t i = 0; i < basis_.size(); ++i) {
      Rational c = vec_get(v, pivots_[i]);
      if (c != 0) {
        vec_add_scaled(v, basis_[i], -c);
        if (coeffs) (*coeffs)[i] = c;
      }
    }
    return v;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  // Gaussian insert with full back-reduction; true if the dimension grew.
  bool insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    int piv = -1;
    for (const auto& [i, val] : v)
      if (piv == -1 || rank_of_[i] < rank_of_[piv]) piv = i;
    Rational pv = v.at(piv);
    vec_scale(v, Rational(1) / pv);
    for (size_t i = 0; i < basis_.size(); ++i) {
      Rational c = vec_get(basis_[i], piv);
      if (c != 0) vec_add_scaled(basis_[i], v, -c);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv,
                                [this](int a, int b) { return rank_of_[a] < rank_of_[b]; });
    size_t idx = static_cast<size_t>(pos - pivots_.begin());
    pivots_.insert(pos, piv);
    basis_.insert(basis_.begin() + idx, std::move(v));
    return true;
  }

  bool same_order(const Subspace& o) const { return order_ == o.order_; }
  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && order_ == o.order_ && pivots_ == o.pivots_ &&
           basis_ == o.basis_;
  }

 private:
  int ambient_;
  std::vector<int> order_;    // order_[k] = coordinate scanned k-th
  std::vector<int> rank_of_;  // coordinate -> scan position
  std::vector<SparseVec> basis_;
  std::vector<int> pivots_;  // pivot coordinate of basis_[i], ascending scan position
};

struct KernelCokernel {
  Subspace kernel;    // subspace of the source, RREF over column indices
  Subspace cokernel;  // representatives in the target for coker(A)
  int rank = 0;
};

inline Subspace column_space(const ExactMatrix& a) {
  Subspace cs(a.rows());
  for (int j = 0; j < a.cols(); ++j) cs.insert(a.column(j));
  return cs;
}

inline KernelCokernel kernel_cokernel(const ExactMatrix& a) {
  // Row-space RREF yields the kernel in the standard free-column form.
  Subspace rowspace(a.cols());
  {
    std::vector<SparseVec> rows(a.rows());
    for (int j = 0; j < a.cols(); ++j)
      for (const auto& [i, v] : a.column(j)) rows[i][j] = v;
    for (auto& r : rows) rowspace.insert(std::move(r));
  }
  Subspace kernel(a.cols());
  {
    std::vector<bool> is_pivot(a.cols(), false);
    for (int p : rowspace.pivots()) is_pivot[p] = true;
    for (int f = 0; f < a.cols(); ++f) {
      if (is_pivot[f]) continue;
      SparseVec x{{f, Rational(1)}};
      for (size_t i = 0; i < rowspace.basis().size(); ++i) {
        Rational c = vec_get(rowspace.basis()[i], f);
        if (c != 0) x[rowspace.pivots()[i]] = -c;
      }
      kernel.insert(std::move(x));
    }
  }
  Subspace cs = column_space(a);
  Subspace coker(a.rows());
  for (int r : cs.non_pivots()) coker.insert(SparseVec{{r, Rational(1)}});
  KernelCokernel out{std::move(kernel), std::move(coker), cs.dim()};
  if (out.rank + out.kernel.dim() != a.cols() || out.rank + out.cokernel.dim() != a.rows())
    throw std::logic_error("rank-nullity violated");  // unreachable
  return out;
}

// Exact solve of A x = b against the columns of A. Elimination carries
// combination tags so the solution drops out of the reduction.
class ColumnSolver {
 public:
  explicit ColumnSolver(const ExactMatrix& a)
      : rows_(a.rows()), cols_(a.cols()), space_(a.rows() + a.cols(), tagged_order(a.rows(), a.cols())) {
    for (int j = 0; j < cols_; ++j) {
      SparseVec ext = a.column(j);
      ext[rows_ + j] = 1;
      space_.insert(std::move(ext));
    }
  }

  // Returns x with A x = b, or nullopt if b is outside the column span.
  std::optional<SparseVec> solve(const SparseVec& b) const {
    SparseVec res = space_.reduce(b);
    SparseVec x;
    for (const auto& [i, v] : res) {
      if (i < rows_) return std::nullopt;
      x[i - rows_] = -v;
    }
    return x;
  }

 private:
  static std::vector<int> tagged_order(int rows, int cols) {
    std::vector<int> ord(rows + cols);
    std::iota(ord.begin(), ord.end(), 0);  // row coordinates first, tags last
    return ord;
  }
  int rows_, cols_;
  Subspace space_;
};

}  // namespace jacquetlab
