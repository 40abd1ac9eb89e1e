#pragma once

// Generalized eigenspace machinery: primary decompositions against an
// explicit candidate set and nilpotency orders on invariant subspaces.
// Candidates always come from the depth-one seed spectrum shifted by
// -2Z>=0; characteristic polynomials of large matrices are never factored.

#include "jacquetlab/errors.hpp"
#include "jacquetlab/linalg.hpp"

#include <sstream>

namespace jacquetlab {

struct PrimaryComponent {
  Rational eigenvalue;
  int dimension = 0;
  int nilpotency_order = 0;  // smallest d with (A - a I)^d zero on the component
  Subspace basis;
};

// Smallest d >= 1 with (A - alpha I)^d V = 0; throws if alpha is not the
// unique generalized eigenvalue on V.
inline int nilpotency_order(const ExactMatrix& a, const Rational& alpha, const Subspace& v) {
  if (a.rows() != a.cols()) throw std::invalid_argument("nilpotency_order: square matrix required");
  if (v.dim() == 0) return 1;
  ExactMatrix shifted = a;
  for (int i = 0; i < a.rows(); ++i) shifted.add(i, i, -alpha);
  std::vector<SparseVec> cur(v.basis());
  for (int d = 1; d <= v.dim(); ++d) {
    bool all_zero = true;
    for (auto& w : cur) {
      w = shifted.apply(w);
      if (!w.empty()) all_zero = false;
    }
    if (all_zero) return d;
  }
  throw NotNilpotentOnSubspace("(A - " + rat_str(alpha) + " I) is not nilpotent on the subspace");
}

// Kernel-of-power primary decomposition. Components are returned in
// descending eigenvalue order; completeness (dimensions summing to the
// ambient dimension) is mandatory.
inline std::vector<PrimaryComponent> primary_decomposition(const ExactMatrix& a,
                                                           std::vector<Rational> candidates) {
  if (a.rows() != a.cols()) throw std::invalid_argument("primary_decomposition: square matrix");
  const int n = a.rows();
  std::sort(candidates.begin(), candidates.end(), std::greater<Rational>());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<PrimaryComponent> comps;
  Subspace sum(n);
  for (const auto& alpha : candidates) {
    ExactMatrix shifted = a;
    for (int i = 0; i < n; ++i) shifted.add(i, i, -alpha);
    Subspace ker = kernel_cokernel(shifted.pow(n)).kernel;
    if (ker.dim() == 0) continue;
    for (const auto& w : ker.basis()) {
      if (!ker.contains(a.apply(w)))
        throw std::logic_error("primary component not invariant");  // unreachable
      sum.insert(w);
    }
    PrimaryComponent pc{alpha, ker.dim(), 0, ker};
    pc.nilpotency_order = nilpotency_order(a, alpha, pc.basis);
    comps.push_back(std::move(pc));
  }
  int total = 0;
  for (const auto& c : comps) total += c.dimension;
  if (total != sum.dim() || total != n) {
    std::ostringstream os;
    os << "primary decomposition incomplete: components cover " << total << " of " << n
       << " dimensions (eigenvalue outside the candidate set, or irrational spectrum)";
    throw IncompleteSpectrum(os.str());
  }
  return comps;
}

}  // namespace jacquetlab
