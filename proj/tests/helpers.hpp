#pragma once

#include "jacquetlab/matrix.hpp"

#include <cstdlib>
#include <random>
#include <vector>

namespace jltest {

using jacquetlab::ExactMatrix;
using jacquetlab::Rational;

inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("JACQUETLAB_SEED")) return std::strtoull(s, nullptr, 10);
  return 987654321ull;
}

inline Rational random_rational(std::mt19937_64& rng, int num_range = 9, int den_range = 5) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  return Rational(num(rng), den(rng));
}

inline ExactMatrix random_sparse(std::mt19937_64& rng, int rows, int cols, double fill = 0.3) {
  ExactMatrix m(rows, cols);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (coin(rng) < fill) m.set(i, j, random_rational(rng));
  return m;
}

// Independent oracle: dense fraction-free style Gaussian elimination rank.
inline int dense_rank_oracle(const ExactMatrix& a) {
  std::vector<std::vector<Rational>> d(a.rows(), std::vector<Rational>(a.cols(), Rational(0)));
  for (int j = 0; j < a.cols(); ++j)
    for (const auto& [i, v] : a.column(j)) d[i][j] = v;
  int rank = 0;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < a.rows(); ++r)
      if (d[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(d[piv], d[row]);
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row || d[r][col] == 0) continue;
      Rational factor = d[r][col] / d[row][col];
      for (int c = col; c < a.cols(); ++c) d[r][c] -= factor * d[row][c];
    }
    ++rank;
    ++row;
  }
  return rank;
}

}  // namespace jltest
