#pragma once

#include "schwarz/block.hpp"
#include "schwarz/dense.hpp"
#include "schwarz/experiments.hpp"

#include <random>

namespace testing_support {

using schwarz::BlockArrowSystem;
using schwarz::BlockTridiagonal;
using schwarz::DenseMatrix;

inline DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double shift = 0.0) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  DenseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    if (i < c) m(i, i) += shift;
  }
  return m;
}

inline schwarz::Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  schwarz::Vector v(n);
  for (double& x : v) x = d(rng);
  return v;
}

/// 1x1-block chain tridiag(-1, 2, -1) of size 3.
inline BlockArrowSystem scalar_chain() {
  const DenseMatrix two = DenseMatrix::from_rows({{2.0}});
  const DenseMatrix minus = DenseMatrix::from_rows({{-1.0}});
  const BlockTridiagonal wing({}, {two}, {});
  return BlockArrowSystem::assemble(1, 1, wing, wing, two, minus, minus, minus, minus);
}

/// Non-Toeplitz wing with random diagonally dominant blocks.
inline BlockTridiagonal random_wing(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<DenseMatrix> sub, diag, super;
  for (std::size_t i = 0; i < m; ++i) diag.push_back(random_matrix(rng, n, n, 3.0 * n + 2.0));
  for (std::size_t i = 0; i + 1 < m; ++i) {
    sub.push_back(random_matrix(rng, n, n));
    super.push_back(random_matrix(rng, n, n));
  }
  return BlockTridiagonal(sub, diag, super);
}

}  // namespace testing_support
