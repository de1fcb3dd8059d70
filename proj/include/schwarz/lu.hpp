#pragma once

#include "schwarz/dense.hpp"

#include <cstddef>
#include <vector>

namespace schwarz {

/// Pivots at or below this fraction of inf_norm(m) flag the matrix singular.
inline constexpr double kSingularityThreshold = 1e-13;

/// P m = L U with partial pivoting; L (unit diagonal) and U share storage.
struct LUFactors {
  DenseMatrix lu;
  std::vector<std::size_t> perm;  // row i of P m is row perm[i] of m
  double min_pivot = 0.0;

  std::size_t dim() const noexcept { return lu.rows(); }
  /// Product of the pivots with the permutation sign.
  double determinant() const;
};

LUFactors lu_factor(const DenseMatrix& m);
/// Same factorization without the OpenMP trailing update; kept as reference.
LUFactors lu_factor_serial(const DenseMatrix& m);

DenseMatrix solve(const LUFactors& f, const DenseMatrix& rhs);
Vector solve(const LUFactors& f, std::span<const double> rhs);

/// Convenience: lu_factor + solve against the identity.
DenseMatrix inverse(const DenseMatrix& m);

}  // namespace schwarz
