#pragma once

#include "schwarz/dense.hpp"

#include <span>

// Data-parallel kernels. The OpenMP versions are the ones the library calls;
// the serial versions are the reference the tests and the benchmark compare
// them against. Both compute identical results (same summation order per
// output entry).
namespace schwarz::kernels {

/// Number of threads an OpenMP parallel region would use (1 without OpenMP).
int max_threads() noexcept;

DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b);
Vector gemv(const DenseMatrix& a, std::span<const double> x);
/// Rank-1 trailing update of rows [k+1, n) of an LU working matrix:
/// a(i, j) -= a(i, k) * a(k, j) for j > k, after a(i, k) /= a(k, k).
void lu_trailing_update(DenseMatrix& a, std::size_t k);

namespace serial {
DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b);
Vector gemv(const DenseMatrix& a, std::span<const double> x);
void lu_trailing_update(DenseMatrix& a, std::size_t k);
}  // namespace serial

}  // namespace schwarz::kernels
