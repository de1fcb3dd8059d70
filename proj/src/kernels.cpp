#include "schwarz/kernels.hpp"

#include "schwarz/error.hpp"

#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace schwarz::kernels {

namespace {

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr std::size_t kParallelWork = 1u << 15;

void check_gemm(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "gemm: inner dimensions " + std::to_string(a.cols()) + " and " +
                           std::to_string(b.rows()));
  }
}

void check_gemv(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "gemv: matrix has " + std::to_string(a.cols()) + " columns, vector " +
                           std::to_string(x.size()) + " entries");
  }
}

inline void gemm_row(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c, std::size_t i) {
  double* ci = c.data() + i * c.cols();
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const double aik = a(i, k);
    if (aik == 0.0) continue;
    const double* bk = b.data() + k * b.cols();
    for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
  }
}

inline double gemv_row(const DenseMatrix& a, std::span<const double> x, std::size_t i) {
  const double* ai = a.data() + i * a.cols();
  double s = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
  return s;
}

inline void trailing_row(DenseMatrix& a, std::size_t k, std::size_t i) {
  const std::size_t n = a.cols();
  double* ai = a.data() + i * n;
  const double* ak = a.data() + k * n;
  ai[k] /= ak[k];
  const double l = ai[k];
  if (l == 0.0) return;
  for (std::size_t j = k + 1; j < n; ++j) ai[j] -= l * ak[j];
}

}  // namespace

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b) {
  check_gemm(a, b);
  DenseMatrix c(a.rows(), b.cols());
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
  [[maybe_unused]] const bool big = a.rows() * a.cols() * b.cols() >= kParallelWork;
#pragma omp parallel for schedule(static) if (big)
  for (std::ptrdiff_t i = 0; i < rows; ++i) gemm_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

Vector gemv(const DenseMatrix& a, std::span<const double> x) {
  check_gemv(a, x);
  Vector y(a.rows());
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
  [[maybe_unused]] const bool big = a.rows() * a.cols() >= kParallelWork;
#pragma omp parallel for schedule(static) if (big)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    y[static_cast<std::size_t>(i)] = gemv_row(a, x, static_cast<std::size_t>(i));
  }
  return y;
}

void lu_trailing_update(DenseMatrix& a, std::size_t k) {
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
  const auto first = static_cast<std::ptrdiff_t>(k + 1);
  [[maybe_unused]] const bool big = (a.rows() - k) * (a.cols() - k) >= kParallelWork;
#pragma omp parallel for schedule(static) if (big)
  for (std::ptrdiff_t i = first; i < n; ++i) trailing_row(a, k, static_cast<std::size_t>(i));
}

namespace serial {

DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b) {
  check_gemm(a, b);
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) gemm_row(a, b, c, i);
  return c;
}

Vector gemv(const DenseMatrix& a, std::span<const double> x) {
  check_gemv(a, x);
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = gemv_row(a, x, i);
  return y;
}

void lu_trailing_update(DenseMatrix& a, std::size_t k) {
  for (std::size_t i = k + 1; i < a.rows(); ++i) trailing_row(a, k, i);
}

}  // namespace serial

}  // namespace schwarz::kernels
