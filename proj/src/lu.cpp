#include "schwarz/lu.hpp"

#include "schwarz/error.hpp"
#include "schwarz/kernels.hpp"
#include "schwarz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace schwarz {

namespace {

template <typename TrailingUpdate>
LUFactors factor(const DenseMatrix& m, TrailingUpdate update) {
  if (!m.is_square()) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "lu_factor needs a square matrix, got " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()));
  }
  const std::size_t n = m.rows();
  const double threshold = kSingularityThreshold * inf_norm(m);
  LUFactors f{m, std::vector<std::size_t>(n), n == 0 ? 0.0 : INFINITY};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  DenseMatrix& a = f.lu;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    }
    if (!(best > threshold)) {
      throw SchwarzError(ErrorCode::SingularMatrix,
                         "pivot " + std::to_string(k) + " has magnitude " + std::to_string(best));
    }
    if (p != k) {
      std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(p).begin());
      std::swap(f.perm[k], f.perm[p]);
    }
    f.min_pivot = std::min(f.min_pivot, best);
    update(a, k);
  }
  return f;
}

}  // namespace

double LUFactors::determinant() const {
  double det = 1.0;
  for (std::size_t i = 0; i < dim(); ++i) det *= lu(i, i);
  // parity of the permutation via cycle count
  std::vector<bool> seen(perm.size(), false);
  std::size_t swaps = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    swaps += len - 1;
  }
  return swaps % 2 == 0 ? det : -det;
}

LUFactors lu_factor(const DenseMatrix& m) {
  return factor(m, [](DenseMatrix& a, std::size_t k) { kernels::lu_trailing_update(a, k); });
}

LUFactors lu_factor_serial(const DenseMatrix& m) {
  return factor(m,
                [](DenseMatrix& a, std::size_t k) { kernels::serial::lu_trailing_update(a, k); });
}

DenseMatrix solve(const LUFactors& f, const DenseMatrix& rhs) {
  const std::size_t n = f.dim();
  if (rhs.rows() != n) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "solve: factors of dimension " + std::to_string(n) + ", rhs has " +
                           std::to_string(rhs.rows()) + " rows");
  }
  const std::size_t nrhs = rhs.cols();
  DenseMatrix x(n, nrhs);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(rhs.row(f.perm[i]).begin(), rhs.row(f.perm[i]).end(), x.row(i).begin());
  }
  // forward: L has unit diagonal
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = x.row(i);
    for (std::size_t k = 0; k < i; ++k) {
      const double l = f.lu(i, k);
      if (l == 0.0) continue;
      auto xk = x.row(k);
      for (std::size_t j = 0; j < nrhs; ++j) xi[j] -= l * xk[j];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    auto xi = x.row(ii);
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double u = f.lu(ii, k);
      if (u == 0.0) continue;
      auto xk = x.row(k);
      for (std::size_t j = 0; j < nrhs; ++j) xi[j] -= u * xk[j];
    }
    const double d = f.lu(ii, ii);
    for (std::size_t j = 0; j < nrhs; ++j) xi[j] /= d;
  }
  return x;
}

Vector solve(const LUFactors& f, std::span<const double> rhs) {
  DenseMatrix b(rhs.size(), 1, Vector(rhs.begin(), rhs.end()));
  DenseMatrix x = solve(f, b);
  return Vector(x.entries().begin(), x.entries().end());
}

DenseMatrix inverse(const DenseMatrix& m) {
  return solve(lu_factor(m), DenseMatrix::identity(m.rows()));
}

}  // namespace schwarz
