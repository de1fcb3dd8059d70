#include "schwarz/norms.hpp"

#include "schwarz/error.hpp"
#include "schwarz/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

namespace schwarz {

double inf_norm(const DenseMatrix& m) noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (double v : m.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double one_norm(const DenseMatrix& m) noexcept {
  std::vector<double> sums(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) sums[j] += std::abs(m(i, j));
  return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

double two_norm(const DenseMatrix& m) {
  constexpr double kTol = 1e-12;
  constexpr int kMaxIter = 50000;
  if (m.empty()) return 0.0;
  const double scale = inf_norm(m);
  if (scale == 0.0) return 0.0;

  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(m.cols());
  for (double& v : x) v = dist(rng);

  const DenseMatrix mt = m.transpose();
  double sigma = 0.0;
  for (int it = 0; it < kMaxIter; ++it) {
    const double nx = two_norm(std::span<const double>(x));
    for (double& v : x) v /= nx;
    const Vector y = kernels::gemv(m, x);
    const double next = two_norm(std::span<const double>(y));
    if (next == 0.0) return 0.0;  // start vector in the null space of m^T m; unlikely
    if (std::abs(next - sigma) <= kTol * next) return next;
    sigma = next;
    x = kernels::gemv(mt, y);
  }
  throw SchwarzError(ErrorCode::NoConvergence,
                     "two_norm: power iteration did not reach 1e-12 in 50000 steps");
}

double norm(const DenseMatrix& m, NormKind kind) {
  return kind == NormKind::Inf ? inf_norm(m) : two_norm(m);
}

std::vector<double> singular_values(const DenseMatrix& m) {
  if (m.rows() > kSingularValueLimit || m.cols() > kSingularValueLimit) {
    throw SchwarzError(ErrorCode::SizeLimitExceeded,
                       "singular_values is limited to 400x400, got " + std::to_string(m.rows()) +
                           "x" + std::to_string(m.cols()));
  }
  // one-sided Jacobi on the columns of the taller orientation
  DenseMatrix a = m.rows() >= m.cols() ? m.transpose() : m;  // rows of a are the columns
  const std::size_t ncol = a.rows();
  const std::size_t len = a.cols();
  constexpr double kEps = 1e-15;

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < ncol; ++p) {
      for (std::size_t q = p + 1; q < ncol; ++q) {
        auto ap = a.row(p);
        auto aq = a.row(q);
        const double alpha = dot(ap, ap);
        const double beta = dot(aq, aq);
        const double gamma = dot(ap, aq);
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < len; ++k) {
          const double x = ap[k];
          const double y = aq[k];
          ap[k] = c * x - s * y;
          aq[k] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(ncol);
  for (std::size_t p = 0; p < ncol; ++p) sv[p] = two_norm(a.row(p));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

}  // namespace schwarz
