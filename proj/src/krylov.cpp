#include "schwarz/krylov.hpp"

#include "schwarz/error.hpp"
#include "schwarz/format.hpp"
#include "schwarz/iteration.hpp"
#include "schwarz/norms.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <string>

namespace schwarz {

namespace {

constexpr double kHappyBreakdown = 1e-14;
constexpr std::size_t kTracePowers = 64;
constexpr std::size_t kTraceDimLimit = 400;
constexpr std::size_t kPowerSteps = 20000;
constexpr double kPowerTol = 1e-13;

// Solves the leading k x k upper triangle of the rotated Hessenberg matrix.
Vector back_substitute(const std::vector<Vector>& h, const Vector& g, std::size_t k) {
  Vector y(k, 0.0);
  for (std::size_t i = k; i-- > 0;) {
    double s = g[i];
    for (std::size_t j = i + 1; j < k; ++j) s -= h[j][i] * y[j];
    if (h[i][i] == 0.0) {
      throw SchwarzError(ErrorCode::Breakdown, "singular Hessenberg matrix in GMRES");
    }
    y[i] = s / h[i][i];
  }
  return y;
}

}  // namespace

GmresResult gmres(const LinearOperator& op, std::span<const double> rhs, double tol,
                  std::size_t max_iter) {
  if (!(tol > 0.0)) throw SchwarzError(ErrorCode::InvalidParameter, "tol must be positive");
  const std::size_t dim = rhs.size();
  GmresResult result;
  result.solution.assign(dim, 0.0);
  const double beta = two_norm(rhs);
  result.residual_norms.push_back(beta > 0.0 ? 1.0 : 0.0);
  if (beta == 0.0) return result;

  std::vector<Vector> basis;
  basis.emplace_back(rhs.begin(), rhs.end());
  for (double& x : basis[0]) x /= beta;
  std::vector<Vector> h;  // h[j] = column j, rotated in place
  Vector cs, sn;
  Vector g{beta};

  auto finish = [&](std::size_t k) {
    const Vector y = back_substitute(h, g, k);
    for (std::size_t j = 0; j < k; ++j) axpy(y[j], basis[j], result.solution);
    result.iterations = k;
    return result;
  };

  const std::size_t cap = std::min(max_iter, dim);
  for (std::size_t j = 0; j < cap; ++j) {
    Vector w = op(basis[j]);
    const double before = two_norm(w);
    Vector col(j + 2, 0.0);
    for (std::size_t i = 0; i <= j; ++i) {
      const double hij = dot(w, basis[i]);
      col[i] = hij;
      axpy(-hij, basis[i], w);
    }
    double after = two_norm(w);
    if (after < before / std::sqrt(2.0)) {
      for (std::size_t i = 0; i <= j; ++i) {
        const double corr = dot(w, basis[i]);
        col[i] += corr;
        axpy(-corr, basis[i], w);
      }
      after = two_norm(w);
    }
    col[j + 1] = after;

    for (std::size_t i = 0; i < j; ++i) {
      const double t = cs[i] * col[i] + sn[i] * col[i + 1];
      col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
      col[i] = t;
    }
    const double r = std::hypot(col[j], col[j + 1]);
    cs.push_back(r == 0.0 ? 1.0 : col[j] / r);
    sn.push_back(r == 0.0 ? 0.0 : col[j + 1] / r);
    col[j] = r;
    col[j + 1] = 0.0;
    g.push_back(-sn[j] * g[j]);
    g[j] = cs[j] * g[j];
    h.push_back(std::move(col));

    const double rel = std::abs(g[j + 1]) / beta;
    result.residual_norms.push_back(rel);
    if (after < kHappyBreakdown * beta || rel <= tol) return finish(j + 1);

    for (double& x : w) x /= after;
    basis.push_back(std::move(w));
  }
  if (cap == dim) return finish(cap);
  throw SchwarzError(ErrorCode::MaxIterExceeded,
                     "GMRES did not reach " + format_sci(tol) + " in " + std::to_string(max_iter) +
                         " iterations (relative residual " +
                         format_sci(result.residual_norms.back()) + ")");
}

GmresResult gmres_schwarz(const BlockArrowSystem& sys, std::span<const double> b, Ordering ordering,
                          double tol, std::size_t max_iter) {
  const LowRankT t = build_lowrank(compute_core(sys), ordering);
  const Vector v = consistency_vector(sys, b, ordering);
  const LinearOperator op = [&t](std::span<const double> y) {
    Vector out(y.begin(), y.end());
    axpy(-1.0, apply_T(t, y), out);
    return out;
  };
  return gmres(op, v, tol, max_iter);
}

AdditiveOperator::AdditiveOperator(SchwarzCore core) : core_(std::move(core)) {}

Vector AdditiveOperator::apply(std::span<const double> x) const {
  if (x.size() != dim()) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "additive operator: vector has " + std::to_string(x.size()) +
                           " entries, expected " + std::to_string(dim()));
  }
  const std::size_t n = block_dim();
  const std::size_t m = wing_length();
  const auto blk = [&](std::size_t j) { return x.subspan(j * n, n); };
  const Vector below = Vector(blk(m - 1).begin(), blk(m - 1).end());
  const Vector above = Vector(blk(m + 1).begin(), blk(m + 1).end());

  Vector y(dim(), 0.0);
  const auto put = [&](std::size_t j, const Vector& v, double sign) {
    for (std::size_t i = 0; i < n; ++i) y[j * n + i] += sign * v[i];
  };
  for (std::size_t j = 0; j < m; ++j) put(j, core_.p1[j] * above, -1.0);
  put(m, Vector(blk(m).begin(), blk(m).end()), -1.0);
  put(m, core_.pi1 * above, -1.0);
  put(m, core_.pi2 * below, -1.0);
  for (std::size_t j = 0; j < m; ++j) put(m + 1 + j, core_.p2[j] * below, -1.0);
  return y;
}

DenseMatrix AdditiveOperator::materialize() const {
  if (dim() > kDenseLimit) {
    throw SchwarzError(ErrorCode::SizeLimitExceeded,
                       "additive operator of dimension " + std::to_string(dim()) +
                           " exceeds " + std::to_string(kDenseLimit));
  }
  DenseMatrix t(dim(), dim());
  Vector e(dim(), 0.0);
  for (std::size_t j = 0; j < dim(); ++j) {
    e[j] = 1.0;
    const Vector col = apply(e);
    for (std::size_t i = 0; i < dim(); ++i) t(i, j) = col[i];
    e[j] = 0.0;
  }
  return t;
}

AdditiveOperator additive_operator(const BlockArrowSystem& sys) {
  return AdditiveOperator(compute_core(sys));
}

double spectral_radius_lower(const DenseMatrix& t) {
  if (!t.is_square()) throw SchwarzError(ErrorCode::DimensionMismatch, "matrix must be square");
  if (t.rows() > kDenseLimit) {
    throw SchwarzError(ErrorCode::SizeLimitExceeded, "spectral radius estimate limited to dimension 4000");
  }
  const std::size_t dim = t.rows();
  if (dim == 0) return 0.0;

  double best = 0.0;
  DenseMatrix power = t;
  const std::size_t powers = dim <= kTraceDimLimit ? kTracePowers : 1;
  for (std::size_t k = 1; k <= powers; ++k) {
    double tr = 0.0;
    for (std::size_t i = 0; i < dim; ++i) tr += power(i, i);
    best = std::max(best, std::pow(std::abs(tr) / static_cast<double>(dim), 1.0 / static_cast<double>(k)));
    if (k < powers) power = power * t;
  }

  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(dim);
  for (double& v : x) v = dist(rng);
  double scale = two_norm(x);
  for (double& v : x) v /= scale;
  double lambda = 0.0;
  for (std::size_t step = 0; step < kPowerSteps; ++step) {
    Vector y = t * x;
    const double next = dot(x, y);
    const double ny = two_norm(y);
    if (ny == 0.0) break;
    Vector residual = y;
    axpy(-next, x, residual);
    lambda = next;
    if (two_norm(residual) <= kPowerTol * ny) break;
    for (double& v : y) v /= ny;
    x = std::move(y);
  }
  return std::max(best, std::abs(lambda));
}

double spectral_radius_lower(const AdditiveOperator& op) { return spectral_radius_lower(op.materialize()); }

void write_residual_csv(std::ostream& out, const GmresResult& result) {
  out << "k,relative_residual\n";
  for (std::size_t k = 0; k < result.residual_norms.size(); ++k) {
    out << k << ',' << format_sci(result.residual_norms[k]) << '\n';
  }
}

}  // namespace schwarz
