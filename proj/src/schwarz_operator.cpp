#include "schwarz/schwarz_operator.hpp"

#include "schwarz/error.hpp"
#include "schwarz/lu.hpp"
#include "schwarz/norms.hpp"

#include <string>

namespace schwarz {

const char* to_string(Ordering o) noexcept { return o == Ordering::T12 ? "t12" : "t21"; }

namespace {

BlockTridiagonalLU factor_local(const BlockArrowSystem& sys, Subdomain which) {
  try {
    return BlockTridiagonalLU(sys.local_matrix(which));
  } catch (const SchwarzError& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    throw SchwarzError(ErrorCode::SingularMatrix,
                       std::string(which == Subdomain::Top ? "local matrix A_1" : "local matrix A_2") +
                           " is singular (" + e.what() + ")");
  }
}

struct WingInverseData {
  ZBlocks top_last;      // Z^H_{1:m,m}
  ZBlocks bottom_first;  // Z^h_{1:m,1}
  DenseMatrix pi1;
  DenseMatrix pi2;
};

WingInverseData schur_route(const BlockArrowSystem& sys) {
  WingInverseData w;
  w.top_last = extract_z_strip(sys.wing_top(), WingSide::Last);
  w.bottom_first = extract_z_strip(sys.wing_bottom(), WingSide::First);
  const std::size_t m = sys.wing_length();
  const DenseMatrix& zmm = w.top_last.strip[m - 1];
  const DenseMatrix& z11 = w.bottom_first.strip[0];
  const DenseMatrix s1 = sys.center() - sys.coupling_c() * zmm * sys.coupling_bh();
  const DenseMatrix s2 = sys.center() - sys.coupling_b() * z11 * sys.coupling_ch();
  w.pi1 = solve(lu_factor(s1), sys.coupling_b());
  w.pi2 = solve(lu_factor(s2), sys.coupling_c());
  return w;
}

}  // namespace

LocalSolvers::LocalSolvers(const BlockArrowSystem& sys)
    : sys_(&sys), top_(factor_local(sys, Subdomain::Top)),
      bottom_(factor_local(sys, Subdomain::Bottom)) {}

Vector LocalSolvers::local_solve(Subdomain which, std::span<const double> r) const {
  const std::size_t total = sys_->dim();
  const std::size_t local = sys_->local_dim();
  if (r.size() != total) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "local_solve: vector has " + std::to_string(r.size()) +
                           " entries, expected " + std::to_string(total));
  }
  const std::size_t offset = which == Subdomain::Top ? 0 : total - local;
  const Vector z = factors(which).solve(r.subspan(offset, local));
  Vector out(total, 0.0);
  std::copy(z.begin(), z.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
  return out;
}

Vector LocalSolvers::project(Subdomain which, std::span<const double> y) const {
  return local_solve(which, sys_->multiply(y));
}

SchwarzCore compute_core(const BlockArrowSystem& sys) {
  const std::size_t n = sys.block_dim();
  const std::size_t m = sys.wing_length();
  const LocalSolvers solvers(sys);

  DenseMatrix rhs1(sys.local_dim(), n);
  rhs1.set_block(m * n, 0, sys.coupling_b());
  const DenseMatrix x1 = solvers.factors(Subdomain::Top).solve(rhs1);

  DenseMatrix rhs2(sys.local_dim(), n);
  rhs2.set_block(0, 0, sys.coupling_c());
  const DenseMatrix x2 = solvers.factors(Subdomain::Bottom).solve(rhs2);

  SchwarzCore core;
  core.pi1 = x1.block(m * n, 0, n, n);
  core.pi2 = x2.block(0, 0, n, n);
  for (std::size_t j = 0; j < m; ++j) {
    core.p1.push_back(x1.block(j * n, 0, n, n));
    core.p2.push_back(x2.block((j + 1) * n, 0, n, n));
  }
  return core;
}

SchwarzCore compute_core_schur(const BlockArrowSystem& sys) {
  const WingInverseData w = schur_route(sys);
  SchwarzCore core;
  core.pi1 = w.pi1;
  core.pi2 = w.pi2;
  const DenseMatrix bh_pi1 = sys.coupling_bh() * w.pi1;
  const DenseMatrix ch_pi2 = sys.coupling_ch() * w.pi2;
  for (std::size_t j = 0; j < sys.wing_length(); ++j) {
    core.p1.push_back(-(w.top_last.strip[j] * bh_pi1));
    core.p2.push_back(-(w.bottom_first.strip[j] * ch_pi2));
  }
  return core;
}

LowRankT::LowRankT(Ordering ordering, DenseMatrix v, DenseMatrix kernel, std::size_t pick_block)
    : ordering_(ordering), v_(std::move(v)), kernel_(std::move(kernel)), pick_(pick_block) {}

Vector LowRankT::apply_power(std::span<const double> x, std::size_t k) const {
  if (x.size() != dim()) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "apply_T: vector has " + std::to_string(x.size()) + " entries, expected " +
                           std::to_string(dim()));
  }
  if (k == 0) return Vector(x.begin(), x.end());
  const std::size_t n = block_dim();
  Vector y(x.begin() + static_cast<std::ptrdiff_t>(pick_ * n),
           x.begin() + static_cast<std::ptrdiff_t>((pick_ + 1) * n));
  for (std::size_t i = 1; i < k; ++i) y = kernel_ * y;
  return v_ * y;
}

DenseMatrix LowRankT::materialize_power(std::size_t k) const {
  if (k == 0) return DenseMatrix::identity(dim());
  const DenseMatrix vk = v_ * power_kernel(*this, k - 1);
  DenseMatrix t(dim(), dim());
  t.set_block(0, pick_ * block_dim(), vk);
  return t;
}

LowRankT build_lowrank(const SchwarzCore& core, Ordering ordering) {
  const std::size_t n = core.block_dim();
  const std::size_t m = core.wing_length();
  DenseMatrix v(n * (2 * m + 1), n);
  if (ordering == Ordering::T12) {
    const DenseMatrix& p1m = core.p1[m - 1];
    for (std::size_t j = 0; j < m; ++j) v.set_block(j * n, 0, -core.p1[j]);
    v.set_block(m * n, 0, core.pi2 * p1m);
    for (std::size_t j = 0; j < m; ++j) v.set_block((m + 1 + j) * n, 0, core.p2[j] * p1m);
    return LowRankT(ordering, std::move(v), core.p2[0] * p1m, m + 1);
  }
  const DenseMatrix& p21 = core.p2[0];
  for (std::size_t j = 0; j < m; ++j) v.set_block(j * n, 0, core.p1[j] * p21);
  v.set_block(m * n, 0, core.pi1 * p21);
  for (std::size_t j = 0; j < m; ++j) v.set_block((m + 1 + j) * n, 0, -core.p2[j]);
  return LowRankT(ordering, std::move(v), core.p1[m - 1] * p21, m - 1);
}

Vector apply_T(const LowRankT& t, std::span<const double> x) { return t.apply_power(x, 1); }

DenseMatrix power_kernel(const LowRankT& t, std::size_t k) {
  DenseMatrix result = DenseMatrix::identity(t.block_dim());
  DenseMatrix base = t.kernel();
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

DenseProjections dense_projections(const BlockArrowSystem& sys) {
  const DenseMatrix full = materialize_dense(sys);
  const std::size_t total = sys.dim();
  const std::size_t local = sys.local_dim();
  DenseProjections p{DenseMatrix(total, total), DenseMatrix(total, total)};
  const DenseMatrix top_rows = full.block(0, 0, local, total);
  const DenseMatrix bottom_rows = full.block(total - local, 0, local, total);
  p.p1.set_block(0, 0, solve(lu_factor(restrict_to(sys, Subdomain::Top)), top_rows));
  p.p2.set_block(total - local, 0,
                 solve(lu_factor(restrict_to(sys, Subdomain::Bottom)), bottom_rows));
  return p;
}

DenseMatrix materialize_T(const BlockArrowSystem& sys, Ordering ordering) {
  const DenseProjections p = dense_projections(sys);
  const DenseMatrix id = DenseMatrix::identity(sys.dim());
  const DenseMatrix q1 = id - p.p1;
  const DenseMatrix q2 = id - p.p2;
  return ordering == Ordering::T12 ? q2 * q1 : q1 * q2;
}

double rho_exact(const BlockArrowSystem& sys, Ordering ordering, NormKind norm) {
  const WingInverseData w = schur_route(sys);
  const std::size_t m = sys.wing_length();
  const DenseMatrix top = w.top_last.strip[m - 1] * sys.coupling_bh() * w.pi1;
  const DenseMatrix bottom = w.bottom_first.strip[0] * sys.coupling_ch() * w.pi2;
  return schwarz::norm(ordering == Ordering::T12 ? bottom * top : top * bottom, norm);
}

}  // namespace schwarz
