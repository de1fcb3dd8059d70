#include "schwarz/problems.hpp"

#include "schwarz/error.hpp"
#include "schwarz/io.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace schwarz {

namespace {

DenseMatrix line_block(std::size_t n, const Stencil& s) {
  return DenseMatrix::tridiag(n, s.west, s.diag, s.east);
}

DenseMatrix scaled_identity(std::size_t n, double v) {
  DenseMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = v;
  return d;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw SchwarzError(ErrorCode::InvalidParameter, what);
}

}  // namespace

double ShishkinProblem::mesh_rho() const noexcept { return epsilon / (epsilon + coarse_hy); }

double ShishkinProblem::mesh_t_bound(Ordering ordering) const noexcept {
  return ordering == Ordering::T12 ? mesh_rho() : 1.0;
}

BlockArrowSystem assemble_from_stencils(std::size_t n, std::size_t m, const ShishkinStencils& s) {
  const auto wing = [&](const Stencil& st) {
    return BlockTridiagonal::toeplitz(m, scaled_identity(n, st.south), line_block(n, st),
                                      scaled_identity(n, st.north));
  };
  return BlockArrowSystem::assemble(
      n, m, wing(s.coarse), wing(s.fine), line_block(n, s.transition),
      scaled_identity(n, s.transition.north), scaled_identity(n, s.transition.south),
      scaled_identity(n, s.coarse.north), scaled_identity(n, s.fine.south));
}

ShishkinProblem build_shishkin(double epsilon, double beta, std::size_t nx, std::size_t my) {
  require(epsilon > 0.0 && std::isfinite(epsilon), "epsilon must be positive");
  require(beta >= 0.0 && std::isfinite(beta), "beta must be non-negative");
  require(nx >= 3, "Nx must be at least 3");
  require(my >= 4 && my % 2 == 0, "My must be even and at least 4");

  ShishkinProblem p;
  p.epsilon = epsilon;
  p.beta = beta;
  p.nx = nx;
  p.my = my;
  const double M = static_cast<double>(my);
  p.tau = std::min(0.5, 2.0 * epsilon * std::log(M));
  p.hx = 1.0 / static_cast<double>(nx);
  p.coarse_hy = 2.0 * (1.0 - p.tau) / M;
  p.fine_hy = 2.0 * p.tau / M;
  const std::size_t half = my / 2;
  p.y_nodes.resize(my + 1);
  for (std::size_t j = 0; j <= my; ++j) {
    p.y_nodes[j] = j <= half ? static_cast<double>(j) * p.coarse_hy
                             : 1.0 - static_cast<double>(my - j) * p.fine_hy;
  }

  const double e = epsilon;
  const double Hx2 = p.hx * p.hx;
  const double H = p.coarse_hy;
  const double h = p.fine_hy;
  const double side = -e / Hx2;
  p.stencils.coarse = {2 * e / Hx2 + 2 * e / (H * H) + 1 / H + beta, side, side, -e / (H * H) - 1 / H,
                       -e / (H * H)};
  p.stencils.transition = {2 * e / Hx2 + 2 * e / (H * h) + 1 / H + beta, side, side,
                           -2 * e / (H * (H + h)) - 1 / H, -2 * e / (h * (H + h))};
  p.stencils.fine = {2 * e / Hx2 + 2 * e / (h * h) + 1 / h + beta, side, side, -e / (h * h) - 1 / h,
                     -e / (h * h)};
  p.system = assemble_from_stencils(nx - 1, half - 1, p.stencils);
  return p;
}

double shishkin_exact(double x, double y, double epsilon) {
  return (2.0 * x - 1.0) * (-std::expm1((y - 1.0) / epsilon)) / (-std::expm1(-1.0 / epsilon));
}

std::pair<Vector, Vector> shishkin_rhs_and_exact(const ShishkinProblem& p) {
  if (p.beta != 0.0) {
    throw SchwarzError(ErrorCode::PreconditionFailed,
                       "the exact solution is only available for beta = 0");
  }
  const std::size_t n = p.nx - 1;
  const std::size_t lines = p.my - 1;
  const std::size_t half = p.my / 2;
  const auto u = [&](std::size_t i, std::size_t j) {
    return shishkin_exact(static_cast<double>(i) * p.hx, p.y_nodes[j], p.epsilon);
  };
  Vector b(n * lines, 0.0);
  Vector exact(n * lines, 0.0);
  for (std::size_t j = 1; j <= lines; ++j) {
    const Stencil& s = j < half ? p.stencils.coarse : j == half ? p.stencils.transition : p.stencils.fine;
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t row = (j - 1) * n + (i - 1);
      exact[row] = u(i, j);
      double folded = 0.0;
      if (i == 1) folded -= s.west * u(0, j);
      if (i == n) folded -= s.east * u(p.nx, j);
      if (j == 1) folded -= s.south * u(i, 0);
      if (j == lines) folded -= s.north * u(i, p.my);
      b[row] = folded;
    }
  }
  return {std::move(b), std::move(exact)};
}

double PoissonProblem::two_norm_rho_bound() const noexcept {
  const double s = std::sin(std::numbers::pi * h() / 2.0);
  const double q = 1.0 / (1.0 + 6.0 * s * s + 4.0 * s * s * s * s);
  return q * q;
}

PoissonProblem build_poisson(std::size_t m) {
  require(m >= 1, "poisson m must be at least 1");
  const std::size_t n = 2 * m + 1;
  const DenseMatrix w = DenseMatrix::tridiag(n, -1.0, 4.0, -1.0);
  const DenseMatrix minus_i = scaled_identity(n, -1.0);
  const BlockTridiagonal wing = BlockTridiagonal::toeplitz(m, minus_i, w, minus_i);
  PoissonProblem p;
  p.m = m;
  p.system = BlockArrowSystem::assemble(n, m, wing, wing, w, minus_i, minus_i, minus_i, minus_i);
  return p;
}

ProblemSpec problem_from_json(const nlohmann::json& j) {
  require(j.is_object(), "problem spec must be a JSON object");
  if (j.contains("poisson_m")) {
    require(io::is_count(j["poisson_m"]), "poisson_m must be a positive integer");
    return build_poisson(j["poisson_m"].get<std::size_t>());
  }
  for (const char* key : {"epsilon", "Nx", "My"}) {
    require(j.contains(key), std::string("problem spec is missing '") + key + "'");
  }
  require(io::is_count(j["Nx"]) && io::is_count(j["My"]),
          "Nx and My must be positive integers");
  const double beta = j.contains("beta") ? j["beta"].get<double>() : 0.0;
  return build_shishkin(j["epsilon"].get<double>(), beta, j["Nx"].get<std::size_t>(),
                        j["My"].get<std::size_t>());
}

const BlockArrowSystem& system_of(const ProblemSpec& p) {
  return std::visit([](const auto& q) -> const BlockArrowSystem& { return q.system; }, p);
}

}  // namespace schwarz
