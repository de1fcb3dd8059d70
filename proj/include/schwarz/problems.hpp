#pragma once

#include "schwarz/block.hpp"
#include "schwarz/schwarz_operator.hpp"

#include <json.hpp>

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

namespace schwarz {

/// Five-point stencil of one mesh line: diag (a), west (b), east (c),
/// south (d) and north (e).
struct Stencil {
  double diag = 0.0;
  double west = 0.0;
  double east = 0.0;
  double south = 0.0;
  double north = 0.0;

  double sum() const noexcept { return diag + west + east + south + north; }
};

struct ShishkinStencils {
  Stencil coarse;      // lines below the transition (H)
  Stencil transition;  // the line y = 1 - tau
  Stencil fine;        // lines inside the layer (h)
};

/// Upwind discretization of -eps Lap u + u_y + beta u = f on the unit square
/// with a Shishkin mesh in y (transition at 1 - tau) and a uniform mesh in x.
struct ShishkinProblem {
  double epsilon = 0.0;
  double beta = 0.0;
  std::size_t nx = 0;  // x-intervals
  std::size_t my = 0;  // y-intervals, even
  double tau = 0.0;
  double hx = 0.0;
  double coarse_hy = 0.0;
  double fine_hy = 0.0;
  std::vector<double> y_nodes;
  ShishkinStencils stencils;
  BlockArrowSystem system;

  std::size_t block_dim() const noexcept { return nx - 1; }
  /// eps / (eps + H_y) = |e_H / d_H|.
  double mesh_rho() const noexcept;
  /// Closed-form values of the iteration-matrix norm: rho for T12 and 1 for T21.
  double mesh_t_bound(Ordering ordering) const noexcept;
};

/// Throws InvalidParameter for odd or small my, nx < 3, eps <= 0 or beta < 0.
ShishkinProblem build_shishkin(double epsilon, double beta, std::size_t nx, std::size_t my);

/// Mesh-independent part of the assembly: lines of n interior nodes, m coarse
/// lines, one transition line and m fine lines. Used to inject faulty stencils.
BlockArrowSystem assemble_from_stencils(std::size_t n, std::size_t m, const ShishkinStencils& s);

/// Right-hand side with the Dirichlet values of the exact solution folded in
/// (f = 0), and that solution sampled at the interior nodes.
/// Throws PreconditionFailed when beta != 0.
std::pair<Vector, Vector> shishkin_rhs_and_exact(const ShishkinProblem& p);

/// u(x, y) = (2x - 1) (1 - exp((y - 1)/eps)) / (1 - exp(-1/eps)).
double shishkin_exact(double x, double y, double epsilon);

struct PoissonProblem {
  std::size_t m = 0;
  BlockArrowSystem system;

  std::size_t block_dim() const noexcept { return 2 * m + 1; }
  double h() const noexcept { return 1.0 / static_cast<double>(block_dim() + 1); }
  /// (1 / (1 + 6 s^2 + 4 s^4))^2 with s = sin(pi h / 2).
  double two_norm_rho_bound() const noexcept;
};

/// tridiag(-I, W, -I) with W = tridiag(-1, 4, -1) of size 2m+1.
PoissonProblem build_poisson(std::size_t m);

/// {epsilon, beta, Nx, My} or {poisson_m}.
using ProblemSpec = std::variant<ShishkinProblem, PoissonProblem>;
ProblemSpec problem_from_json(const nlohmann::json& j);
const BlockArrowSystem& system_of(const ProblemSpec& p);

}  // namespace schwarz
