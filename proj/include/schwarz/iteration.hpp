#pragma once

#include "schwarz/block.hpp"
#include "schwarz/schwarz_operator.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace schwarz {

struct IterationOptions {
  Ordering ordering = Ordering::T12;
  std::size_t max_iter = 50;
  double rel_tol = 1e-12;
  NormKind norm = NormKind::Inf;
};

/// Where the reference solution for the error norms came from.
enum class ReferenceKind { DirectSolve, Stagnation };

struct IterationTrace {
  std::vector<double> error_norms;  // ||x - x_k|| / ||x||, k = 0..iterations_run
  std::vector<double> bound_curve;  // empty until attach_bound
  std::size_t iterations_run = 0;
  bool converged = false;
  bool diverged = false;
  ReferenceKind reference = ReferenceKind::DirectSolve;
  Vector solution;  // last iterate
};

/// v with x = T x + v at the solution of A x = b. Uses local solves only:
/// v = (P1 + P2 - P_j P_i) x with P_i x = R_i^T A_i^{-1} R_i b.
Vector consistency_vector(const LocalSolvers& solvers, std::span<const double> b, Ordering ordering);
Vector consistency_vector(const BlockArrowSystem& sys, std::span<const double> b, Ordering ordering);

/// x_{k+1} = T x_k + v through the low-rank T, tracking the relative error
/// against a reference solution. Stops on rel_tol, max_iter or divergence
/// (growth by more than 1e6 over 10 steps).
IterationTrace iterate(const BlockArrowSystem& sys, std::span<const double> b,
                       std::span<const double> x0, const IterationOptions& opts);

/// Fills bound_curve from a bound curve c (c[0] = ||T|| bound, c[k] = rho^k c[0]):
/// bound[0] = err[0] and bound[k] = err[0] * c[k-1].
void attach_bound(IterationTrace& trace, std::span<const double> curve);

/// CSV with header k,error_norm,bound; the bound column is empty when absent.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

}  // namespace schwarz
