#include "schwarz/iteration.hpp"

#include "schwarz/error.hpp"
#include "schwarz/format.hpp"
#include "schwarz/lu.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace schwarz {

namespace {

constexpr double kStagnationTol = 1e-14;
constexpr std::size_t kStagnationCap = 10000;
constexpr double kDivergenceGrowth = 1e6;
constexpr std::size_t kDivergenceWindow = 10;

double vec_norm(std::span<const double> x, NormKind kind) {
  return kind == NormKind::Inf ? inf_norm(x) : two_norm(x);
}

Vector step(const LowRankT& t, std::span<const double> x, std::span<const double> v) {
  Vector y = apply_T(t, x);
  axpy(1.0, v, y);
  return y;
}

// Runs the iteration from zero until successive iterates stop changing.
Vector stagnated_solution(const LowRankT& t, std::span<const double> v) {
  Vector x(v.begin(), v.end());
  for (std::size_t k = 0; k < kStagnationCap; ++k) {
    Vector next = step(t, x, v);
    const double change = inf_norm(subtract(next, x));
    const double scale = inf_norm(next);
    x = std::move(next);
    if (change <= kStagnationTol * (scale > 0.0 ? scale : 1.0)) return x;
  }
  throw SchwarzError(ErrorCode::NoConvergence,
                     "reference iteration did not stagnate in " + std::to_string(kStagnationCap) +
                         " steps");
}

}  // namespace

Vector consistency_vector(const LocalSolvers& solvers, std::span<const double> b, Ordering ordering) {
  const BlockArrowSystem& sys = solvers.system();
  if (b.size() != sys.dim()) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "right-hand side has " + std::to_string(b.size()) + " entries, expected " +
                           std::to_string(sys.dim()));
  }
  const Subdomain first = ordering == Ordering::T12 ? Subdomain::Top : Subdomain::Bottom;
  const Subdomain second = ordering == Ordering::T12 ? Subdomain::Bottom : Subdomain::Top;
  const Vector p_first = solvers.local_solve(first, b);
  const Vector p_second = solvers.local_solve(second, b);
  const Vector both = solvers.project(second, p_first);
  Vector v = p_first;
  axpy(1.0, p_second, v);
  axpy(-1.0, both, v);
  return v;
}

Vector consistency_vector(const BlockArrowSystem& sys, std::span<const double> b, Ordering ordering) {
  return consistency_vector(LocalSolvers(sys), b, ordering);
}

IterationTrace iterate(const BlockArrowSystem& sys, std::span<const double> b,
                       std::span<const double> x0, const IterationOptions& opts) {
  if (opts.max_iter < 1 || !(opts.rel_tol > 0.0)) {
    throw SchwarzError(ErrorCode::InvalidParameter, "max_iter must be >= 1 and rel_tol > 0");
  }
  if (b.size() != sys.dim() || x0.size() != sys.dim()) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "iterate: b and x0 must have " + std::to_string(sys.dim()) + " entries");
  }
  const LocalSolvers solvers(sys);
  const LowRankT t = build_lowrank(compute_core(sys), opts.ordering);
  const Vector v = consistency_vector(solvers, b, opts.ordering);

  IterationTrace trace;
  Vector reference;
  if (sys.dim() <= kDenseLimit) {
    reference = solve(lu_factor(materialize_dense(sys)), b);
    trace.reference = ReferenceKind::DirectSolve;
  } else {
    reference = stagnated_solution(t, v);
    trace.reference = ReferenceKind::Stagnation;
  }
  const double ref_norm = vec_norm(reference, opts.norm);
  const double scale = ref_norm > 0.0 ? ref_norm : 1.0;
  auto rel_error = [&](std::span<const double> x) {
    return vec_norm(subtract(reference, x), opts.norm) / scale;
  };

  Vector x(x0.begin(), x0.end());
  trace.error_norms.push_back(rel_error(x));
  trace.converged = trace.error_norms.back() < opts.rel_tol;
  while (!trace.converged && trace.iterations_run < opts.max_iter) {
    x = step(t, x, v);
    ++trace.iterations_run;
    trace.error_norms.push_back(rel_error(x));
    trace.converged = trace.error_norms.back() < opts.rel_tol;
    const std::size_t k = trace.iterations_run;
    if (k >= kDivergenceWindow &&
        trace.error_norms[k] > kDivergenceGrowth * trace.error_norms[k - kDivergenceWindow]) {
      trace.diverged = true;
      break;
    }
  }
  trace.solution = std::move(x);
  return trace;
}

void attach_bound(IterationTrace& trace, std::span<const double> curve) {
  const std::size_t len = trace.error_norms.size();
  if (len == 0) return;
  if (curve.size() + 1 < len) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "bound curve has " + std::to_string(curve.size()) + " terms, need " +
                           std::to_string(len - 1));
  }
  const double e0 = trace.error_norms.front();
  trace.bound_curve.assign(len, e0);
  for (std::size_t k = 1; k < len; ++k) trace.bound_curve[k] = e0 * curve[k - 1];
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
  out << "k,error_norm,bound\n";
  for (std::size_t k = 0; k < trace.error_norms.size(); ++k) {
    out << k << ',' << format_sci(trace.error_norms[k]) << ',';
    if (k < trace.bound_curve.size()) out << format_sci(trace.bound_curve[k]);
    out << '\n';
  }
}

}  // namespace schwarz
