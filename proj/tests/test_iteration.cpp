#include "schwarz/error.hpp"
#include "schwarz/experiments.hpp"
#include "schwarz/iteration.hpp"
#include "schwarz/lu.hpp"
#include "schwarz/norms.hpp"
#include "schwarz/problems.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace schwarz;
using testing_support::random_vector;
using testing_support::scalar_chain;

TEST(ConsistencyVector, ZeroRhs) {
  const BlockArrowSystem sys = build_poisson(2).system;
  for (double v : consistency_vector(sys, Vector(sys.dim(), 0.0), Ordering::T12)) EXPECT_EQ(v, 0.0);
}

TEST(ConsistencyVector, ScalarChainOnes) {
  const BlockArrowSystem sys = scalar_chain();
  const Vector x{1.5, 2.0, 1.5};
  for (Ordering o : {Ordering::T12, Ordering::T21}) {
    const Vector v = consistency_vector(sys, Vector{1, 1, 1}, o);
    const DenseMatrix t = materialize_T(sys, o);
    const Vector tx = t * x;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(v[i], x[i] - tx[i], 1e-14);
  }
}

TEST(ConsistencyVector, FixedPointOnRandomInstances) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    const BlockArrowSystem sys = random_toeplitz_system(rng, 1 + t % 5, 1 + t % 6);
    const Vector b = random_vector(rng, sys.dim());
    const Vector x = solve(lu_factor(materialize_dense(sys)), b);
    for (Ordering o : {Ordering::T12, Ordering::T21}) {
      const LowRankT lr = build_lowrank(compute_core(sys), o);
      Vector fx = apply_T(lr, x);
      axpy(1.0, consistency_vector(sys, b, o), fx);
      EXPECT_LT(inf_norm(subtract(x, fx)), 1e-10 * inf_norm(x));
    }
  }
}

TEST(ConsistencyVector, DimensionMismatch) {
  EXPECT_THROW(consistency_vector(scalar_chain(), Vector{1.0}, Ordering::T12), SchwarzError);
}

TEST(Iterate, StartingAtTheSolutionStopsImmediately) {
  const BlockArrowSystem sys = build_poisson(2).system;
  std::mt19937_64 rng(22);
  const Vector b = random_vector(rng, sys.dim());
  const Vector x = solve(lu_factor(materialize_dense(sys)), b);
  const IterationTrace t = iterate(sys, b, x, {});
  EXPECT_EQ(t.iterations_run, 0u);
  EXPECT_LT(t.error_norms[0], 1e-15);
  EXPECT_TRUE(t.converged);
}

TEST(Iterate, ScalarChainContractsByOneNinth) {
  const BlockArrowSystem sys = scalar_chain();
  IterationOptions opts;
  opts.max_iter = 8;
  opts.rel_tol = 1e-300;
  const IterationTrace t = iterate(sys, Vector{1, 1, 1}, Vector(3, 0.0), opts);
  ASSERT_EQ(t.error_norms.size(), t.iterations_run + 1);
  for (std::size_t k = 2; k < t.error_norms.size() && t.error_norms[k] > 1e-13; ++k) {
    EXPECT_NEAR(t.error_norms[k] / t.error_norms[k - 1], 1.0 / 9.0, 1e-6);
  }
}

TEST(Iterate, ShishkinSmallEpsilonConvergesInThreeSteps) {
  const ShishkinProblem p = build_shishkin(1e-8, 0.0, 30, 40);
  const auto [b, exact] = shishkin_rhs_and_exact(p);
  const IterationTrace t = iterate(p.system, b, Vector(b.size(), 0.0), {});
  EXPECT_TRUE(t.converged);
  EXPECT_LE(t.iterations_run, 3u);
  EXPECT_LT(t.error_norms.back(), 1e-12);
  EXPECT_EQ(t.reference, ReferenceKind::DirectSolve);
}

TEST(Iterate, ErrorRecurrenceAndRangeOfV) {
  std::mt19937_64 rng(23);
  for (int s = 0; s < 30; ++s) {
    const BlockArrowSystem sys = random_toeplitz_system(rng, 1 + s % 5, 1 + s % 6);
    const Vector b = random_vector(rng, sys.dim());
    const Vector x = solve(lu_factor(materialize_dense(sys)), b);
    for (Ordering o : {Ordering::T12, Ordering::T21}) {
      const LowRankT t = build_lowrank(compute_core(sys), o);
      const Vector v = consistency_vector(sys, b, o);
      Vector xk = random_vector(rng, sys.dim());
      for (int k = 0; k < 4; ++k) {
        const Vector ek = subtract(x, xk);
        Vector next = apply_T(t, xk);
        axpy(1.0, v, next);
        const Vector e_next = subtract(x, next);
        EXPECT_LE(inf_norm(subtract(e_next, apply_T(t, ek))), 1e-12 * std::max(1.0, inf_norm(ek)));
        if (k == 0) {
          // e1 lies in range(V): least-squares residual against V's columns.
          const DenseMatrix vt = t.v().transpose();
          const DenseMatrix gram = vt * t.v();
          const Vector coef = solve(lu_factor(gram), vt * e_next);
          const Vector resid = subtract(e_next, t.v() * coef);
          EXPECT_LT(two_norm(resid), 1e-10 * std::max(two_norm(e_next), 1e-300));
        }
        xk = std::move(next);
      }
    }
  }
}

TEST(Iterate, ErrorBoundedByKernelPowers) {
  std::mt19937_64 rng(24);
  for (int s = 0; s < 20; ++s) {
    const BlockArrowSystem sys = random_toeplitz_system(rng, 1 + s % 5, 1 + s % 6);
    const Vector b = random_vector(rng, sys.dim());
    for (Ordering o : {Ordering::T12, Ordering::T21}) {
      IterationOptions opts;
      opts.ordering = o;
      opts.max_iter = 10;
      const IterationTrace t = iterate(sys, b, random_vector(rng, sys.dim()), opts);
      const double rho = rho_exact(sys, o, NormKind::Inf);
      const double tnorm = inf_norm(materialize_T(sys, o));
      // Relative to ||x||, so e_k / e_0 compares like absolute errors.
      for (std::size_t k = 0; k + 1 < t.error_norms.size(); ++k) {
        EXPECT_LE(t.error_norms[k + 1] / t.error_norms[0],
                  std::pow(rho, static_cast<double>(k)) * tnorm + 1e-10);
      }
    }
  }
}

TEST(Iterate, DivergenceIsFlagged) {
  // Not dominant: the local kernels amplify and the error explodes.
  const DenseMatrix one = DenseMatrix::from_rows({{1.0}});
  const DenseMatrix big = DenseMatrix::from_rows({{-1.2}});
  const BlockTridiagonal wing({}, {one}, {});
  const BlockArrowSystem sys = BlockArrowSystem::assemble(1, 1, wing, wing, one, big, big, big, big);
  IterationOptions opts;
  opts.max_iter = 100;
  const IterationTrace t = iterate(sys, Vector{1.0, 0.0, 1.0}, Vector(3, 0.0), opts);
  EXPECT_TRUE(t.diverged);
  EXPECT_FALSE(t.converged);
  EXPECT_LT(t.iterations_run, 100u);
}

TEST(Iterate, RejectsBadOptions) {
  IterationOptions opts;
  opts.max_iter = 0;
  EXPECT_THROW(iterate(scalar_chain(), Vector(3, 1.0), Vector(3, 0.0), opts), SchwarzError);
  opts.max_iter = 5;
  opts.rel_tol = 0.0;
  EXPECT_THROW(iterate(scalar_chain(), Vector(3, 1.0), Vector(3, 0.0), opts), SchwarzError);
}

TEST(TraceCsv, HeaderAndRows) {
  IterationTrace t;
  t.error_norms = {1.0, 0.5};
  attach_bound(t, std::vector<double>{0.75, 0.1});
  std::ostringstream out;
  write_trace_csv(out, t);
  EXPECT_EQ(out.str(),
            "k,error_norm,bound\n"
            "0,1.000000000000000e+00,1.000000000000000e+00\n"
            "1,5.000000000000000e-01,7.500000000000000e-01\n");
}
