#include "schwarz/error.hpp"
#include "schwarz/format.hpp"
#include "schwarz/experiments.hpp"
#include "schwarz/lu.hpp"
#include "schwarz/norms.hpp"
#include "schwarz/problems.hpp"
#include "schwarz/schwarz_operator.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace schwarz;
using testing_support::random_vector;
using testing_support::scalar_chain;

namespace {

std::size_t numerical_rank(const DenseMatrix& a, double rel = 1e-10) {
  const std::vector<double> s = singular_values(a);
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double v) { return v > rel * s[0]; }));
}

class RandomInstances : public ::testing::Test {
protected:
  template <class F>
  void each(std::size_t count, F&& f) {
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_int_distribution<std::size_t> pn(1, 5), pm(1, 6);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t n = pn(rng), m = pm(rng);
      SCOPED_TRACE("instance " + std::to_string(i) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
      f(random_toeplitz_system(rng, n, m));
    }
  }
};

}  // namespace

TEST(ComputeCore, ScalarChain) {
  const SchwarzCore c = compute_core(scalar_chain());
  EXPECT_NEAR(c.pi1(0, 0), -2.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.pi2(0, 0), -2.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.p1[0](0, 0), -1.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.p2[0](0, 0), -1.0 / 3.0, 1e-15);
}

TEST(ComputeCore, SymmetricSystemGivesEqualPi) {
  const SchwarzCore c = compute_core(build_poisson(3).system);
  EXPECT_LT(max_abs_diff(c.pi1, c.pi2), 1e-13);
}

TEST(ComputeCore, SolvesTheLocalSystems) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    const BlockArrowSystem sys = random_toeplitz_system(rng, 1 + t % 4, 1 + t % 5);
    const std::size_t n = sys.block_dim(), m = sys.wing_length();
    const SchwarzCore c = compute_core(sys);
    DenseMatrix x1(sys.local_dim(), n), x2(sys.local_dim(), n);
    for (std::size_t j = 0; j < m; ++j) {
      x1.set_block(j * n, 0, c.p1[j]);
      x2.set_block((j + 1) * n, 0, c.p2[j]);
    }
    x1.set_block(m * n, 0, c.pi1);
    x2.set_block(0, 0, c.pi2);
    DenseMatrix r1(sys.local_dim(), n), r2(sys.local_dim(), n);
    r1.set_block(m * n, 0, sys.coupling_b());
    r2.set_block(0, 0, sys.coupling_c());
    EXPECT_LT(inf_norm(restrict_to(sys, Subdomain::Top) * x1 - r1), 1e-8);
    EXPECT_LT(inf_norm(restrict_to(sys, Subdomain::Bottom) * x2 - r2), 1e-8);
  }
}

TEST(ComputeCore, SchurRouteAgrees) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const BlockArrowSystem sys = random_toeplitz_system(rng, 1 + t % 5, 1 + t % 6);
    const SchwarzCore a = compute_core(sys), b = compute_core_schur(sys);
    EXPECT_LT(max_abs_diff(a.pi1, b.pi1), 1e-10);
    EXPECT_LT(max_abs_diff(a.pi2, b.pi2), 1e-10);
    for (std::size_t j = 0; j < sys.wing_length(); ++j) {
      EXPECT_LT(max_abs_diff(a.p1[j], b.p1[j]), 1e-10);
      EXPECT_LT(max_abs_diff(a.p2[j], b.p2[j]), 1e-10);
    }
  }
}

TEST(ComputeCore, NamesTheSingularLocalProblem) {
  // A_1 = [[1, 1], [1, 1]] is singular; the full 3x3 matrix is not.
  const DenseMatrix one = DenseMatrix::from_rows({{1.0}});
  const BlockTridiagonal wing({}, {one}, {});
  const BlockArrowSystem sys = BlockArrowSystem::assemble(
      1, 1, wing, BlockTridiagonal({}, {DenseMatrix::from_rows({{3.0}})}, {}), one, one, one, one, one);
  try {
    compute_core(sys);
    FAIL();
  } catch (const SchwarzError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
    EXPECT_NE(std::string(e.what()).find("A_1"), std::string::npos);
  }
}

// Values follow from Q2 Q1 multiplied out by hand; the third column is the
// only nonzero one.
TEST(BuildLowRank, ScalarChainT12) {
  const LowRankT t = build_lowrank(compute_core(scalar_chain()), Ordering::T12);
  EXPECT_EQ(t.pick_block(), 2u);
  EXPECT_NEAR(t.v()(0, 0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(t.v()(1, 0), 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(t.v()(2, 0), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(t.kernel()(0, 0), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(inf_norm(materialize_T(scalar_chain(), Ordering::T12)), 1.0 / 3.0, 1e-15);
}

TEST(BuildLowRank, ScalarChainT21) {
  const LowRankT t = build_lowrank(compute_core(scalar_chain()), Ordering::T21);
  EXPECT_EQ(t.pick_block(), 0u);
  EXPECT_NEAR(t.v()(0, 0), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(t.v()(1, 0), 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(t.v()(2, 0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(t.kernel()(0, 0), 1.0 / 9.0, 1e-15);
}

TEST(MaterializeT, ScalarChainByHand) {
  const DenseMatrix t = materialize_T(scalar_chain(), Ordering::T12);
  const DenseMatrix expected = DenseMatrix::from_rows({{0, 0, 1.0 / 3}, {0, 0, 2.0 / 9}, {0, 0, 1.0 / 9}});
  EXPECT_LT(max_abs_diff(t, expected), 1e-15);
}

TEST(MaterializeT, ProjectionsAreIdempotentWithExpectedRank) {
  for (const BlockArrowSystem& sys : {scalar_chain(), build_poisson(1).system, build_poisson(2).system}) {
    const DenseProjections p = dense_projections(sys);
    EXPECT_LT(inf_norm(p.p1 * p.p1 - p.p1), 1e-10);
    EXPECT_LT(inf_norm(p.p2 * p.p2 - p.p2), 1e-10);
    EXPECT_EQ(numerical_rank(p.p1), sys.local_dim());
    EXPECT_EQ(numerical_rank(p.p2), sys.local_dim());
    const DenseMatrix id = DenseMatrix::identity(sys.dim());
    EXPECT_EQ(numerical_rank(id - p.p1), sys.block_dim() * sys.wing_length());
    EXPECT_EQ(numerical_rank(id - p.p2), sys.block_dim() * sys.wing_length());
  }
}

TEST(ApplyT, ZeroPickedBlockGivesZero) {
  const BlockArrowSystem sys = build_poisson(2).system;
  const LowRankT t = build_lowrank(compute_core(sys), Ordering::T12);
  Vector x(sys.dim(), 1.0);
  for (std::size_t i = 0; i < sys.block_dim(); ++i) x[t.pick_block() * sys.block_dim() + i] = 0.0;
  for (double v : apply_T(t, x)) EXPECT_EQ(v, 0.0);
}

TEST(ApplyT, ScalarChainUnitVector) {
  const LowRankT t = build_lowrank(compute_core(scalar_chain()), Ordering::T12);
  const Vector y = apply_T(t, Vector{0.0, 0.0, 1.0});
  EXPECT_NEAR(y[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(y[1], 2.0 / 9.0, 1e-15);
  EXPECT_NEAR(y[2], 1.0 / 9.0, 1e-15);
  EXPECT_EQ(apply_T(t, Vector{0.0, 1.0, 0.0}), Vector(3, 0.0));
}

TEST(ApplyT, DimensionMismatch) {
  const LowRankT t = build_lowrank(compute_core(scalar_chain()), Ordering::T12);
  try {
    apply_T(t, Vector{1.0});
    FAIL();
  } catch (const SchwarzError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(PowerKernel, Examples) {
  const LowRankT t = build_lowrank(compute_core(scalar_chain()), Ordering::T12);
  EXPECT_EQ(power_kernel(t, 0), DenseMatrix::identity(1));
  EXPECT_NEAR(power_kernel(t, 3)(0, 0), 1.0 / 729.0, 1e-17);
}

TEST(RhoExact, ScalarChain) {
  EXPECT_NEAR(rho_exact(scalar_chain(), Ordering::T12, NormKind::Inf), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(rho_exact(scalar_chain(), Ordering::T21, NormKind::Two), 1.0 / 9.0, 1e-12);
}

TEST(RhoExact, PublishedShishkinValues) {
  EXPECT_EQ(format_2sig(rho_exact(build_shishkin(1e-8, 0.0, 20, 20).system, Ordering::T12, NormKind::Inf)),
            "7.5e-08");
  EXPECT_EQ(format_2sig(rho_exact(build_shishkin(1e-2, 0.0, 50, 60).system, Ordering::T12, NormKind::Inf)),
            "2.1e-01");
}

// Frozen from an independent dense numpy computation of Q2 Q1.
TEST(RhoExact, FrozenOracleValues) {
  const BlockArrowSystem poisson = build_poisson(1).system;
  EXPECT_NEAR(rho_exact(poisson, Ordering::T12, NormKind::Inf), 3.707418695266386e-02, 1e-13);
  EXPECT_NEAR(rho_exact(poisson, Ordering::T12, NormKind::Two), 3.092728247233832e-02, 1e-10);
  EXPECT_NEAR(inf_norm(materialize_T(poisson, Ordering::T12)), 2.049689440993789e-01, 1e-13);
  const BlockArrowSystem sh = build_shishkin(1e-2, 0.0, 10, 8).system;
  EXPECT_NEAR(rho_exact(sh, Ordering::T12, NormKind::Inf), 2.161957243695822e-02, 1e-12);
  EXPECT_NEAR(inf_norm(materialize_T(sh, Ordering::T12)), 2.562984696655103e-02, 1e-12);
  EXPECT_NEAR(inf_norm(materialize_T(sh, Ordering::T21)), 8.442240704142288e-01, 1e-12);
}

TEST_F(RandomInstances, LowRankMatchesDense) {
  each(40, [](const BlockArrowSystem& sys) {
    const SchwarzCore core = compute_core(sys);
    for (Ordering o : {Ordering::T12, Ordering::T21}) {
      const LowRankT t = build_lowrank(core, o);
      const DenseMatrix dense = materialize_T(sys, o);
      EXPECT_LT(max_abs_diff(t.materialize_power(1), dense), 1e-10);
      EXPECT_LE(numerical_rank(dense), sys.block_dim());
      EXPECT_LE(numerical_rank(t.v()), sys.block_dim());
      std::mt19937_64 rng(3);
      const Vector x = random_vector(rng, sys.dim());
      const Vector a = apply_T(t, x), b = dense * x;
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
    }
  });
}

TEST_F(RandomInstances, PowerFormula) {
  each(30, [](const BlockArrowSystem& sys) {
    const SchwarzCore core = compute_core(sys);
    for (Ordering o : {Ordering::T12, Ordering::T21}) {
      const LowRankT t = build_lowrank(core, o);
      const DenseMatrix dense = materialize_T(sys, o);
      DenseMatrix power = dense;
      const double rho = rho_exact(sys, o, NormKind::Inf);
      EXPECT_NEAR(rho, inf_norm(t.kernel()), 1e-12);
      for (std::size_t k = 0; k <= 5; ++k) {
        const DenseMatrix low = t.materialize_power(k + 1);
        EXPECT_LT(max_abs_diff(low, power), 1e-10);
        EXPECT_NEAR(inf_norm(low), inf_norm(power), 1e-10);
        EXPECT_LE(inf_norm(power), std::pow(rho, static_cast<double>(k)) * inf_norm(dense) + 1e-14);
        power = power * dense;
      }
    }
  });
}

TEST(MaterializeT, SizeLimit) {
  const ShishkinProblem p = build_shishkin(1e-2, 0.0, 60, 80);
  ASSERT_GT(p.system.dim(), kDenseLimit);
  EXPECT_THROW(materialize_T(p.system, Ordering::T12), SchwarzError);
}
