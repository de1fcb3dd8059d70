#include "schwarz/bounds.hpp"
#include "schwarz/error.hpp"
#include "schwarz/format.hpp"
#include "schwarz/lu.hpp"
#include "schwarz/norms.hpp"
#include "schwarz/problems.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace schwarz;

namespace {

double max_abs_diff(const Vector& a, const Vector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double max_abs(const Vector& a) {
  double d = 0.0;
  for (double v : a) d = std::max(d, std::abs(v));
  return d;
}

}  // namespace

TEST(Shishkin, TransitionClampsAtOneHalf) {
  const ShishkinProblem p = build_shishkin(1.0, 0.0, 4, 4);
  EXPECT_EQ(p.tau, 0.5);
  EXPECT_DOUBLE_EQ(p.coarse_hy, 0.25);
  EXPECT_DOUBLE_EQ(p.fine_hy, 0.25);
  EXPECT_DOUBLE_EQ(p.hx, 0.25);
}

TEST(Shishkin, SmallEpsilonMesh) {
  const ShishkinProblem p = build_shishkin(1e-8, 0.0, 20, 20);
  EXPECT_NEAR(p.tau, 2e-8 * std::log(20.0), 1e-22);
  EXPECT_NEAR(p.coarse_hy, 0.1 * (1.0 - p.tau), 1e-16);
  EXPECT_NEAR(p.fine_hy, p.tau / 10.0, 1e-22);
  EXPECT_EQ(p.block_dim(), 19u);
  EXPECT_EQ(p.system.wing_length(), 9u);
  EXPECT_EQ(p.system.dim(), 19u * 19u);
  EXPECT_EQ(format_2sig(p.mesh_rho()), "1.0e-07");
}

TEST(Shishkin, InvalidParameters) {
  for (auto args : std::vector<std::tuple<double, double, std::size_t, std::size_t>>{
           {0.0, 0.0, 10, 10}, {-1e-3, 0.0, 10, 10}, {1e-3, -1.0, 10, 10},
           {1e-3, 0.0, 2, 10}, {1e-3, 0.0, 10, 9}, {1e-3, 0.0, 10, 2}}) {
    try {
      build_shishkin(std::get<0>(args), std::get<1>(args), std::get<2>(args), std::get<3>(args));
      ADD_FAILURE() << "accepted invalid parameters";
    } catch (const SchwarzError& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
    }
  }
}

TEST(Shishkin, YNodes) {
  const ShishkinProblem p = build_shishkin(1e-3, 0.0, 8, 16);
  ASSERT_EQ(p.y_nodes.size(), 17u);
  EXPECT_EQ(p.y_nodes.front(), 0.0);
  EXPECT_DOUBLE_EQ(p.y_nodes.back(), 1.0);
  EXPECT_NEAR(p.y_nodes[8], 1.0 - p.tau, 1e-15);
  for (std::size_t j = 1; j < p.y_nodes.size(); ++j) {
    const double step = p.y_nodes[j] - p.y_nodes[j - 1];
    EXPECT_NEAR(step, j <= 8 ? p.coarse_hy : p.fine_hy, 1e-14);
  }
}

TEST(Shishkin, StencilSumsAndSigns) {
  for (double beta : {0.0, 1.0}) {
    for (double eps : {1e-8, 1e-4, 1e-2, 1.0}) {
      const ShishkinProblem p = build_shishkin(eps, beta, 12, 16);
      for (const Stencil& s : {p.stencils.coarse, p.stencils.transition, p.stencils.fine}) {
        EXPECT_NEAR(s.sum(), beta, 1e-9 * s.diag);
        EXPECT_GT(s.diag, 0.0);
        EXPECT_LT(s.west, 0.0);
        EXPECT_LT(s.east, 0.0);
        EXPECT_LT(s.south, 0.0);
        EXPECT_LT(s.north, 0.0);
      }
      EXPECT_LT(p.stencils.coarse.south, p.stencils.coarse.north);
      EXPECT_LE(p.mesh_rho(), 1.0);
    }
  }
}

TEST(Shishkin, AssemblyPlacesStencils) {
  const ShishkinProblem p = build_shishkin(1e-2, 0.0, 6, 8);
  const BlockArrowSystem& s = p.system;
  EXPECT_TRUE(s.is_toeplitz());
  EXPECT_EQ(s.center()(1, 1), p.stencils.transition.diag);
  EXPECT_EQ(s.center()(1, 0), p.stencils.transition.west);
  EXPECT_EQ(s.coupling_b()(0, 0), p.stencils.transition.north);
  EXPECT_EQ(s.coupling_c()(0, 0), p.stencils.transition.south);
  EXPECT_EQ(s.coupling_bh()(2, 2), p.stencils.coarse.north);
  EXPECT_EQ(s.coupling_ch()(2, 2), p.stencils.fine.south);
  EXPECT_EQ(s.coupling_b()(0, 1), 0.0);
}

TEST(Shishkin, ExactSolution) {
  for (double eps : {1e-8, 1e-4, 1e-2}) {
    for (double y : {0.0, 0.3, 0.99, 1.0}) EXPECT_EQ(shishkin_exact(0.5, y, eps), 0.0);
    for (double x : {0.0, 0.2, 0.9, 1.0}) {
      EXPECT_NEAR(shishkin_exact(x, 0.0, eps), 2.0 * x - 1.0, 1e-15);
      EXPECT_NEAR(shishkin_exact(x, 1.0, eps), 0.0, 1e-15);
    }
  }
}

TEST(Shishkin, FrozenDiscreteSolution) {
  const ShishkinProblem p = build_shishkin(1e-2, 0.0, 20, 20);
  const auto [b, exact] = shishkin_rhs_and_exact(p);
  EXPECT_NEAR(max_abs(b), 14.59197426030298, 1e-12);
  const Vector x = solve(lu_factor(materialize_dense(p.system)), b);
  const Vector ax = p.system.multiply(exact);
  Vector r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = ax[i] - b[i];
  EXPECT_NEAR(max_abs(r) / max_abs(b), 0.9418364, 1e-6);
  const double nodal = max_abs_diff(x, exact);
  EXPECT_NEAR(nodal, 7.720284e-02, 1e-7);
  EXPECT_LT(nodal, 0.94);
}

TEST(Shishkin, FrozenSolutionNormSmallEpsilon) {
  const ShishkinProblem p = build_shishkin(1e-4, 0.0, 30, 40);
  const Vector b = shishkin_rhs_and_exact(p).first;
  const Vector x = solve(lu_factor(materialize_dense(p.system)), b);
  EXPECT_NEAR(max_abs(x), 0.9333333333333346, 1e-12);
}

TEST(Shishkin, ExactSolutionNeedsZeroReaction) {
  try {
    shishkin_rhs_and_exact(build_shishkin(1e-2, 1.0, 6, 6));
    FAIL();
  } catch (const SchwarzError& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionFailed);
  }
}

TEST(Shishkin, DominanceAndEtaForBothReactions) {
  for (double beta : {0.0, 1.0}) {
    for (double eps : {1e-8, 1e-6, 1e-4, 1e-2}) {
      SCOPED_TRACE(eps);
      const ShishkinProblem p = build_shishkin(eps, beta, 16, 24);
      const DominanceReport row = check_row_dominance(p.system, NormKind::Inf);
      EXPECT_TRUE(row.weak);
      if (beta > 0.0) EXPECT_TRUE(row.strict);
      EXPECT_TRUE(check_column_dominance(p.system.wing_top(), NormKind::Inf).weak);
      const EtaFactors e = eta_factors(p.system, NormKind::Inf);
      // Equal to one when beta = 0; 1 - ||A^{-1}C|| cancels, so allow rounding.
      EXPECT_LE(e.eta_h, 1.0 + 1e-9);
      EXPECT_LE(e.eta_H, 1.0 + 1e-9);
      EXPECT_LE(e.eta_H_min, p.mesh_rho() * (1 + 1e-12));
      const double rb = rho_bound(e, p.system, EtaVariant::Min);
      EXPECT_LE(rb, p.mesh_rho() * (1 + 1e-12));
      EXPECT_LE(rho_exact(p.system, Ordering::T12, NormKind::Inf), rb * (1 + 1e-12));
      EXPECT_LE(t_norm_bound(e, p.system, Ordering::T12, EtaVariant::Min),
                p.mesh_t_bound(Ordering::T12) * (1 + 1e-12));
      EXPECT_LE(t_norm_bound(e, p.system, Ordering::T21, EtaVariant::Min), 1.0 + 1e-12);
    }
  }
}

TEST(Shishkin, MeshTBound) {
  const ShishkinProblem p = build_shishkin(1e-6, 0.0, 10, 10);
  EXPECT_EQ(p.mesh_t_bound(Ordering::T12), p.mesh_rho());
  EXPECT_EQ(p.mesh_t_bound(Ordering::T21), 1.0);
}

TEST(Poisson, Structure) {
  const PoissonProblem p = build_poisson(1);
  EXPECT_EQ(p.block_dim(), 3u);
  EXPECT_DOUBLE_EQ(p.h(), 0.25);
  EXPECT_EQ(p.system.dim(), 9u);
  EXPECT_NEAR(inf_norm(inverse(p.system.center())), 3.0 / 7.0, 1e-15);
  EXPECT_THROW(build_poisson(0), SchwarzError);
  EXPECT_TRUE(p.system.is_toeplitz());
}

TEST(Poisson, BoundDecreasesTowardOne) {
  double prev = 0.0;
  for (std::size_t m = 1; m <= 10; ++m) {
    const double b = build_poisson(m).two_norm_rho_bound();
    EXPECT_GT(b, prev);
    EXPECT_LT(b, 1.0);
    prev = b;
  }
}

TEST(ProblemSpec, FromJson) {
  const ProblemSpec s = problem_from_json({{"epsilon", 1e-4}, {"Nx", 10}, {"My", 8}});
  ASSERT_TRUE(std::holds_alternative<ShishkinProblem>(s));
  EXPECT_EQ(std::get<ShishkinProblem>(s).beta, 0.0);
  EXPECT_EQ(system_of(s).dim(), 9u * 7u);
  const ProblemSpec q = problem_from_json({{"poisson_m", 2}});
  ASSERT_TRUE(std::holds_alternative<PoissonProblem>(q));
  EXPECT_EQ(system_of(q).dim(), 25u);
  const ProblemSpec r = problem_from_json({{"epsilon", 1e-2}, {"beta", 1.0}, {"Nx", 6}, {"My", 6}});
  EXPECT_EQ(std::get<ShishkinProblem>(r).beta, 1.0);
  for (const nlohmann::json& bad : {nlohmann::json::array(), nlohmann::json{{"Nx", 10}, {"My", 8}},
                                    nlohmann::json{{"epsilon", 1e-2}, {"Nx", -3}, {"My", 8}},
                                    nlohmann::json{{"poisson_m", "two"}}}) {
    try {
      problem_from_json(bad);
      ADD_FAILURE() << bad.dump();
    } catch (const SchwarzError& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
    }
  }
}
