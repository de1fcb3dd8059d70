#pragma once

#include "schwarz/block.hpp"
#include "schwarz/dense.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace schwarz {

/// T12 = Q2 Q1 (solve on the top subdomain first) or T21 = Q1 Q2.
enum class Ordering { T12, T21 };

const char* to_string(Ordering o) noexcept;

/// Factorizations of the two local matrices A_1, A_2 and the local-solve
/// operations built on them.
class LocalSolvers {
public:
  explicit LocalSolvers(const BlockArrowSystem& sys);

  const BlockArrowSystem& system() const noexcept { return *sys_; }
  const BlockTridiagonalLU& factors(Subdomain which) const noexcept {
    return which == Subdomain::Top ? top_ : bottom_;
  }

  /// R_i^T A_i^{-1} R_i r, returned at full length.
  Vector local_solve(Subdomain which, std::span<const double> r) const;
  /// P_i y = R_i^T A_i^{-1} R_i (A y).
  Vector project(Subdomain which, std::span<const double> y) const;

private:
  const BlockArrowSystem* sys_;
  BlockTridiagonalLU top_;
  BlockTridiagonalLU bottom_;
};

/// The n x n kernels of the two local solves against the coupling columns:
///   A_1 [P1_1; ...; P1_m; Pi1] = e_{m+1} (x) B
///   A_2 [Pi2; P2_1; ...; P2_m] = e_1 (x) C
struct SchwarzCore {
  DenseMatrix pi1;
  DenseMatrix pi2;
  std::vector<DenseMatrix> p1;
  std::vector<DenseMatrix> p2;

  std::size_t block_dim() const noexcept { return pi1.rows(); }
  std::size_t wing_length() const noexcept { return p1.size(); }
};

/// Direct route: solves both n(m+1) local systems with block LU.
/// Throws SingularMatrix naming the local problem that failed.
SchwarzCore compute_core(const BlockArrowSystem& sys);
/// Schur-complement route through the wing inverse strips:
///   Pi1 = (A - C Z^H_mm B_H)^{-1} B,  P1 = -Z^H_{1:m,m} B_H Pi1
///   Pi2 = (A - B Z^h_11 C_h)^{-1} C,  P2 = -Z^h_{1:m,1} C_h Pi2
/// Kept as an independent cross-check of compute_core.
SchwarzCore compute_core_schur(const BlockArrowSystem& sys);

/// T = V (e_pick^T (x) I_n): every column block of T except `pick` is zero.
///
/// For T12, V = [-P1; Pi2 P1_m; P2 P1_m], pick = m+2 (1-based) and the power
/// kernel is K = P2_1 P1_m. For T21, V = [P1 P2_1; Pi1 P2_1; -P2], pick = m
/// and K = P1_m P2_1. Powers follow T^{k+1} = V K^k (e_pick^T (x) I_n).
class LowRankT {
public:
  LowRankT(Ordering ordering, DenseMatrix v, DenseMatrix kernel, std::size_t pick_block);

  Ordering ordering() const noexcept { return ordering_; }
  const DenseMatrix& v() const noexcept { return v_; }
  const DenseMatrix& kernel() const noexcept { return kernel_; }
  /// 0-based block column index that T reads from.
  std::size_t pick_block() const noexcept { return pick_; }
  std::size_t block_dim() const noexcept { return kernel_.rows(); }
  std::size_t dim() const noexcept { return v_.rows(); }

  /// T^k x for k >= 1 without forming T.
  Vector apply_power(std::span<const double> x, std::size_t k) const;
  /// Dense V K^{k-1} E_pick, k >= 1.
  DenseMatrix materialize_power(std::size_t k) const;

private:
  Ordering ordering_;
  DenseMatrix v_;
  DenseMatrix kernel_;
  std::size_t pick_;
};

LowRankT build_lowrank(const SchwarzCore& core, Ordering ordering);
/// y = T x = V x_pick. Throws DimensionMismatch.
Vector apply_T(const LowRankT& t, std::span<const double> x);
/// K^k by repeated squaring.
DenseMatrix power_kernel(const LowRankT& t, std::size_t k);

/// Dense projections P_i = R_i^T A_i^{-1} R_i A, formed explicitly. Oracle only.
struct DenseProjections {
  DenseMatrix p1;
  DenseMatrix p2;
};
DenseProjections dense_projections(const BlockArrowSystem& sys);

/// Brute-force T12 = (I-P2)(I-P1) or T21 = (I-P1)(I-P2). Limited to
/// dimension 4000.
DenseMatrix materialize_T(const BlockArrowSystem& sys, Ordering ordering);

/// Exact convergence factor from the wing-inverse blocks:
///   rho12 = || Z^h_11 C_h Pi2 Z^H_mm B_H Pi1 ||
///   rho21 = || Z^H_mm B_H Pi1 Z^h_11 C_h Pi2 ||
/// which equals the norm of the power kernel of build_lowrank.
double rho_exact(const BlockArrowSystem& sys, Ordering ordering, NormKind norm);

}  // namespace schwarz
