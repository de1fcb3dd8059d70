#pragma once

#include "schwarz/block.hpp"
#include "schwarz/schwarz_operator.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace schwarz {

/// Sums within this distance of 1 count as equality.
inline constexpr double kDominanceTol = 1e-12;

enum class DominanceKind { Row, Column };

struct DominanceReport {
  DominanceKind kind = DominanceKind::Row;
  std::vector<double> sums;
  bool weak = false;    // all sums <= 1 + tol
  bool strict = false;  // all sums <  1 - tol
  NormKind norm = NormKind::Inf;
};

/// Row sums sum_{j != i} ||A_ii^{-1} A_ij||. A Toeplitz system reports the three
/// sums for the H, center and h rows; any other system reports all 2m+1.
/// Throws SingularMatrix naming the diagonal block.
DominanceReport check_row_dominance(const BlockArrowSystem& sys, NormKind norm);
DominanceReport check_row_dominance(const BlockTridiagonal& wing, NormKind norm);
/// Column sums sum_{i != j} ||A_ij A_jj^{-1}||, one per block column.
DominanceReport check_column_dominance(const BlockTridiagonal& wing, NormKind norm);

struct EtaFactors {
  double eta_H = 0.0;
  double eta_h = 0.0;
  double eta_H_min = 0.0;
  double eta_h_min = 0.0;
  bool column_dominant = false;  // the min variants differ from the plain ones only then
  NormKind norm = NormKind::Inf;
};

/// eta_h = ||A_h^{-1} C_h|| / (1 - ||A_h^{-1} B_h||)
/// eta_H = ||A_H^{-1} B_H|| / (1 - ||A_H^{-1} C_H||)
/// and, when both wings are column dominant,
/// eta_h_min = min(eta_h, ||A_h^{-1}|| ||C_h|| / (1 - ||C_h A_h^{-1}||))
/// eta_H_min = min(eta_H, ||A_H^{-1}|| ||B_H|| / (1 - ||B_H A_H^{-1}||)).
/// Wings with m = 1 have no C_H, B_h; those terms are zero.
/// Throws PreconditionFailed for non-Toeplitz systems and DominanceViolated
/// when a denominator is not positive.
EtaFactors eta_factors(const BlockArrowSystem& sys, NormKind norm);

enum class EtaVariant { Plain, Min };

struct RhoBound {
  double pi2_factor = 0.0;  // eta_h ||A^{-1}C|| / (1 - eta_h ||A^{-1}B||)
  double pi1_factor = 0.0;  // eta_H ||A^{-1}B|| / (1 - eta_H ||A^{-1}C||)
  double value = 0.0;       // their product
};

RhoBound rho_bound_factors(const EtaFactors& etas, const BlockArrowSystem& sys,
                           EtaVariant variant = EtaVariant::Plain);
/// Bound on rho_12 and rho_21 from the eta factors.
double rho_bound(const EtaFactors& etas, const BlockArrowSystem& sys,
                 EtaVariant variant = EtaVariant::Plain);

/// ||Z^h_11 C_h|| ||Z^H_mm B_H|| ||Pi1|| ||Pi2|| evaluated exactly.
double product_bound(const BlockArrowSystem& sys, NormKind norm);

/// c * eta_H ||A^{-1}B|| / (1 - eta_H ||A^{-1}C||) for T12 and
/// c * eta_h ||A^{-1}C|| / (1 - eta_h ||A^{-1}B||) for T21, with c = 1 in the
/// infinity norm.
double t_norm_bound(const EtaFactors& etas, const BlockArrowSystem& sys, Ordering ordering,
                    EtaVariant variant = EtaVariant::Plain, double c = 1.0);

/// curve[k] = rho^k * t_bound for k = 0..k_max.
std::vector<double> error_bound_curve(double rho, double t_bound, std::size_t k_max);
std::vector<double> error_bound_curve(const EtaFactors& etas, const BlockArrowSystem& sys,
                                      Ordering ordering, std::size_t k_max,
                                      EtaVariant variant = EtaVariant::Plain, double c = 1.0);

/// Off-diagonal decay of the inverse of a column dominant block tridiagonal
/// matrix: ||Z_ij|| <= ||Z_ii|| prod omega~ (i < j), ||Z_ii|| prod tau~ (i > j).
struct DecayProfile {
  std::vector<double> tau;    // tau~_i = ||C_i A_i^{-1}|| / (1 - ||B_{i-1} A_i^{-1}||)
  std::vector<double> omega;  // omega~_i = ||B_{i-1} A_i^{-1}|| / (1 - ||C_i A_i^{-1}||)
  std::vector<double> diag_lower;
  std::vector<std::optional<double>> diag_upper;  // absent when the denominator is <= 0

  /// Factor f with ||Z_ij|| <= f ||Z_ii|| (0-based block indices).
  double offdiag_factor(std::size_t i, std::size_t j) const;
};

/// Throws PreconditionFailed when ||C_1 A_1^{-1}|| >= 1 or ||B_{m-1} A_m^{-1}|| >= 1
/// and DominanceViolated when a tau~ or omega~ denominator is not positive.
DecayProfile decay_profile(const BlockTridiagonal& wing, NormKind norm);

/// 1 / (a + b + c) for a strictly dominant tridiagonal Toeplitz matrix with
/// a > 0, b, c < 0 (bound on ||M^{-1}||_inf).
double toeplitz_inverse_bound(double a, double b, double c);

/// {kind, sums, weak, strict, eta:{...}, rho_bound, t_bound}
nlohmann::json bounds_report(const BlockArrowSystem& sys, NormKind norm);

}  // namespace schwarz
