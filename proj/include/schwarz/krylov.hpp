#pragma once

#include "schwarz/block.hpp"
#include "schwarz/schwarz_operator.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace schwarz {

struct GmresResult {
  Vector solution;
  std::vector<double> residual_norms;  // relative to ||rhs||, one per iteration plus the start
  std::size_t iterations = 0;
};

using LinearOperator = std::function<Vector(std::span<const double>)>;

/// Full GMRES from x0 = 0 with modified Gram-Schmidt, one reorthogonalization
/// pass when the new vector loses more than a factor 1/sqrt(2), and Givens
/// rotations. A happy breakdown ends the iteration as converged.
/// Throws MaxIterExceeded when tol is not reached within max_iter steps.
GmresResult gmres(const LinearOperator& op, std::span<const double> rhs, double tol,
                  std::size_t max_iter);

/// GMRES on (I - T) x = v, v the consistency vector of b.
GmresResult gmres_schwarz(const BlockArrowSystem& sys, std::span<const double> b, Ordering ordering,
                          double tol, std::size_t max_iter);

/// T = I - P1 - P2 applied through the core kernels:
///   block j < m      : -P1_j  x_{m+1}
///   block m (center) : -x_m - Pi1 x_{m+1} - Pi2 x_{m-1}
///   block j > m      : -P2_j  x_{m-1}
/// (0-based block indices).
class AdditiveOperator {
public:
  explicit AdditiveOperator(SchwarzCore core);

  std::size_t block_dim() const noexcept { return core_.block_dim(); }
  std::size_t wing_length() const noexcept { return core_.wing_length(); }
  std::size_t dim() const noexcept { return block_dim() * (2 * wing_length() + 1); }

  Vector apply(std::span<const double> x) const;
  /// Throws SizeLimitExceeded above dimension 4000.
  DenseMatrix materialize() const;

private:
  SchwarzCore core_;
};

AdditiveOperator additive_operator(const BlockArrowSystem& sys);

/// Lower estimate of the spectral radius: the larger of the trace bound
/// max_k (|tr T^k| / dim)^{1/k}, k <= 64 (only k = 1 above dimension 400),
/// and the modulus of the dominant eigenvalue found by power iteration.
double spectral_radius_lower(const DenseMatrix& t);
double spectral_radius_lower(const AdditiveOperator& op);

/// CSV with header k,relative_residual.
void write_residual_csv(std::ostream& out, const GmresResult& result);

}  // namespace schwarz
