#pragma once

#include "schwarz/dense.hpp"
#include "schwarz/lu.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace schwarz {

/// Dense materialization of the whole system is refused above this size.
inline constexpr std::size_t kDenseLimit = 4000;

enum class Subdomain { Top, Bottom };
enum class WingSide { First, Last };

/// tridiag(C_i, A_i, B_i) with m diagonal blocks of size n x n. sub[i] sits in
/// block row i+1, super[i] in block row i (both 0-based).
class BlockTridiagonal {
public:
  BlockTridiagonal() = default;
  BlockTridiagonal(std::vector<DenseMatrix> sub, std::vector<DenseMatrix> diag,
                   std::vector<DenseMatrix> super);

  /// Toeplitz wing: the same three blocks repeated over m block rows.
  static BlockTridiagonal toeplitz(std::size_t m, const DenseMatrix& sub, const DenseMatrix& diag,
                                   const DenseMatrix& super);

  std::size_t block_dim() const noexcept { return n_; }
  std::size_t block_rows() const noexcept { return diag_.size(); }
  std::size_t dim() const noexcept { return n_ * diag_.size(); }
  bool is_toeplitz() const noexcept { return toeplitz_; }

  const std::vector<DenseMatrix>& sub() const noexcept { return sub_; }
  const std::vector<DenseMatrix>& diag() const noexcept { return diag_; }
  const std::vector<DenseMatrix>& super() const noexcept { return super_; }

  DenseMatrix materialize() const;
  Vector multiply(std::span<const double> x) const;

private:
  std::size_t n_ = 0;
  std::vector<DenseMatrix> sub_;
  std::vector<DenseMatrix> diag_;
  std::vector<DenseMatrix> super_;
  bool toeplitz_ = false;
};

/// Block LU of a block tridiagonal matrix: no pivoting across block rows,
/// partial pivoting inside each Schur-complement block. If a block pivot
/// fails, the whole matrix is factored densely instead.
class BlockTridiagonalLU {
public:
  explicit BlockTridiagonalLU(const BlockTridiagonal& t);

  DenseMatrix solve(const DenseMatrix& rhs) const;
  Vector solve(std::span<const double> rhs) const;

  std::size_t dim() const noexcept { return n_ * blocks_; }
  bool used_dense_fallback() const noexcept { return dense_.has_value(); }

private:
  std::size_t n_ = 0;
  std::size_t blocks_ = 0;
  std::vector<DenseMatrix> sub_;
  std::vector<LUFactors> pivots_;   // factors of D_i
  std::vector<DenseMatrix> upper_;  // D_i^{-1} B_i
  std::optional<LUFactors> dense_;
};

/// The block-arrow matrix: top wing (m block rows), one center block row, and
/// a bottom wing (m block rows), coupled through B_H, C, B and C_h:
///
///   [ Ahat_H      e_m (x) B_H         0          ]
///   [ e_m^T (x) C      A        e_1^T (x) B      ]
///   [    0        e_1 (x) C_h       Ahat_h       ]
class BlockArrowSystem {
public:
  /// Throws DimensionMismatch naming the offending block.
  static BlockArrowSystem assemble(std::size_t n, std::size_t m, BlockTridiagonal wing_top,
                                   BlockTridiagonal wing_bottom, DenseMatrix a, DenseMatrix b,
                                   DenseMatrix c, DenseMatrix bh, DenseMatrix ch);

  std::size_t block_dim() const noexcept { return n_; }
  std::size_t wing_length() const noexcept { return m_; }
  std::size_t block_rows() const noexcept { return 2 * m_ + 1; }
  std::size_t dim() const noexcept { return n_ * (2 * m_ + 1); }
  /// Dimension of each local problem, n(m+1).
  std::size_t local_dim() const noexcept { return n_ * (m_ + 1); }

  const BlockTridiagonal& wing_top() const noexcept { return top_; }
  const BlockTridiagonal& wing_bottom() const noexcept { return bottom_; }
  const DenseMatrix& center() const noexcept { return a_; }
  const DenseMatrix& coupling_b() const noexcept { return b_; }
  const DenseMatrix& coupling_c() const noexcept { return c_; }
  const DenseMatrix& coupling_bh() const noexcept { return bh_; }
  const DenseMatrix& coupling_ch() const noexcept { return ch_; }

  /// Both wings Toeplitz and, for m >= 2, the couplings B_H, C_h equal to the
  /// wings' own off-diagonal blocks.
  bool is_toeplitz() const noexcept;

  /// The whole matrix as a (2m+1)-block tridiagonal.
  BlockTridiagonal as_block_tridiagonal() const;
  /// A_1 = R_1 A R_1^T (Top) or A_2 = R_2 A R_2^T (Bottom), as block tridiagonals.
  BlockTridiagonal local_matrix(Subdomain which) const;

  Vector multiply(std::span<const double> x) const;

private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  BlockTridiagonal top_;
  BlockTridiagonal bottom_;
  DenseMatrix a_, b_, c_, bh_, ch_;
};

/// Column strip of a wing inverse: Z_{1:m,m} (Last) or Z_{1:m,1} (First).
struct ZBlocks {
  WingSide side = WingSide::Last;
  std::vector<DenseMatrix> strip;
};

/// Throws SizeLimitExceeded when n(2m+1) > 4000.
DenseMatrix materialize_dense(const BlockArrowSystem& sys);
/// Leading (Top) or trailing (Bottom) n(m+1) principal submatrix.
DenseMatrix restrict_to(const BlockArrowSystem& sys, Subdomain which);
ZBlocks extract_z_strip(const BlockTridiagonal& wing, WingSide side);

}  // namespace schwarz
