#pragma once

#include "schwarz/dense.hpp"

#include <cstdint>
#include <vector>

namespace schwarz {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr std::size_t kSingularValueLimit = 400;

/// Maximum absolute row sum.
double inf_norm(const DenseMatrix& m) noexcept;
/// Maximum absolute column sum.
double one_norm(const DenseMatrix& m) noexcept;

/// Largest singular value by power iteration on m^T m, relative tolerance
/// 1e-12, at most 50000 steps. Throws NoConvergence when the cap is hit.
double two_norm(const DenseMatrix& m);

double norm(const DenseMatrix& m, NormKind kind);

/// All singular values by one-sided Jacobi, descending. Matrices larger than
/// 400 in either dimension are refused with SizeLimitExceeded.
std::vector<double> singular_values(const DenseMatrix& m);

}  // namespace schwarz
