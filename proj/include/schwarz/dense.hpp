#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace schwarz {

using Vector = std::vector<double>;

enum class NormKind { Inf, Two };

/// Row-major dense matrix of doubles.
///
/// Blocks of the block-arrow system are tiny (tens of rows), so everything
/// above this level stores blocks densely and lets the block layer carry the
/// sparsity.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Throws InvalidParameter when the entry count does not match or an entry
  /// is not finite.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  /// n x n tridiagonal Toeplitz matrix with constant sub, diag and super entries.
  static DenseMatrix tridiag(std::size_t n, double sub, double diag, double super);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return entries_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {entries_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<const double> entries() const noexcept { return entries_; }
  double* data() noexcept { return entries_.data(); }
  const double* data() const noexcept { return entries_.data(); }

  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b);
  Vector column(std::size_t j) const;
  DenseMatrix transpose() const;
  bool all_finite() const noexcept;

  DenseMatrix& operator+=(const DenseMatrix& o);
  DenseMatrix& operator-=(const DenseMatrix& o);
  DenseMatrix& operator*=(double s) noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const double> x);

/// Largest absolute entry of a - b; both must have the same shape.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

double inf_norm(std::span<const double> x) noexcept;
double two_norm(std::span<const double> x) noexcept;
double dot(std::span<const double> x, std::span<const double> y) noexcept;
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept;
Vector subtract(std::span<const double> x, std::span<const double> y);

}  // namespace schwarz
