#include "schwarz/dense.hpp"

#include "schwarz/error.hpp"
#include "schwarz/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace schwarz {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                           std::to_string(b.cols()));
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw SchwarzError(ErrorCode::InvalidParameter,
                       "expected " + std::to_string(rows_ * cols_) + " entries, got " +
                           std::to_string(entries_.size()));
  }
  if (!all_finite()) {
    throw SchwarzError(ErrorCode::InvalidParameter, "matrix entries must be finite");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
  std::vector<double> entries;
  entries.reserve(nr * nc);
  for (const auto& r : rows) {
    if (r.size() != nc) throw SchwarzError(ErrorCode::InvalidParameter, "ragged row list");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return DenseMatrix(nr, nc, std::move(entries));
}

DenseMatrix DenseMatrix::tridiag(std::size_t n, double sub, double diag, double super) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag;
    if (i > 0) m(i, i - 1) = sub;
    if (i + 1 < n) m(i, i + 1) = super;
  }
  return m;
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw SchwarzError(ErrorCode::DimensionMismatch, "block extends past matrix bounds");
  }
  DenseMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    std::copy_n(entries_.data() + (r0 + i) * cols_ + c0, nc, b.data() + i * nc);
  }
  return b;
}

void DenseMatrix::set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw SchwarzError(ErrorCode::DimensionMismatch, "block extends past matrix bounds");
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    std::copy_n(b.data() + i * b.cols(), b.cols(), entries_.data() + (r0 + i) * cols_ + c0);
  }
}

Vector DenseMatrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) noexcept {
  for (double& v : entries_) v *= s;
  return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator-(DenseMatrix a) { return a *= -1.0; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) { return kernels::gemm(a, b); }

Vector operator*(const DenseMatrix& a, std::span<const double> x) { return kernels::gemv(a, x); }

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double d = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return d;
}

double inf_norm(std::span<const double> x) noexcept {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double two_norm(std::span<const double> x) noexcept {
  // scaled to avoid overflow on the layer-resolved Shishkin rows
  const double scale = inf_norm(x);
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += (v / scale) * (v / scale);
  return scale * std::sqrt(s);
}

double dot(std::span<const double> x, std::span<const double> y) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vector subtract(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw SchwarzError(ErrorCode::DimensionMismatch, "vector lengths differ");
  }
  Vector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return d;
}

}  // namespace schwarz
