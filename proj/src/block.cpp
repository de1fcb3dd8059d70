#include "schwarz/block.hpp"

#include "schwarz/error.hpp"
#include "schwarz/kernels.hpp"

#include <string>

namespace schwarz {

namespace {

void require_block(const DenseMatrix& b, std::size_t n, const std::string& name) {
  if (b.rows() != n || b.cols() != n) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       name + " is " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                           ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
}

bool all_equal(const std::vector<DenseMatrix>& blocks) {
  for (const auto& b : blocks)
    if (!(b == blocks.front())) return false;
  return true;
}

// y_block += M x_block
void add_block_product(const DenseMatrix& mat, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < mat.cols(); ++j) s += mat(i, j) * x[j];
    y[i] += s;
  }
}

}  // namespace

BlockTridiagonal::BlockTridiagonal(std::vector<DenseMatrix> sub, std::vector<DenseMatrix> diag,
                                   std::vector<DenseMatrix> super)
    : sub_(std::move(sub)), diag_(std::move(diag)), super_(std::move(super)) {
  if (diag_.empty()) {
    throw SchwarzError(ErrorCode::DimensionMismatch, "block tridiagonal needs at least one block");
  }
  const std::size_t m = diag_.size();
  if (sub_.size() != m - 1 || super_.size() != m - 1) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "expected " + std::to_string(m - 1) + " sub/super blocks, got " +
                           std::to_string(sub_.size()) + "/" + std::to_string(super_.size()));
  }
  n_ = diag_.front().rows();
  for (std::size_t i = 0; i < m; ++i) require_block(diag_[i], n_, "diag[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i + 1 < m; ++i) {
    require_block(sub_[i], n_, "sub[" + std::to_string(i) + "]");
    require_block(super_[i], n_, "super[" + std::to_string(i) + "]");
  }
  toeplitz_ = all_equal(diag_) && (m == 1 || (all_equal(sub_) && all_equal(super_)));
}

BlockTridiagonal BlockTridiagonal::toeplitz(std::size_t m, const DenseMatrix& sub,
                                            const DenseMatrix& diag, const DenseMatrix& super) {
  if (m == 0) throw SchwarzError(ErrorCode::DimensionMismatch, "wing length must be >= 1");
  return BlockTridiagonal(std::vector<DenseMatrix>(m - 1, sub), std::vector<DenseMatrix>(m, diag),
                          std::vector<DenseMatrix>(m - 1, super));
}

DenseMatrix BlockTridiagonal::materialize() const {
  DenseMatrix d(dim(), dim());
  for (std::size_t i = 0; i < block_rows(); ++i) {
    d.set_block(i * n_, i * n_, diag_[i]);
    if (i + 1 < block_rows()) {
      d.set_block(i * n_, (i + 1) * n_, super_[i]);
      d.set_block((i + 1) * n_, i * n_, sub_[i]);
    }
  }
  return d;
}

Vector BlockTridiagonal::multiply(std::span<const double> x) const {
  if (x.size() != dim()) {
    throw SchwarzError(ErrorCode::DimensionMismatch, "block tridiagonal multiply: wrong length");
  }
  Vector y(dim(), 0.0);
  const std::size_t m = block_rows();
  const auto rows = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static) if (dim() * n_ > 65536)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    std::span<double> yi(y.data() + i * n_, n_);
    add_block_product(diag_[i], x.subspan(i * n_, n_), yi);
    if (i > 0) add_block_product(sub_[i - 1], x.subspan((i - 1) * n_, n_), yi);
    if (i + 1 < m) add_block_product(super_[i], x.subspan((i + 1) * n_, n_), yi);
  }
  return y;
}

BlockTridiagonalLU::BlockTridiagonalLU(const BlockTridiagonal& t)
    : n_(t.block_dim()), blocks_(t.block_rows()), sub_(t.sub()) {
  try {
    pivots_.reserve(blocks_);
    upper_.reserve(blocks_ - 1);
    for (std::size_t i = 0; i < blocks_; ++i) {
      DenseMatrix d = t.diag()[i];
      if (i > 0) d -= t.sub()[i - 1] * upper_[i - 1];
      pivots_.push_back(lu_factor(d));
      if (i + 1 < blocks_) upper_.push_back(schwarz::solve(pivots_.back(), t.super()[i]));
    }
  } catch (const SchwarzError& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    pivots_.clear();
    upper_.clear();
    dense_ = lu_factor(t.materialize());
  }
}

DenseMatrix BlockTridiagonalLU::solve(const DenseMatrix& rhs) const {
  if (rhs.rows() != dim()) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "block solve: rhs has " + std::to_string(rhs.rows()) + " rows, expected " +
                           std::to_string(dim()));
  }
  if (dense_) return schwarz::solve(*dense_, rhs);

  const std::size_t k = rhs.cols();
  std::vector<DenseMatrix> g(blocks_);
  for (std::size_t i = 0; i < blocks_; ++i) {
    DenseMatrix r = rhs.block(i * n_, 0, n_, k);
    if (i > 0) r -= sub_[i - 1] * g[i - 1];
    g[i] = schwarz::solve(pivots_[i], r);
  }
  DenseMatrix x(dim(), k);
  x.set_block((blocks_ - 1) * n_, 0, g[blocks_ - 1]);
  for (std::size_t i = blocks_ - 1; i-- > 0;) {
    g[i] -= upper_[i] * g[i + 1];
    x.set_block(i * n_, 0, g[i]);
  }
  return x;
}

Vector BlockTridiagonalLU::solve(std::span<const double> rhs) const {
  DenseMatrix x = solve(DenseMatrix(rhs.size(), 1, Vector(rhs.begin(), rhs.end())));
  return Vector(x.entries().begin(), x.entries().end());
}

BlockArrowSystem BlockArrowSystem::assemble(std::size_t n, std::size_t m,
                                            BlockTridiagonal wing_top,
                                            BlockTridiagonal wing_bottom, DenseMatrix a,
                                            DenseMatrix b, DenseMatrix c, DenseMatrix bh,
                                            DenseMatrix ch) {
  if (n == 0 || m == 0) {
    throw SchwarzError(ErrorCode::DimensionMismatch, "block size and wing length must be >= 1");
  }
  auto check_wing = [&](const BlockTridiagonal& w, const char* name) {
    if (w.block_dim() != n || w.block_rows() != m) {
      throw SchwarzError(ErrorCode::DimensionMismatch,
                         std::string(name) + " has " + std::to_string(w.block_rows()) +
                             " block rows of size " + std::to_string(w.block_dim()) +
                             ", expected " + std::to_string(m) + " of size " + std::to_string(n));
    }
  };
  check_wing(wing_top, "wing_top");
  check_wing(wing_bottom, "wing_bottom");
  require_block(a, n, "A");
  require_block(b, n, "B");
  require_block(c, n, "C");
  require_block(bh, n, "B_H");
  require_block(ch, n, "C_h");

  BlockArrowSystem s;
  s.n_ = n;
  s.m_ = m;
  s.top_ = std::move(wing_top);
  s.bottom_ = std::move(wing_bottom);
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  s.c_ = std::move(c);
  s.bh_ = std::move(bh);
  s.ch_ = std::move(ch);
  return s;
}

bool BlockArrowSystem::is_toeplitz() const noexcept {
  if (!top_.is_toeplitz() || !bottom_.is_toeplitz()) return false;
  if (m_ == 1) return true;
  return top_.super().front() == bh_ && bottom_.sub().front() == ch_;
}

BlockTridiagonal BlockArrowSystem::as_block_tridiagonal() const {
  std::vector<DenseMatrix> sub(top_.sub());
  std::vector<DenseMatrix> diag(top_.diag());
  std::vector<DenseMatrix> super(top_.super());
  sub.push_back(c_);
  sub.push_back(ch_);
  sub.insert(sub.end(), bottom_.sub().begin(), bottom_.sub().end());
  super.push_back(bh_);
  super.push_back(b_);
  super.insert(super.end(), bottom_.super().begin(), bottom_.super().end());
  diag.push_back(a_);
  diag.insert(diag.end(), bottom_.diag().begin(), bottom_.diag().end());
  return BlockTridiagonal(std::move(sub), std::move(diag), std::move(super));
}

BlockTridiagonal BlockArrowSystem::local_matrix(Subdomain which) const {
  if (which == Subdomain::Top) {
    std::vector<DenseMatrix> sub(top_.sub());
    std::vector<DenseMatrix> diag(top_.diag());
    std::vector<DenseMatrix> super(top_.super());
    sub.push_back(c_);
    super.push_back(bh_);
    diag.push_back(a_);
    return BlockTridiagonal(std::move(sub), std::move(diag), std::move(super));
  }
  std::vector<DenseMatrix> sub{ch_};
  std::vector<DenseMatrix> diag{a_};
  std::vector<DenseMatrix> super{b_};
  sub.insert(sub.end(), bottom_.sub().begin(), bottom_.sub().end());
  diag.insert(diag.end(), bottom_.diag().begin(), bottom_.diag().end());
  super.insert(super.end(), bottom_.super().begin(), bottom_.super().end());
  return BlockTridiagonal(std::move(sub), std::move(diag), std::move(super));
}

Vector BlockArrowSystem::multiply(std::span<const double> x) const {
  if (x.size() != dim()) {
    throw SchwarzError(ErrorCode::DimensionMismatch,
                       "system multiply: vector has " + std::to_string(x.size()) +
                           " entries, expected " + std::to_string(dim()));
  }
  Vector y(dim(), 0.0);
  const std::size_t last = 2 * m_;
  const auto rows = static_cast<std::ptrdiff_t>(last + 1);
#pragma omp parallel for schedule(static) if (dim() * n_ > 65536)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    std::span<double> yi(y.data() + i * n_, n_);
    auto xb = [&](std::size_t j) { return x.subspan(j * n_, n_); };
    if (i < m_) {
      add_block_product(top_.diag()[i], xb(i), yi);
      if (i > 0) add_block_product(top_.sub()[i - 1], xb(i - 1), yi);
      add_block_product(i + 1 < m_ ? top_.super()[i] : bh_, xb(i + 1), yi);
    } else if (i == m_) {
      add_block_product(c_, xb(i - 1), yi);
      add_block_product(a_, xb(i), yi);
      add_block_product(b_, xb(i + 1), yi);
    } else {
      const std::size_t k = i - m_ - 1;  // block row inside the bottom wing
      add_block_product(k == 0 ? ch_ : bottom_.sub()[k - 1], xb(i - 1), yi);
      add_block_product(bottom_.diag()[k], xb(i), yi);
      if (i < last) add_block_product(bottom_.super()[k], xb(i + 1), yi);
    }
  }
  return y;
}

DenseMatrix materialize_dense(const BlockArrowSystem& sys) {
  if (sys.dim() > kDenseLimit) {
    throw SchwarzError(ErrorCode::SizeLimitExceeded,
                       "dense system of dimension " + std::to_string(sys.dim()) +
                           " exceeds the limit of 4000");
  }
  return sys.as_block_tridiagonal().materialize();
}

DenseMatrix restrict_to(const BlockArrowSystem& sys, Subdomain which) {
  return sys.local_matrix(which).materialize();
}

ZBlocks extract_z_strip(const BlockTridiagonal& wing, WingSide side) {
  const std::size_t n = wing.block_dim();
  const std::size_t m = wing.block_rows();
  DenseMatrix unit(wing.dim(), n);
  const std::size_t j = side == WingSide::First ? 0 : m - 1;
  unit.set_block(j * n, 0, DenseMatrix::identity(n));
  const DenseMatrix cols = BlockTridiagonalLU(wing).solve(unit);

  ZBlocks z{side, {}};
  z.strip.reserve(m);
  for (std::size_t i = 0; i < m; ++i) z.strip.push_back(cols.block(i * n, 0, n, n));
  return z;
}

}  // namespace schwarz
