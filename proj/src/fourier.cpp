#include "schmidt/fourier.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace schmidt {

namespace {

// In-place radix-2 Cooley-Tukey. sign = -1 analyzes (coefficients from
// samples, unnormalized), sign = +1 synthesizes (samples from coefficients).
void fft_radix2(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  if (n < 2) return;
  std::vector<Complex> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddle[k] = std::polar(
        1.0, sign * 2.0 * std::numbers::pi * double(k) / double(n));
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex w = twiddle[k * step];
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

int wrap_index(int j, int m) {
  int r = j % m;
  return r < 0 ? r + m : r;
}

}  // namespace

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

int default_grid_size(int degree) {
  return next_pow2(4 * (degree + 1));
}

// ---------------------------------------------------------------------------
// FourierVec

FourierVec::FourierVec(int dim, int neg, int pos)
    : dim_(dim), neg_(neg), pos_(pos) {
  if (dim < 1 || neg < 0 || pos < 0) {
    throw Error("FourierVec: invalid dimensions");
  }
  coeffs_ = Eigen::MatrixXcd::Zero(dim, neg + pos + 1);
}

FourierVec FourierVec::constant(const Eigen::VectorXcd& value) {
  FourierVec f(static_cast<int>(value.size()), 0, 0);
  f.coeffs_.col(0) = value;
  return f;
}

FourierVec FourierVec::monomial(int dim, int component, int power,
                                Complex value) {
  FourierVec f(dim, power < 0 ? -power : 0, power > 0 ? power : 0);
  f.set_coeff(component, power, value);
  return f;
}

Complex FourierVec::coeff(int component, int index) const {
  if (index < -neg_ || index > pos_) return Complex(0.0, 0.0);
  return coeffs_(component, index + neg_);
}

void FourierVec::set_coeff(int component, int index, Complex value) {
  if (index < -neg_ || index > pos_) {
    throw WindowExceeded("set_coeff: index outside stored window");
  }
  coeffs_(component, index + neg_) = value;
}

Eigen::VectorXcd FourierVec::coeff_block(int index) const {
  if (index < -neg_ || index > pos_) return Eigen::VectorXcd::Zero(dim_);
  return coeffs_.col(index + neg_);
}

void FourierVec::set_coeff_block(int index, const Eigen::VectorXcd& value) {
  if (index < -neg_ || index > pos_) {
    throw WindowExceeded("set_coeff_block: index outside stored window");
  }
  coeffs_.col(index + neg_) = value;
}

double FourierVec::norm_sq() const { return coeffs_.squaredNorm(); }

double FourierVec::norm() const { return std::sqrt(norm_sq()); }

double FourierVec::negative_mass() const {
  if (neg_ == 0) return 0.0;
  return std::sqrt(coeffs_.leftCols(neg_).squaredNorm());
}

FourierVec& FourierVec::operator*=(Complex scale) {
  coeffs_ *= scale;
  return *this;
}

namespace {

FourierVec combine(const FourierVec& a, const FourierVec& b, Complex sb) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("FourierVec combine: dim mismatch");
  }
  FourierVec out(a.dim(), std::max(a.neg(), b.neg()),
                 std::max(a.pos(), b.pos()));
  for (int j = -out.neg(); j <= out.pos(); ++j) {
    out.set_coeff_block(j, a.coeff_block(j) + sb * b.coeff_block(j));
  }
  return out;
}

}  // namespace

FourierVec operator+(const FourierVec& a, const FourierVec& b) {
  return combine(a, b, Complex(1.0, 0.0));
}

FourierVec operator-(const FourierVec& a, const FourierVec& b) {
  return combine(a, b, Complex(-1.0, 0.0));
}

FourierVec operator*(Complex scale, const FourierVec& f) {
  FourierVec out = f;
  out *= scale;
  return out;
}

FourierVec analytic_project(const FourierVec& f) {
  FourierVec out(f.dim(), 0, f.pos());
  for (int j = 0; j <= f.pos(); ++j) out.set_coeff_block(j, f.coeff_block(j));
  return out;
}

FourierVec shift(const FourierVec& f) {
  FourierVec out(f.dim(), std::max(f.neg() - 1, 0), f.pos() + 1);
  for (int j = -f.neg(); j <= f.pos(); ++j) {
    out.set_coeff_block(j + 1, f.coeff_block(j));
  }
  return out;
}

FourierVec backshift(const FourierVec& f) {
  FourierVec out(f.dim(), 0, std::max(f.pos() - 1, 0));
  for (int j = 1; j <= f.pos(); ++j) out.set_coeff_block(j - 1, f.coeff_block(j));
  return out;
}

FourierVec conjugate_boundary(const FourierVec& f) {
  FourierVec out(f.dim(), f.pos(), f.neg());
  for (int j = -f.neg(); j <= f.pos(); ++j) {
    out.set_coeff_block(-j, f.coeff_block(j).conjugate());
  }
  return out;
}

Complex inner_product(const FourierVec& f, const FourierVec& g) {
  if (f.dim() != g.dim()) {
    throw DimensionMismatch("inner_product: dim mismatch");
  }
  const int lo = -std::min(f.neg(), g.neg());
  const int hi = std::min(f.pos(), g.pos());
  Complex sum(0.0, 0.0);
  for (int j = lo; j <= hi; ++j) {
    sum += g.coeff_block(j).dot(f.coeff_block(j));  // Eigen dot conjugates lhs
  }
  return sum;
}

Eigen::VectorXcd value_at_zero(const FourierVec& f) {
  return f.coeff_block(0);
}

double distance(const FourierVec& f, const FourierVec& g) {
  return (f - g).norm();
}

// ---------------------------------------------------------------------------
// GridSamples

GridSamples::GridSamples(int dim, int grid_size)
    : dim_(dim), grid_size_(grid_size) {
  values_ = Eigen::MatrixXcd::Zero(dim, grid_size);
}

Complex GridSamples::node(int t, int grid_size) {
  return std::polar(1.0, 2.0 * std::numbers::pi * double(t) / double(grid_size));
}

GridSamples to_grid(const FourierVec& f, int grid_size) {
  if (f.neg() + f.pos() + 1 > grid_size) {
    throw AliasingError("to_grid: window wider than grid");
  }
  GridSamples g(f.dim(), grid_size);
  std::vector<Complex> work(grid_size);
  for (int c = 0; c < f.dim(); ++c) {
    std::fill(work.begin(), work.end(), Complex(0.0, 0.0));
    for (int j = -f.neg(); j <= f.pos(); ++j) {
      work[wrap_index(j, grid_size)] += f.coeff(c, j);
    }
    fft_radix2(work, +1);
    for (int t = 0; t < grid_size; ++t) g.values()(c, t) = work[t];
  }
  return g;
}

FourierVec from_grid(const GridSamples& g, int neg, int pos) {
  const int m = g.grid_size();
  if (neg + pos + 1 > m) {
    throw AliasingError("from_grid: window wider than grid");
  }
  FourierVec f(g.dim(), neg, pos);
  std::vector<Complex> work(m);
  for (int c = 0; c < g.dim(); ++c) {
    for (int t = 0; t < m; ++t) work[t] = g.values()(c, t);
    fft_radix2(work, -1);
    for (int j = -neg; j <= pos; ++j) {
      f.set_coeff(c, j, work[wrap_index(j, m)] / double(m));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// MatrixFourier

MatrixFourier::MatrixFourier(int rows, int cols, int neg, int pos)
    : rows_(rows), cols_(cols), neg_(neg), pos_(pos) {
  if (rows < 1 || cols < 1 || neg < 0 || pos < 0) {
    throw Error("MatrixFourier: invalid dimensions");
  }
  blocks_.assign(neg + pos + 1, Eigen::MatrixXcd::Zero(rows, cols));
}

MatrixFourier MatrixFourier::identity(int m) {
  MatrixFourier a(m, m, 0, 0);
  a.set_block(0, Eigen::MatrixXcd::Identity(m, m));
  return a;
}

MatrixFourier MatrixFourier::from_columns(
    const std::vector<FourierVec>& columns) {
  if (columns.empty()) throw Error("from_columns: no columns");
  int neg = 0, pos = 0;
  for (const auto& c : columns) {
    if (c.dim() != columns.front().dim()) {
      throw DimensionMismatch("from_columns: inconsistent dims");
    }
    neg = std::max(neg, c.neg());
    pos = std::max(pos, c.pos());
  }
  MatrixFourier a(columns.front().dim(), static_cast<int>(columns.size()), neg,
                  pos);
  for (int j = -neg; j <= pos; ++j) {
    Eigen::MatrixXcd blk(a.rows(), a.cols());
    for (int k = 0; k < a.cols(); ++k) blk.col(k) = columns[k].coeff_block(j);
    a.set_block(j, blk);
  }
  return a;
}

Eigen::MatrixXcd MatrixFourier::block(int index) const {
  if (index < -neg_ || index > pos_) {
    return Eigen::MatrixXcd::Zero(rows_, cols_);
  }
  return blocks_[index + neg_];
}

void MatrixFourier::set_block(int index, const Eigen::MatrixXcd& value) {
  if (index < -neg_ || index > pos_) {
    throw WindowExceeded("set_block: index outside stored window");
  }
  blocks_[index + neg_] = value;
}

FourierVec MatrixFourier::column(int j) const {
  FourierVec f(rows_, neg_, pos_);
  for (int k = -neg_; k <= pos_; ++k) {
    f.set_coeff_block(k, blocks_[k + neg_].col(j));
  }
  return f;
}

double MatrixFourier::norm_frobenius_sq() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return s;
}

double MatrixFourier::negative_mass() const {
  double s = 0.0;
  for (int j = -neg_; j < 0; ++j) s += blocks_[j + neg_].squaredNorm();
  return std::sqrt(s);
}

MatrixFourier MatrixFourier::transpose() const {
  MatrixFourier a(cols_, rows_, neg_, pos_);
  for (int j = -neg_; j <= pos_; ++j) {
    a.set_block(j, blocks_[j + neg_].transpose());
  }
  return a;
}

MatrixFourier analytic_project(const MatrixFourier& a) {
  MatrixFourier out(a.rows(), a.cols(), 0, a.pos());
  for (int j = 0; j <= a.pos(); ++j) out.set_block(j, a.block(j));
  return out;
}

MatrixFourier backshift(const MatrixFourier& a) {
  MatrixFourier out(a.rows(), a.cols(), 0, std::max(a.pos() - 1, 0));
  for (int j = 1; j <= a.pos(); ++j) out.set_block(j - 1, a.block(j));
  return out;
}

MatrixFourier shift(const MatrixFourier& a) {
  MatrixFourier out(a.rows(), a.cols(), std::max(a.neg() - 1, 0), a.pos() + 1);
  for (int j = -a.neg(); j <= a.pos(); ++j) out.set_block(j + 1, a.block(j));
  return out;
}

std::vector<Eigen::MatrixXcd> to_grid(const MatrixFourier& a, int grid_size) {
  if (a.neg() + a.pos() + 1 > grid_size) {
    throw AliasingError("to_grid: window wider than grid");
  }
  std::vector<Eigen::MatrixXcd> nodes(
      grid_size, Eigen::MatrixXcd::Zero(a.rows(), a.cols()));
  std::vector<Complex> work(grid_size);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      std::fill(work.begin(), work.end(), Complex(0.0, 0.0));
      for (int j = -a.neg(); j <= a.pos(); ++j) {
        work[wrap_index(j, grid_size)] += a.block(j)(r, c);
      }
      fft_radix2(work, +1);
      for (int t = 0; t < grid_size; ++t) nodes[t](r, c) = work[t];
    }
  }
  return nodes;
}

MatrixFourier matrix_from_grid(const std::vector<Eigen::MatrixXcd>& nodes,
                               int neg, int pos) {
  const int m = static_cast<int>(nodes.size());
  if (m == 0) throw Error("matrix_from_grid: empty grid");
  if (neg + pos + 1 > m) {
    throw AliasingError("matrix_from_grid: window wider than grid");
  }
  MatrixFourier a(static_cast<int>(nodes.front().rows()),
                  static_cast<int>(nodes.front().cols()), neg, pos);
  std::vector<Complex> work(m);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) {
      for (int t = 0; t < m; ++t) work[t] = nodes[t](r, c);
      fft_radix2(work, -1);
      for (int j = -neg; j <= pos; ++j) {
        Eigen::MatrixXcd blk = a.block(j);
        blk(r, c) = work[wrap_index(j, m)] / double(m);
        a.set_block(j, blk);
      }
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Products

namespace {

int product_grid(int neg_a, int pos_a, int neg_b, int pos_b) {
  const int width = neg_a + neg_b + pos_a + pos_b + 1;
  const int deg = std::max(std::max(neg_a, pos_a), std::max(neg_b, pos_b));
  return std::max(next_pow2(width), default_grid_size(deg));
}

}  // namespace

FourierVec multiply(const FourierVec& scalar_factor, const FourierVec& f) {
  if (scalar_factor.dim() != 1) {
    throw DimensionMismatch("multiply: scalar factor must have dim 1");
  }
  const int out_neg = scalar_factor.neg() + f.neg();
  const int out_pos = scalar_factor.pos() + f.pos();
  const int m = product_grid(scalar_factor.neg(), scalar_factor.pos(), f.neg(),
                             f.pos());
  GridSamples ga = to_grid(scalar_factor, m);
  GridSamples gf = to_grid(f, m);
  GridSamples gp(f.dim(), m);
  for (int t = 0; t < m; ++t) {
    gp.values().col(t) = ga.values()(0, t) * gf.values().col(t);
  }
  return from_grid(gp, out_neg, out_pos);
}

FourierVec multiply(const MatrixFourier& a, const FourierVec& f) {
  if (a.cols() != f.dim()) {
    throw DimensionMismatch("multiply: matrix cols != vector dim");
  }
  const int out_neg = a.neg() + f.neg();
  const int out_pos = a.pos() + f.pos();
  const int m = product_grid(a.neg(), a.pos(), f.neg(), f.pos());
  auto na = to_grid(a, m);
  GridSamples gf = to_grid(f, m);
  GridSamples gp(a.rows(), m);
  for (int t = 0; t < m; ++t) {
    gp.values().col(t) = na[t] * gf.values().col(t);
  }
  return from_grid(gp, out_neg, out_pos);
}

MatrixFourier multiply(const MatrixFourier& a, const MatrixFourier& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("multiply: inner matrix dims differ");
  }
  const int out_neg = a.neg() + b.neg();
  const int out_pos = a.pos() + b.pos();
  const int m = product_grid(a.neg(), a.pos(), b.neg(), b.pos());
  auto na = to_grid(a, m);
  auto nb = to_grid(b, m);
  std::vector<Eigen::MatrixXcd> np(m);
  for (int t = 0; t < m; ++t) np[t] = na[t] * nb[t];
  return matrix_from_grid(np, out_neg, out_pos);
}

FourierVec multiply(const FourierVec& scalar_factor, const FourierVec& f,
                    int out_neg, int out_pos) {
  if (out_neg < scalar_factor.neg() + f.neg() ||
      out_pos < scalar_factor.pos() + f.pos()) {
    throw AliasingError("multiply: requested window cannot hold the product");
  }
  FourierVec full = multiply(scalar_factor, f);
  FourierVec out(f.dim(), out_neg, out_pos);
  for (int j = -full.neg(); j <= full.pos(); ++j) {
    out.set_coeff_block(j, full.coeff_block(j));
  }
  return out;
}

FourierVec multiply(const MatrixFourier& a, const FourierVec& f, int out_neg,
                    int out_pos) {
  if (out_neg < a.neg() + f.neg() || out_pos < a.pos() + f.pos()) {
    throw AliasingError("multiply: requested window cannot hold the product");
  }
  FourierVec full = multiply(a, f);
  FourierVec out(a.rows(), out_neg, out_pos);
  for (int j = -full.neg(); j <= full.pos(); ++j) {
    out.set_coeff_block(j, full.coeff_block(j));
  }
  return out;
}

}  // namespace schmidt
