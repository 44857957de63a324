#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "schmidt/errors.hpp"

namespace schmidt {

using Complex = std::complex<double>;

/// Default absolute tolerance on coefficients.
inline constexpr double kCoeffTol = 1e-12;

/// Smallest power of two >= 4*(degree+1). Alias-free for products of two
/// factors of at most the given degree, with headroom.
int default_grid_size(int degree);

int next_pow2(int n);

///
/// A C^m-valued function on the unit circle, held as m truncated two-sided
/// Fourier coefficient sequences over the index window [-neg, pos].
/// Coefficients outside the window are implicitly zero. An H^2 element has
/// neg() == 0. Values are immutable once built; all operations are pure.
///
class FourierVec {
 public:
  FourierVec(int dim, int neg, int pos);

  static FourierVec zero(int dim, int neg, int pos) {
    return FourierVec(dim, neg, pos);
  }
  /// Constant function with the given value in C^m.
  static FourierVec constant(const Eigen::VectorXcd& value);
  /// value * z^power in the given component, zero elsewhere.
  static FourierVec monomial(int dim, int component, int power,
                             Complex value = Complex(1.0, 0.0));
  /// Constant standard basis vector e_i.
  static FourierVec basis(int dim, int component) {
    return monomial(dim, component, 0);
  }

  int dim() const { return dim_; }
  int neg() const { return neg_; }
  int pos() const { return pos_; }

  Complex coeff(int component, int index) const;
  void set_coeff(int component, int index, Complex value);

  /// The C^m coefficient at the given index (zero outside the window).
  Eigen::VectorXcd coeff_block(int index) const;
  void set_coeff_block(int index, const Eigen::VectorXcd& value);

  double norm_sq() const;
  double norm() const;
  /// l2 mass of the coefficients at strictly negative indices.
  double negative_mass() const;

  FourierVec& operator*=(Complex scale);

 private:
  int dim_;
  int neg_;
  int pos_;
  Eigen::MatrixXcd coeffs_;  // dim x (neg+pos+1); column k holds index k-neg
};

FourierVec operator+(const FourierVec& a, const FourierVec& b);
FourierVec operator-(const FourierVec& a, const FourierVec& b);
FourierVec operator*(Complex scale, const FourierVec& f);

/// Orthogonal projection onto H^2: zero all negative-index coefficients.
FourierVec analytic_project(const FourierVec& f);

/// Multiplication by z (index shift +1).
FourierVec shift(const FourierVec& f);

/// S* on the analytic part: drop the 0th coefficient, shift indices down.
FourierVec backshift(const FourierVec& f);

/// The boundary conjugate: coefficient at j equals conj(coefficient at -j).
FourierVec conjugate_boundary(const FourierVec& f);

Complex inner_product(const FourierVec& f, const FourierVec& g);

Eigen::VectorXcd value_at_zero(const FourierVec& f);

double distance(const FourierVec& f, const FourierVec& g);

///
/// Boundary samples of a C^m-valued function at the M nodes exp(2*pi*i*t/M),
/// M a power of two.
///
class GridSamples {
 public:
  GridSamples(int dim, int grid_size);

  int dim() const { return dim_; }
  int grid_size() const { return grid_size_; }

  const Eigen::MatrixXcd& values() const { return values_; }
  Eigen::MatrixXcd& values() { return values_; }

  static Complex node(int t, int grid_size);

 private:
  int dim_;
  int grid_size_;
  Eigen::MatrixXcd values_;  // dim x grid_size
};

/// Evaluate on the grid. Throws AliasingError if the window is wider than
/// the grid can represent.
GridSamples to_grid(const FourierVec& f, int grid_size);

/// Read coefficients over [-neg, pos] back off the grid. Exact when the
/// sampled function is supported on a window of width <= grid size.
FourierVec from_grid(const GridSamples& g, int neg, int pos);

///
/// Matrix-valued truncated Fourier data: one rows x cols coefficient matrix
/// per index in [-neg, pos].
///
class MatrixFourier {
 public:
  MatrixFourier(int rows, int cols, int neg, int pos);

  static MatrixFourier identity(int m);
  /// Assemble from H^2 columns over a common window.
  static MatrixFourier from_columns(const std::vector<FourierVec>& columns);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int neg() const { return neg_; }
  int pos() const { return pos_; }

  Eigen::MatrixXcd block(int index) const;  // zero matrix outside the window
  void set_block(int index, const Eigen::MatrixXcd& value);

  FourierVec column(int j) const;

  double norm_frobenius_sq() const;
  double negative_mass() const;

  MatrixFourier transpose() const;

 private:
  int rows_;
  int cols_;
  int neg_;
  int pos_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

MatrixFourier analytic_project(const MatrixFourier& a);
MatrixFourier backshift(const MatrixFourier& a);
MatrixFourier shift(const MatrixFourier& a);

/// Per-node boundary values of a matrix function.
std::vector<Eigen::MatrixXcd> to_grid(const MatrixFourier& a, int grid_size);
MatrixFourier matrix_from_grid(const std::vector<Eigen::MatrixXcd>& nodes,
                               int neg, int pos);

/// Pointwise products via grid evaluation; exact for in-window factors.
/// The overloads with an explicit output window throw AliasingError when the
/// requested window cannot hold the full product.
FourierVec multiply(const FourierVec& scalar_factor, const FourierVec& f);
FourierVec multiply(const MatrixFourier& a, const FourierVec& f);
MatrixFourier multiply(const MatrixFourier& a, const MatrixFourier& b);
FourierVec multiply(const FourierVec& scalar_factor, const FourierVec& f,
                    int out_neg, int out_pos);
FourierVec multiply(const MatrixFourier& a, const FourierVec& f, int out_neg,
                    int out_pos);

}  // namespace schmidt
