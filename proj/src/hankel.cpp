#include "schmidt/hankel.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace schmidt {

BlockHankelMatrix::BlockHankelMatrix(const MatrixSymbol& u, int truncation)
    : dim_(u.dim()),
      truncation_(truncation),
      symbol_degree_(u.degree()),
      tail_bound_(u.tail_bound()),
      symmetric_(u.symmetric()) {
  if (truncation < 0) throw Error("BlockHankelMatrix: negative truncation");
  const int m = dim_;
  const int n = (truncation + 1) * m;
  gamma_ = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j <= truncation; ++j) {
    for (int k = 0; k <= truncation; ++k) {
      if (j + k > u.degree()) continue;
      gamma_.block(j * m, k * m, m, m) = u.coeff_block(j + k);
    }
  }
}

Eigen::VectorXcd to_coeff_vector(const FourierVec& f, int truncation) {
  if (f.negative_mass() > 0.0) {
    throw WindowExceeded("to_coeff_vector: not an H^2 element");
  }
  const int m = f.dim();
  for (int j = truncation + 1; j <= f.pos(); ++j) {
    if (f.coeff_block(j).norm() > 0.0) {
      throw WindowExceeded("to_coeff_vector: coefficients beyond truncation");
    }
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero((truncation + 1) * m);
  for (int j = 0; j <= std::min(truncation, f.pos()); ++j) {
    v.segment(j * m, m) = f.coeff_block(j);
  }
  return v;
}

FourierVec from_coeff_vector(const Eigen::VectorXcd& coeffs, int dim) {
  const int n = static_cast<int>(coeffs.size()) / dim;
  FourierVec f(dim, 0, n - 1);
  for (int j = 0; j < n; ++j) f.set_coeff_block(j, coeffs.segment(j * dim, dim));
  return f;
}

FourierVec apply_H(const BlockHankelMatrix& h, const FourierVec& f) {
  const Eigen::VectorXcd v = to_coeff_vector(f, h.truncation());
  return from_coeff_vector(h.gamma() * v.conjugate(), h.dim());
}

FourierVec apply_H_function(const MatrixSymbol& u, const FourierVec& f) {
  return analytic_project(multiply(u.entries(), conjugate_boundary(f)));
}

FourierVec apply_Hsq(const BlockHankelMatrix& h, const FourierVec& f) {
  if (!h.symmetric()) {
    throw NotSymmetric("apply_Hsq: symbol is not symmetric");
  }
  const Eigen::VectorXcd v = to_coeff_vector(f, h.truncation());
  return from_coeff_vector(
      h.gamma() * (h.gamma() * v.conjugate()).conjugate(), h.dim());
}

Eigen::MatrixXcd hsq_matrix(const BlockHankelMatrix& h) {
  if (!h.symmetric()) {
    throw NotSymmetric("hsq_matrix: symbol is not symmetric");
  }
  return h.gamma() * h.gamma().conjugate();
}

FourierVec apply_K(const BlockHankelMatrix& h,
                   const BlockHankelMatrix& h_shifted, const FourierVec& f) {
  (void)h_shifted;
  return apply_H(h, shift(f));
}

double k_route_disagreement(const BlockHankelMatrix& h,
                            const BlockHankelMatrix& h_shifted,
                            const FourierVec& f) {
  const FourierVec a = apply_H(h, shift(f));
  const FourierVec b = backshift(apply_H(h, f));
  const FourierVec c = apply_H(h_shifted, f);
  return std::max(distance(a, b), std::max(distance(a, c), distance(b, c)));
}

double rank_m_identity_residual(const BlockHankelMatrix& h,
                                const BlockHankelMatrix& h_shifted,
                                const std::vector<FourierVec>& columns) {
  if (!h.symmetric()) {
    throw NotSymmetric("rank_m_identity_residual: symbol is not symmetric");
  }
  const Eigen::MatrixXcd ksq = h_shifted.gamma() * h_shifted.gamma().conjugate();
  Eigen::MatrixXcd rhs = hsq_matrix(h);
  for (const FourierVec& col : columns) {
    const Eigen::VectorXcd u = to_coeff_vector(col, h.truncation());
    rhs -= u * u.adjoint();
  }
  return operator_norm(ksq - rhs);
}

FourierVec apply_G(const BlockHankelMatrix& h, const FourierVec& f) {
  const Eigen::VectorXcd v = to_coeff_vector(f, h.truncation());
  return from_coeff_vector(h.gamma() * v, h.dim());
}

std::pair<FourierVec, FourierVec> schmidt_pair(const BlockHankelMatrix& h,
                                               double s, const FourierVec& xi,
                                               double tol) {
  if (s <= 0.0) throw Error("schmidt_pair: s must be positive");
  const FourierVec hsq_xi = apply_Hsq(h, xi);
  const double res = distance(hsq_xi, Complex(s * s, 0.0) * xi);
  if (res > tol * s * s) {
    throw NotAnEigenvector("schmidt_pair: ||H^2 xi - s^2 xi|| too large");
  }
  FourierVec eta = apply_H(h, xi);
  eta *= Complex(1.0 / s, 0.0);
  return {xi, eta};
}

double operator_norm(const Eigen::MatrixXcd& mat) {
  if (mat.rows() == 0 || mat.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
  return svd.singularValues()(0);
}

HankelFamily HankelFamily::build(const MatrixSymbol& u, int truncation) {
  return HankelFamily{u, BlockHankelMatrix(u, truncation),
                      BlockHankelMatrix(shift_symbol(u), truncation),
                      symbol_columns(u)};
}

}  // namespace schmidt
