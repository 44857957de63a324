#pragma once

#include <utility>
#include <vector>

#include "schmidt/symbols.hpp"

namespace schmidt {

///
/// Dense coefficient-space realization of the block Hankel operator at
/// truncation N: gamma is (N+1)m square with block (j,k) = U^(j+k). The
/// anti-linear operator itself is gamma composed with coefficient
/// conjugation; gamma alone realizes the linear Hankel G_U.
///
class BlockHankelMatrix {
 public:
  BlockHankelMatrix(const MatrixSymbol& u, int truncation);

  int dim() const { return dim_; }
  int truncation() const { return truncation_; }
  int size() const { return static_cast<int>(gamma_.rows()); }
  int symbol_degree() const { return symbol_degree_; }
  double tail_bound() const { return tail_bound_; }
  bool symmetric() const { return symmetric_; }

  const Eigen::MatrixXcd& gamma() const { return gamma_; }

 private:
  int dim_;
  int truncation_;
  int symbol_degree_;
  double tail_bound_;
  bool symmetric_;
  Eigen::MatrixXcd gamma_;
};

/// Flatten an H^2 element into coefficient-index-major, component-minor
/// layout. Throws WindowExceeded if f carries mass outside [0, truncation].
Eigen::VectorXcd to_coeff_vector(const FourierVec& f, int truncation);

FourierVec from_coeff_vector(const Eigen::VectorXcd& coeffs, int dim);

/// H_U f = gamma * conj(coeff(f)).
FourierVec apply_H(const BlockHankelMatrix& h, const FourierVec& f);

/// The function path P_m(U conj(f)) via grid products; accepts any window.
FourierVec apply_H_function(const MatrixSymbol& u, const FourierVec& f);

/// H_U^2 f; requires a symmetric symbol.
FourierVec apply_Hsq(const BlockHankelMatrix& h, const FourierVec& f);

/// The Hermitian PSD matrix gamma * conj(gamma) realizing H_U^2.
Eigen::MatrixXcd hsq_matrix(const BlockHankelMatrix& h);

/// K_U f via H_U S (also computed as S* H_U and H_{S*U}; see
/// k_route_disagreement for the certified three-way agreement).
FourierVec apply_K(const BlockHankelMatrix& h, const BlockHankelMatrix& h_shifted,
                   const FourierVec& f);

/// Max pairwise distance between the three K_U realizations on f.
double k_route_disagreement(const BlockHankelMatrix& h,
                            const BlockHankelMatrix& h_shifted,
                            const FourierVec& f);

/// Operator norm of K^2 - (H^2 - sum_i <.,U_i> U_i) in coefficient space.
double rank_m_identity_residual(const BlockHankelMatrix& h,
                                const BlockHankelMatrix& h_shifted,
                                const std::vector<FourierVec>& columns);

/// The linear Hankel G_U f = gamma * coeff(f).
FourierVec apply_G(const BlockHankelMatrix& h, const FourierVec& f);

/// Schmidt pair (xi, eta) with H xi = s eta, H eta = s xi. Throws
/// NotAnEigenvector when ||H^2 xi - s^2 xi|| > tol * s^2.
std::pair<FourierVec, FourierVec> schmidt_pair(const BlockHankelMatrix& h,
                                               double s, const FourierVec& xi,
                                               double tol = 1e-9);

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& mat);

/// Everything the verification pipelines need about one symbol at one
/// truncation: gamma, the shifted gamma for K_U, and the symbol columns.
struct HankelFamily {
  MatrixSymbol symbol;
  BlockHankelMatrix gamma;
  BlockHankelMatrix gamma_shifted;
  std::vector<FourierVec> columns;

  static HankelFamily build(const MatrixSymbol& u, int truncation);
};

}  // namespace schmidt
