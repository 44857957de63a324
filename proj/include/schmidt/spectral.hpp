#pragma once

#include <vector>

#include "schmidt/hankel.hpp"

namespace schmidt {

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // orthonormal columns
};

/// Dense Hermitian eigendecomposition. Throws NotHermitian when
/// ||M - M*|| > 1e-12 ||M||.
EigenDecomposition hermitian_eig(const Eigen::MatrixXcd& mat);

///
/// Orthonormal columns in coefficient space for vec_dim components at a
/// fixed truncation; ambient() = (truncation+1) * vec_dim.
///
class SubspaceBasis {
 public:
  /// The zero subspace of the given ambient space.
  SubspaceBasis(int vec_dim, int ambient);
  /// Wrap columns that are already orthonormal.
  SubspaceBasis(Eigen::MatrixXcd q, int vec_dim);
  /// Orthonormalize a spanning set, discarding numerically dependent columns.
  static SubspaceBasis from_span(const Eigen::MatrixXcd& a, int vec_dim,
                                 double rank_tol = 1e-10);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(q_.cols()); }
  int vec_dim() const { return vec_dim_; }
  int truncation() const { return ambient_ / vec_dim_ - 1; }

  const Eigen::MatrixXcd& matrix() const { return q_; }
  FourierVec column_function(int k) const;

  /// Orthogonal projection of coefficient columns onto the subspace.
  Eigen::MatrixXcd project(const Eigen::MatrixXcd& v) const;

  /// Zero-pad to a larger truncation of the same vector dimension.
  SubspaceBasis padded(int new_truncation) const;

 private:
  int vec_dim_;
  int ambient_;
  Eigen::MatrixXcd q_;
};

struct SchmidtSubspace {
  double s = 0.0;
  int multiplicity = 0;
  double cluster_residual = 0.0;
  char operator_tag = 'H';
  SubspaceBasis basis;
};

struct ClusterOptions {
  double cluster_tol = 1e-8;  // relative to the largest s
  double s_floor = 1e-8;
};

struct SchmidtSpectrum {
  std::vector<SchmidtSubspace> clusters;  // sorted by s descending
  int dropped_dim = 0;                    // kernel-side eigenvalue count
  double s_floor_used = 0.0;
  double cluster_tol_used = 0.0;
};

/// Cluster the eigenvalues of a realized H^2 (or K^2) matrix into Schmidt
/// subspaces. Clustering happens on s = sqrt(lambda); the effective relative
/// tolerance is widened to cover the Weyl perturbation from tail_bound.
/// Throws AmbiguousClustering when two retained clusters are separated by
/// less than 3x the effective tolerance.
SchmidtSpectrum schmidt_subspaces(const Eigen::MatrixXcd& sq_matrix,
                                  int vec_dim, char operator_tag,
                                  const ClusterOptions& options,
                                  double tail_bound = 0.0);

struct SchmidtAnalysis {
  SchmidtSpectrum h;
  SchmidtSpectrum k;
};

/// Spectra of both H_U^2 and K_U^2 for a family; s_floor is raised to
/// max(options.s_floor, 2 * tail_bound).
SchmidtAnalysis analyze_family(const HankelFamily& family,
                               const ClusterOptions& options);

/// Principal angles in [0, pi/2], ascending, from the singular values of
/// A* B. Throws DimensionMismatch on ambient mismatch.
std::vector<double> principal_angles(const SubspaceBasis& a,
                                     const SubspaceBasis& b);

/// Equal dimensions and max principal angle <= tol.
bool subspaces_equal(const SubspaceBasis& a, const SubspaceBasis& b,
                     double tol);

/// {F in E : F(0) = 0}, the intersection with zH^2.
SubspaceBasis intersect_with_shifted(const SubspaceBasis& e);

/// E minus the intersection with zH^2; dimension <= vec_dim.
SubspaceBasis wandering_part(const SubspaceBasis& e);

/// {f in E : <f, v> = 0 for every v}.
SubspaceBasis orth_complement_within(const SubspaceBasis& e,
                                     const std::vector<FourierVec>& vectors);

/// Orthonormal basis of span(A) + span(B).
SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b);

/// Full orthogonal complement within the truncated H^2 window.
SubspaceBasis complement_in_window(const SubspaceBasis& e);

/// Singular values > rank_tol * sigma_max * max(rows, cols).
int numerical_rank(const Eigen::MatrixXcd& mat, double rank_tol = 1e-10);

}  // namespace schmidt
