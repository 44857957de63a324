#include "schmidt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace schmidt {

EigenDecomposition hermitian_eig(const Eigen::MatrixXcd& mat) {
  if (mat.rows() != mat.cols()) {
    throw NotHermitian("hermitian_eig: matrix is not square");
  }
  const double scale = mat.norm();
  const double asym = (mat - mat.adjoint()).norm();
  if (asym > 1e-12 * scale + 1e-300) {
    throw NotHermitian("hermitian_eig: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      ((mat + mat.adjoint()) * 0.5).eval());
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eig: eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// ---------------------------------------------------------------------------
// SubspaceBasis

SubspaceBasis::SubspaceBasis(int vec_dim, int ambient)
    : vec_dim_(vec_dim), ambient_(ambient) {
  q_ = Eigen::MatrixXcd::Zero(ambient, 0);
}

SubspaceBasis::SubspaceBasis(Eigen::MatrixXcd q, int vec_dim)
    : vec_dim_(vec_dim),
      ambient_(static_cast<int>(q.rows())),
      q_(std::move(q)) {
  if (ambient_ % vec_dim_ != 0) {
    throw DimensionMismatch("SubspaceBasis: ambient not a multiple of dim");
  }
}

SubspaceBasis SubspaceBasis::from_span(const Eigen::MatrixXcd& a, int vec_dim,
                                       double rank_tol) {
  if (a.cols() == 0) {
    return SubspaceBasis(vec_dim, static_cast<int>(a.rows()));
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double thresh =
      rank_tol * (sv.size() > 0 ? sv(0) : 0.0) *
      static_cast<double>(std::max(a.rows(), a.cols()));
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > thresh && sv(k) > 0.0) ++rank;
  }
  return SubspaceBasis(svd.matrixU().leftCols(rank).eval(), vec_dim);
}

FourierVec SubspaceBasis::column_function(int k) const {
  return from_coeff_vector(q_.col(k), vec_dim_);
}

Eigen::MatrixXcd SubspaceBasis::project(const Eigen::MatrixXcd& v) const {
  return q_ * (q_.adjoint() * v);
}

SubspaceBasis SubspaceBasis::padded(int new_truncation) const {
  const int new_ambient = (new_truncation + 1) * vec_dim_;
  if (new_ambient < ambient_) {
    throw WindowExceeded("SubspaceBasis::padded: smaller truncation");
  }
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(new_ambient, q_.cols());
  q.topRows(ambient_) = q_;
  return SubspaceBasis(std::move(q), vec_dim_);
}

// ---------------------------------------------------------------------------
// Clustering

SchmidtSpectrum schmidt_subspaces(const Eigen::MatrixXcd& sq_matrix,
                                  int vec_dim, char operator_tag,
                                  const ClusterOptions& options,
                                  double tail_bound) {
  const EigenDecomposition eig = hermitian_eig(sq_matrix);
  const int n = static_cast<int>(eig.values.size());
  std::vector<double> s(n);
  for (int k = 0; k < n; ++k) s[k] = std::sqrt(std::max(eig.values(k), 0.0));

  SchmidtSpectrum out;
  const double s_max = n > 0 ? *std::max_element(s.begin(), s.end()) : 0.0;
  const double s_floor = std::max(options.s_floor, 2.0 * tail_bound);
  out.s_floor_used = s_floor;
  if (s_max <= s_floor) {
    out.dropped_dim = n;
    out.cluster_tol_used = options.cluster_tol;
    return out;
  }
  // Weyl: truncating the symbol moves singular values by at most tail_bound.
  const double eff_tol =
      std::max(options.cluster_tol, 4.0 * tail_bound / s_max);
  out.cluster_tol_used = eff_tol;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return s[a] > s[b]; });

  std::vector<std::vector<int>> groups;
  for (int idx : order) {
    if (groups.empty() || s[groups.back().back()] - s[idx] > eff_tol * s_max) {
      groups.push_back({idx});
    } else {
      groups.back().push_back(idx);
    }
  }

  std::vector<std::vector<int>> retained;
  for (const auto& g : groups) {
    double mean = 0.0;
    for (int idx : g) mean += s[idx];
    mean /= static_cast<double>(g.size());
    if (mean > s_floor) {
      retained.push_back(g);
    } else {
      out.dropped_dim += static_cast<int>(g.size());
    }
  }

  for (std::size_t k = 0; k + 1 < retained.size(); ++k) {
    const double gap = s[retained[k].back()] - s[retained[k + 1].front()];
    if (gap < 3.0 * eff_tol * s_max) {
      throw AmbiguousClustering(
          "schmidt_subspaces: clusters separated by less than 3x tolerance");
    }
  }

  for (const auto& g : retained) {
    SchmidtSubspace cluster{0.0, static_cast<int>(g.size()), 0.0, operator_tag,
                            SubspaceBasis(vec_dim, n)};
    double mean = 0.0;
    for (int idx : g) mean += s[idx];
    cluster.s = mean / static_cast<double>(g.size());
    Eigen::MatrixXcd q(n, g.size());
    for (std::size_t c = 0; c < g.size(); ++c) q.col(c) = eig.vectors.col(g[c]);
    cluster.basis = SubspaceBasis(std::move(q), vec_dim);
    for (int idx : g) {
      cluster.cluster_residual =
          std::max(cluster.cluster_residual,
                   std::abs(eig.values(idx) - cluster.s * cluster.s));
    }
    out.clusters.push_back(std::move(cluster));
  }
  return out;
}

SchmidtAnalysis analyze_family(const HankelFamily& family,
                               const ClusterOptions& options) {
  const double tail = family.symbol.tail_bound();
  SchmidtAnalysis out{
      schmidt_subspaces(hsq_matrix(family.gamma), family.symbol.dim(), 'H',
                        options, tail),
      schmidt_subspaces(
          family.gamma_shifted.gamma() * family.gamma_shifted.gamma().conjugate(),
          family.symbol.dim(), 'K', options, tail)};
  return out;
}

// ---------------------------------------------------------------------------
// Subspace toolkit

namespace {

// Rank against an external scale: a matrix whose largest singular value is
// far below the scale of its inputs is noise, not rank.
int rank_against_scale(const Eigen::MatrixXcd& mat, double rank_tol,
                       double scale) {
  if (mat.rows() == 0 || mat.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double thresh =
      rank_tol * std::max(sv(0), scale) *
      static_cast<double>(std::max(mat.rows(), mat.cols()));
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > thresh && sv(k) > 0.0) ++rank;
  }
  return rank;
}

}  // namespace

std::vector<double> principal_angles(const SubspaceBasis& a,
                                     const SubspaceBasis& b) {
  if (a.ambient() != b.ambient()) {
    throw DimensionMismatch("principal_angles: ambient mismatch");
  }
  if (a.dim() == 0 || b.dim() == 0) return {};
  const Eigen::MatrixXcd cross = a.matrix().adjoint() * b.matrix();
  Eigen::JacobiSVD<Eigen::MatrixXcd> cos_svd(cross);
  // Sines from the residual of B against A; acos alone loses half the
  // digits for near-zero angles.
  Eigen::JacobiSVD<Eigen::MatrixXcd> sin_svd(
      (b.matrix() - a.matrix() * cross).eval());
  const auto& cosines = cos_svd.singularValues();  // descending
  Eigen::VectorXd sines = sin_svd.singularValues();
  const int count = static_cast<int>(cosines.size());
  std::sort(sines.data(), sines.data() + sines.size());  // ascending
  std::vector<double> angles(count);
  for (int k = 0; k < count; ++k) {
    const double c = std::clamp(cosines(k), 0.0, 1.0);
    if (c * c > 0.5 && k < sines.size()) {
      angles[k] = std::asin(std::clamp(sines(k), 0.0, 1.0));
    } else {
      angles[k] = std::acos(c);
    }
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

bool subspaces_equal(const SubspaceBasis& a, const SubspaceBasis& b,
                     double tol) {
  if (a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;
  const auto angles = principal_angles(a, b);
  return angles.back() <= tol;
}

SubspaceBasis intersect_with_shifted(const SubspaceBasis& e) {
  if (e.dim() == 0) return e;
  const int m = e.vec_dim();
  Eigen::MatrixXcd eval(m, e.dim());
  for (int k = 0; k < e.dim(); ++k) eval.col(k) = e.matrix().block(0, k, m, 1);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(eval, Eigen::ComputeFullV);
  const int rank = rank_against_scale(eval, 1e-10, 1.0);
  return SubspaceBasis(
      (e.matrix() * svd.matrixV().rightCols(e.dim() - rank)).eval(),
      e.vec_dim());
}

SubspaceBasis wandering_part(const SubspaceBasis& e) {
  if (e.dim() == 0) return e;
  const int m = e.vec_dim();
  Eigen::MatrixXcd eval(m, e.dim());
  for (int k = 0; k < e.dim(); ++k) eval.col(k) = e.matrix().block(0, k, m, 1);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(eval, Eigen::ComputeFullV);
  const int rank = rank_against_scale(eval, 1e-10, 1.0);
  return SubspaceBasis((e.matrix() * svd.matrixV().leftCols(rank)).eval(),
                       e.vec_dim());
}

SubspaceBasis orth_complement_within(const SubspaceBasis& e,
                                     const std::vector<FourierVec>& vectors) {
  if (e.dim() == 0 || vectors.empty()) return e;
  Eigen::MatrixXcd t(vectors.size(), e.dim());
  double scale = 0.0;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    const Eigen::VectorXcd v = to_coeff_vector(vectors[j], e.truncation());
    scale = std::max(scale, v.norm());
    t.row(j) = v.adjoint() * e.matrix();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t, Eigen::ComputeFullV);
  const int rank = rank_against_scale(t, 1e-10, scale);
  return SubspaceBasis(
      (e.matrix() * svd.matrixV().rightCols(e.dim() - rank)).eval(),
      e.vec_dim());
}

SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient() != b.ambient()) {
    throw DimensionMismatch("subspace_sum: ambient mismatch");
  }
  Eigen::MatrixXcd joint(a.ambient(), a.dim() + b.dim());
  joint.leftCols(a.dim()) = a.matrix();
  joint.rightCols(b.dim()) = b.matrix();
  return SubspaceBasis::from_span(joint, a.vec_dim());
}

SubspaceBasis complement_in_window(const SubspaceBasis& e) {
  if (e.dim() == 0) {
    return SubspaceBasis(
        Eigen::MatrixXcd::Identity(e.ambient(), e.ambient()).eval(),
        e.vec_dim());
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(e.matrix());
  Eigen::MatrixXcd full =
      qr.householderQ() * Eigen::MatrixXcd::Identity(e.ambient(), e.ambient());
  return SubspaceBasis(full.rightCols(e.ambient() - e.dim()).eval(),
                       e.vec_dim());
}

int numerical_rank(const Eigen::MatrixXcd& mat, double rank_tol) {
  if (mat.rows() == 0 || mat.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double thresh = rank_tol * sv(0) *
                        static_cast<double>(std::max(mat.rows(), mat.cols()));
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > thresh && sv(k) > 0.0) ++rank;
  }
  return rank;
}

}  // namespace schmidt
