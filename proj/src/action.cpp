#include "schmidt/action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace schmidt {

namespace {

MatrixFourier hankel_images(const HankelFamily& family,
                            const WanderingData& wandering) {
  std::vector<FourierVec> images;
  for (int k = 0; k < wandering.f0.cols(); ++k) {
    images.push_back(apply_H(family.gamma, wandering.f0.column(k)));
  }
  return MatrixFourier::from_columns(images);
}

// Drop trailing coefficient blocks that carry no mass.
MatrixFourier trim_analytic(const MatrixFourier& a, double rel_tol) {
  double scale = 0.0;
  for (int k = 0; k <= a.pos(); ++k) {
    scale = std::max(scale, a.block(k).norm());
  }
  int degree = 0;
  for (int k = 0; k <= a.pos(); ++k) {
    if (a.block(k).norm() > rel_tol * scale) degree = k;
  }
  MatrixFourier out(a.rows(), a.cols(), 0, degree);
  for (int k = 0; k <= degree; ++k) out.set_block(k, a.block(k));
  return out;
}

double grid_innerness(const MatrixFourier& theta) {
  const int r = theta.cols();
  const int grid = default_grid_size(theta.pos() + 1);
  const auto nodes = to_grid(theta, grid);
  double worst = 0.0;
  for (const auto& node : nodes) {
    worst = std::max(worst,
                     operator_norm(node.adjoint() * node -
                                   Eigen::MatrixXcd::Identity(r, r)));
  }
  return worst;
}

// Zero the top two coefficient blocks; boundary effects of the window are
// not evidence against the theorems.
Eigen::VectorXcd mask_boundary(Eigen::VectorXcd v, int vec_dim) {
  const int blocks = static_cast<int>(v.size()) / vec_dim;
  for (int j = std::max(0, blocks - 2); j < blocks; ++j) {
    v.segment(j * vec_dim, vec_dim).setZero();
  }
  return v;
}

}  // namespace

double projection_identity_check(const HankelFamily& family,
                                 const SubspaceBasis& e,
                                 const WanderingData& wandering, double s) {
  (void)s;
  const int m = family.symbol.dim();
  const int n = e.truncation();
  Eigen::MatrixXcd projected(e.ambient(), m);
  for (int i = 0; i < m; ++i) {
    projected.col(i) = e.project(to_coeff_vector(family.columns[i], n));
  }
  const MatrixFourier hw = hankel_images(family, wandering);
  Eigen::MatrixXcd combo(e.ambient(), m);
  const Eigen::MatrixXcd w0t = wandering.w_at_zero.transpose();
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(e.ambient());
    for (int j = 0; j < m; ++j) {
      acc += w0t(j, i) * to_coeff_vector(hw.column(j), n);
    }
    combo.col(i) = acc;
  }
  return operator_norm(projected - combo);
}

ThetaExtraction extract_theta_tilde(const HankelFamily& family,
                                    const WanderingData& wandering, double s,
                                    const ActionOptions& options) {
  const int m = family.symbol.dim();
  const int n = family.gamma.truncation();
  const MatrixFourier hw = hankel_images(family, wandering);

  const int grid = std::max(default_grid_size(2 * (n + 1)),
                            next_pow2(options.structure.grid_min));
  const auto f0_nodes = to_grid(wandering.f0, grid);
  const auto hw_nodes = to_grid(hw, grid);

  ThetaExtraction out;
  out.min_f0_singular = std::numeric_limits<double>::infinity();
  std::vector<Eigen::MatrixXcd> m_nodes(grid);
  for (int t = 0; t < grid; ++t) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f0_nodes[t]);
    out.min_f0_singular =
        std::min(out.min_f0_singular, svd.singularValues().minCoeff());
    if (out.min_f0_singular < options.grid_floor) {
      throw GridSingularity(
          "extract_theta_tilde: F0 is near-singular on the grid");
    }
    m_nodes[t] = f0_nodes[t].fullPivLu().solve(hw_nodes[t]) / s;
  }

  const MatrixFourier m_fun =
      matrix_from_grid(m_nodes, grid / 2, grid / 2 - 1);
  out.analyticity_residual = m_fun.negative_mass();
  out.theta = trim_analytic(shift(analytic_project(m_fun)), 1e-13);
  out.innerness_residual = grid_innerness(out.theta);
  return out;
}

ModelSpacePair model_space_basis(const MatrixFourier& theta, int truncation,
                                 double rank_tol) {
  const int m = theta.rows();
  const int ambient = (truncation + 1) * m;
  // All windowed shifts z^j theta e_i. Columns that overflow the window are
  // truncated; their windowed parts still annihilate genuine K_theta
  // members, and the rank filter drops anything that vanishes.
  std::vector<Eigen::VectorXcd> cols;
  for (int i = 0; i < theta.cols(); ++i) {
    FourierVec col = theta.column(i);
    for (int j = 0; j <= truncation; ++j) {
      if (j > 0) col = shift(col);
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(ambient);
      for (int idx = 0; idx <= truncation; ++idx) {
        v.segment(idx * m, m) = col.coeff_block(idx);
      }
      if (v.norm() > 0.0) cols.push_back(std::move(v));
    }
  }
  Eigen::MatrixXcd mat(ambient, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) mat.col(k) = cols[k];
  ModelSpacePair pair{SubspaceBasis::from_span(mat, m, rank_tol),
                      SubspaceBasis(m, ambient)};
  pair.k_theta = complement_in_window(pair.theta_shifts);
  return pair;
}

ActionResiduals verify_action(const HankelFamily& family,
                              const SubspaceBasis& e, double s,
                              const WanderingData& wandering,
                              const MatrixFourier& theta,
                              const ActionOptions& options) {
  const int n = family.gamma.truncation();
  ActionResiduals out;
  const ModelSpacePair model =
      model_space_basis(theta, n, options.model_span_tol);
  const MatrixFourier f0_stheta = multiply(wandering.f0, backshift(theta));

  for (int k = 0; k < model.k_theta.dim(); ++k) {
    const FourierVec g = model.k_theta.column_function(k);
    const FourierVec lhs =
        apply_H_function(family.symbol, multiply(wandering.f0, g));
    const FourierVec rhs = analytic_project(
        Complex(s, 0.0) * multiply(f0_stheta, conjugate_boundary(g)));
    out.action_residual = std::max(out.action_residual, distance(lhs, rhs));
  }

  // Reverse direction: every Schmidt vector factors as F0 G with G in the
  // model space and |G| = |F|.
  const int grid = std::max(default_grid_size(2 * (n + 1)),
                            next_pow2(options.structure.grid_min));
  const auto f0_nodes = to_grid(wandering.f0, grid);
  for (int k = 0; k < e.dim(); ++k) {
    const FourierVec f = e.column_function(k);
    const GridSamples f_nodes = to_grid(f, grid);
    GridSamples g_nodes(e.vec_dim(), grid);
    for (int t = 0; t < grid; ++t) {
      g_nodes.values().col(t) =
          f0_nodes[t].fullPivLu().solve(f_nodes.values().col(t));
    }
    const FourierVec g = from_grid(g_nodes, grid / 2, grid / 2 - 1);
    const FourierVec g_plus = analytic_project(g);
    out.isometry_residual =
        std::max(out.isometry_residual, std::abs(g_plus.norm() - f.norm()));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(e.ambient());
    for (int idx = 0; idx <= n; ++idx) {
      v.segment(idx * e.vec_dim(), e.vec_dim()) = g_plus.coeff_block(idx);
    }
    const Eigen::VectorXcd defect =
        mask_boundary(v - model.k_theta.project(v), e.vec_dim());
    out.model_membership_residual =
        std::max(out.model_membership_residual,
                 std::max(g.negative_mass(), defect.norm()));
  }
  return out;
}

SymmetryChecks symmetry_checks(const HankelFamily& family,
                               const WanderingData& wandering,
                               const MatrixFourier& theta, double s,
                               const ActionOptions& options) {
  SymmetryChecks out;
  const Eigen::MatrixXcd b1 = theta.block(1);
  out.at_zero_residual = operator_norm(b1 - b1.transpose());

  for (int k = 0; k <= theta.pos(); ++k) {
    out.full_symmetry_defect =
        std::max(out.full_symmetry_defect,
                 (theta.block(k) - theta.block(k).transpose()).norm());
  }
  out.full_symmetry = out.full_symmetry_defect <= options.structure.subspace_tol;
  if (!out.full_symmetry) return out;

  const int n = family.gamma.truncation();
  const ModelSpacePair model =
      model_space_basis(theta, n, options.model_span_tol);
  const MatrixFourier s_theta = backshift(theta);
  const MatrixFourier f0_stheta = multiply(wandering.f0, s_theta);
  for (int k = 0; k < model.k_theta.dim(); ++k) {
    const FourierVec g = model.k_theta.column_function(k);
    const FourierVec lhs =
        apply_H_function(family.symbol, multiply(wandering.f0, g));
    // No analytic projection: the product must already be analytic.
    const FourierVec rhs =
        Complex(s, 0.0) * multiply(f0_stheta, conjugate_boundary(g));
    out.simplified_action_residual =
        std::max(out.simplified_action_residual, distance(lhs, rhs));

    const FourierVec v = multiply(s_theta, conjugate_boundary(g));
    const FourierVec v_plus = analytic_project(v);
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(model.k_theta.ambient());
    for (int idx = 0; idx <= n; ++idx) {
      coeffs.segment(idx * theta.rows(), theta.rows()) =
          v_plus.coeff_block(idx);
    }
    const double in_theta_h2 =
        mask_boundary(model.theta_shifts.project(coeffs), theta.rows()).norm();
    out.lemma_41_residual =
        std::max(out.lemma_41_residual,
                 std::max(v.negative_mass(), in_theta_h2));
  }
  return out;
}

CheckResult lemma_ktheta_check(const MatrixFourier& theta, int truncation,
                               const ActionOptions& options) {
  const double innerness = grid_innerness(theta);
  if (innerness > std::max(options.structure.subspace_tol, 1e-6)) {
    throw NotInner("lemma_ktheta_check: theta is not inner on the grid");
  }
  const int m = theta.rows();
  const ModelSpacePair model =
      model_space_basis(theta, truncation, options.model_span_tol);

  const SubspaceBasis vanishing = intersect_with_shifted(model.k_theta);
  Eigen::MatrixXcd shifted(model.k_theta.ambient(), vanishing.dim());
  for (int k = 0; k < vanishing.dim(); ++k) {
    shifted.col(k) =
        to_coeff_vector(backshift(vanishing.column_function(k)), truncation);
  }
  const SubspaceBasis lhs =
      SubspaceBasis::from_span(shifted, m, options.structure.rank_tol);

  std::vector<FourierVec> s_theta_cols;
  for (int i = 0; i < theta.cols(); ++i) {
    const FourierVec col = backshift(theta).column(i);
    // Only the in-window blocks act on window-supported elements.
    FourierVec windowed(theta.rows(), 0, truncation);
    for (int j = 0; j <= truncation; ++j) {
      windowed.set_coeff_block(j, col.coeff_block(j));
    }
    s_theta_cols.push_back(std::move(windowed));
  }
  const SubspaceBasis rhs =
      orth_complement_within(model.k_theta, s_theta_cols);

  CheckResult c;
  c.name = "lemma-4.2";
  c.tolerance = options.structure.subspace_tol;
  if (lhs.dim() != rhs.dim()) {
    c.residual = std::numbers::pi / 2.0;
    c.pass = false;
    c.note = "dimension mismatch " + std::to_string(lhs.dim()) + " vs " +
             std::to_string(rhs.dim());
    return c;
  }
  const auto angles = principal_angles(lhs, rhs);
  c.residual = angles.empty() ? 0.0 : angles.back();
  c.pass = c.residual <= c.tolerance;
  return c;
}

ActionReport run_action_suite(const HankelFamily& family,
                              const SubspaceBasis& e_h,
                              const SubspaceBasis& e_k, double s,
                              const ActionOptions& options) {
  const int m = family.symbol.dim();
  ActionReport report(m);
  report.s = s;

  const WanderingData wandering =
      full_wandering_check(e_h, e_k, family.columns, options.structure);
  report.wandering_dim = wandering.wandering.dim();
  if (wandering.verdict == Verdict::NotApplicable) {
    report.verdict = Verdict::NotApplicable;
    return report;
  }
  for (const auto& c : wandering.checks) report.checks.push_back(c);
  if (wandering.verdict == Verdict::Inconclusive) {
    report.verdict = Verdict::Inconclusive;
    return report;
  }

  report.checks.push_back(
      make_check("projection-identity",
                 projection_identity_check(family, e_h, wandering, s),
                 options.structure.subspace_tol));

  ThetaExtraction extraction;
  try {
    extraction = extract_theta_tilde(family, wandering, s, options);
  } catch (const GridSingularity&) {
    CheckResult c;
    c.name = "f0-grid-invertible";
    c.residual = 0.0;
    c.tolerance = options.grid_floor;
    c.pass = false;
    c.note = "F0 near-singular on the grid; extraction aborted";
    report.checks.push_back(c);
    report.verdict = Verdict::Inconclusive;
    return report;
  }
  report.theta_tilde = extraction.theta;
  report.analyticity_residual = extraction.analyticity_residual;
  report.innerness_residual = extraction.innerness_residual;
  report.min_f0_singular = extraction.min_f0_singular;
  report.checks.push_back(make_check("theta-analytic",
                                     extraction.analyticity_residual,
                                     options.structure.subspace_tol));
  report.checks.push_back(make_check("theta-inner",
                                     extraction.innerness_residual,
                                     options.structure.subspace_tol));
  report.checks.push_back(
      make_check("theta-vanishes-at-zero",
                 extraction.theta.block(0).norm(), 0.0));

  const ActionResiduals residuals =
      verify_action(family, e_h, s, wandering, extraction.theta, options);
  report.action_residual = residuals.action_residual;
  report.model_membership_residual = residuals.model_membership_residual;
  report.checks.push_back(make_check("action-formula",
                                     residuals.action_residual,
                                     options.structure.subspace_tol));
  report.checks.push_back(make_check("model-membership",
                                     residuals.model_membership_residual,
                                     options.structure.subspace_tol));
  report.checks.push_back(make_check("multiplier-isometric",
                                     residuals.isometry_residual,
                                     options.structure.subspace_tol));

  const SymmetryChecks sym =
      symmetry_checks(family, wandering, extraction.theta, s, options);
  report.symmetry_at_zero_residual = sym.at_zero_residual;
  report.full_symmetry = sym.full_symmetry;
  report.simplified_action_residual = sym.simplified_action_residual;
  report.checks.push_back(make_check("theta-symmetric-at-zero",
                                     sym.at_zero_residual,
                                     options.at_zero_tol));
  if (sym.full_symmetry) {
    report.checks.push_back(make_check("action-simplified",
                                       sym.simplified_action_residual,
                                       options.structure.subspace_tol));
    report.checks.push_back(make_check("lemma-4.1", sym.lemma_41_residual,
                                       options.structure.subspace_tol));
  }

  report.checks.push_back(lemma_ktheta_check(
      extraction.theta, family.gamma.truncation(), options));

  report.verdict = aggregate_checks(report.checks);
  return report;
}

}  // namespace schmidt
