#include "schmidt/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SVD>

namespace schmidt {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::NotApplicable:
      return "not-applicable";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

CheckResult make_check(std::string name, double residual, double tolerance) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = residual <= tolerance;
  return c;
}

Verdict aggregate_checks(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return Verdict::Fail;
  }
  return Verdict::Pass;
}

namespace {

Eigen::MatrixXcd backshift_columns(const SubspaceBasis& basis) {
  Eigen::MatrixXcd out(basis.ambient(), basis.dim());
  for (int k = 0; k < basis.dim(); ++k) {
    out.col(k) = to_coeff_vector(backshift(basis.column_function(k)),
                                 basis.truncation());
  }
  return out;
}

}  // namespace

CheckResult lemma_24_check(const SubspaceBasis& e_h, const SubspaceBasis& e_k,
                           const std::vector<FourierVec>& columns,
                           double tol) {
  const SubspaceBasis lhs = orth_complement_within(e_h, columns);
  const SubspaceBasis rhs = orth_complement_within(e_k, columns);
  CheckResult c;
  c.name = "lemma-2.4";
  c.tolerance = tol;
  if (lhs.dim() != rhs.dim()) {
    c.residual = std::numbers::pi / 2.0;
    c.pass = false;
    c.note = "dimension mismatch " + std::to_string(lhs.dim()) + " vs " +
             std::to_string(rhs.dim());
    return c;
  }
  const auto angles = principal_angles(lhs, rhs);
  c.residual = angles.empty() ? 0.0 : angles.back();
  c.pass = c.residual <= tol;
  return c;
}

StructureReport near_invariance_report(const SubspaceBasis& e_h,
                                       const SubspaceBasis& e_k,
                                       const std::vector<FourierVec>& columns,
                                       const StructureOptions& options) {
  const int m = e_h.vec_dim();
  StructureReport report;
  report.dim_e = e_h.dim();
  report.dim_ek = e_k.dim();
  report.wandering_dim = wandering_part(e_h).dim();

  // V = span{P_EK(U_i)}, the generator set bounding the defect space.
  Eigen::MatrixXcd projected(e_h.ambient(), m);
  for (int i = 0; i < m; ++i) {
    projected.col(i) =
        e_k.project(to_coeff_vector(columns[i], e_h.truncation()));
  }
  const SubspaceBasis v_space =
      SubspaceBasis::from_span(projected, m, options.rank_tol);
  report.defect_space_dim = v_space.dim();

  const SubspaceBasis z_part = intersect_with_shifted(e_h);
  if (z_part.dim() == 0) {
    report.defect = 0;
    report.checks.push_back(make_check("defect-bound", 0.0, double(m)));
    report.checks.push_back(
        make_check("inclusion-3.1", 0.0, options.subspace_tol));
    report.checks.push_back(
        make_check("inclusion-final", 0.0, options.subspace_tol));
    report.verdict = aggregate_checks(report.checks);
    return report;
  }

  const Eigen::MatrixXcd shifted = backshift_columns(z_part);
  const Eigen::MatrixXcd outside = shifted - e_h.project(shifted);
  // The columns of `shifted` have norm <= 1; a residual matrix whose largest
  // singular value sits at rounding level is a zero defect, not rank.
  Eigen::JacobiSVD<Eigen::MatrixXcd> outside_svd(outside);
  report.defect = 0;
  const double defect_thresh =
      options.rank_tol *
      static_cast<double>(std::max(outside.rows(), outside.cols()));
  for (Eigen::Index k = 0; k < outside_svd.singularValues().size(); ++k) {
    if (outside_svd.singularValues()(k) > defect_thresh) ++report.defect;
  }
  report.checks.push_back(
      make_check("defect-bound", std::max(0, report.defect - m), 0.0));

  report.checks.push_back(
      make_check("inclusion-3.1",
                 operator_norm(shifted - e_k.project(shifted)),
                 options.subspace_tol));

  const SubspaceBasis target =
      subspace_sum(orth_complement_within(e_h, columns), v_space);
  report.checks.push_back(
      make_check("inclusion-final",
                 operator_norm(shifted - target.project(shifted)),
                 options.subspace_tol));

  report.verdict = aggregate_checks(report.checks);
  return report;
}

WanderingData full_wandering_check(const SubspaceBasis& e_h,
                                   const SubspaceBasis& e_k,
                                   const std::vector<FourierVec>& columns,
                                   const StructureOptions& options) {
  const int m = e_h.vec_dim();
  WanderingData data(m, e_h.ambient());
  data.wandering = wandering_part(e_h);
  if (data.wandering.dim() < m) {
    data.verdict = Verdict::NotApplicable;
    return data;
  }

  const StructureReport near =
      near_invariance_report(e_h, e_k, columns, options);
  data.checks.push_back(make_check("defect-zero", double(near.defect), 0.0));

  double overlap = 0.0;
  for (int k = 0; k < e_k.dim(); ++k) {
    for (const FourierVec& u : columns) {
      overlap = std::max(overlap,
                         std::abs(inner_product(e_k.column_function(k), u)));
    }
  }
  data.checks.push_back(
      make_check("ek-perp-columns", overlap, options.subspace_tol));

  std::vector<FourierVec> w_cols;
  for (int k = 0; k < m; ++k) {
    w_cols.push_back(data.wandering.column_function(k));
  }
  data.f0 = MatrixFourier::from_columns(w_cols);
  data.w_at_zero = data.f0.block(0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(data.w_at_zero);
  const double smin = svd.singularValues().minCoeff();
  data.cond_w0 = smin > 0.0
                     ? svd.singularValues().maxCoeff() / smin
                     : std::numeric_limits<double>::infinity();

  CheckResult cond_check;
  cond_check.name = "w0-invertible";
  cond_check.residual = data.cond_w0;
  cond_check.tolerance = options.cond_limit;
  cond_check.pass = data.cond_w0 <= options.cond_limit;
  data.checks.push_back(cond_check);

  data.verdict = aggregate_checks(data.checks);
  if (!cond_check.pass) data.verdict = Verdict::Inconclusive;
  return data;
}

// ---------------------------------------------------------------------------
// Scalar structure (the hK_theta form)

namespace {

ScalarStructureResult scalar_structure_impl(const SubspaceBasis& e, double s,
                                            const StructureOptions& options,
                                            int depth) {
  ScalarStructureResult result(1, e.ambient());
  const int n = e.truncation();

  if (e.dim() == 0) {
    result.verdict = Verdict::NotApplicable;
    return result;
  }
  if (depth > n) {
    CheckResult c;
    c.name = "case2-depth";
    c.residual = double(depth);
    c.tolerance = double(n);
    c.pass = false;
    c.note = "recursion exceeded the truncation bound";
    result.checks.push_back(c);
    result.verdict = Verdict::Fail;
    return result;
  }

  const SubspaceBasis wand = wandering_part(e);
  if (wand.dim() == 0) {
    // Case II: E inside zH^2. Basis vectors must vanish at 0; recurse on
    // S*E and restore the z factor afterwards.
    double at_zero = 0.0;
    for (int k = 0; k < e.dim(); ++k) {
      at_zero =
          std::max(at_zero, value_at_zero(e.column_function(k)).norm());
    }
    result.checks.push_back(
        make_check("case2-vanishing", at_zero, options.subspace_tol));
    const SubspaceBasis shifted =
        SubspaceBasis::from_span(backshift_columns(e), 1, options.rank_tol);
    ScalarStructureResult inner =
        scalar_structure_impl(shifted, s, options, depth + 1);
    result.h = shift(inner.h);
    result.model_space = inner.model_space;
    result.case_two_depth = inner.case_two_depth + 1;
    for (auto& c : inner.checks) result.checks.push_back(std::move(c));
    result.verdict = inner.verdict == Verdict::Pass
                         ? aggregate_checks(result.checks)
                         : inner.verdict;
    return result;
  }

  // Case I: h is the unit-norm wandering vector; divide it out on the grid.
  result.h = wand.column_function(0);
  const int grid = std::max(default_grid_size(2 * (n + 1)),
                            next_pow2(options.grid_min));
  const GridSamples h_grid = to_grid(result.h, grid);
  double h_min = std::numeric_limits<double>::infinity();
  for (int t = 0; t < grid; ++t) {
    h_min = std::min(h_min, std::abs(h_grid.values()(0, t)));
  }
  if (h_min < 1e-8) {
    CheckResult c;
    c.name = "h-nonvanishing-on-grid";
    c.residual = h_min;
    c.tolerance = 1e-8;
    c.pass = false;
    c.note = "h nearly vanishes on the circle; division unreliable";
    result.checks.push_back(c);
    result.verdict = Verdict::Inconclusive;
    return result;
  }

  const int read_neg = grid / 2;
  const int read_pos = grid / 2 - 1;
  double analyticity = 0.0;
  double isometry = 0.0;
  std::vector<FourierVec> quotients;
  for (int k = 0; k < e.dim(); ++k) {
    const FourierVec f = e.column_function(k);
    const GridSamples f_grid = to_grid(f, grid);
    GridSamples ratio(1, grid);
    for (int t = 0; t < grid; ++t) {
      ratio.values()(0, t) = f_grid.values()(0, t) / h_grid.values()(0, t);
    }
    const FourierVec g = from_grid(ratio, read_neg, read_pos);
    analyticity = std::max(analyticity, g.negative_mass());
    const FourierVec g_plus = analytic_project(g);
    isometry = std::max(isometry, std::abs(g_plus.norm() - f.norm()));
    quotients.push_back(g_plus);
  }
  result.checks.push_back(
      make_check("quotient-analytic", analyticity, options.subspace_tol));
  result.checks.push_back(
      make_check("multiplier-isometric", isometry, options.subspace_tol));

  Eigen::MatrixXcd cols(read_pos + 1, e.dim());
  for (int k = 0; k < e.dim(); ++k) {
    cols.col(k) = to_coeff_vector(quotients[k], read_pos);
  }
  result.model_space = SubspaceBasis::from_span(cols, 1, options.rank_tol);

  double invariance = 0.0;
  for (int k = 0; k < result.model_space.dim(); ++k) {
    const Eigen::VectorXcd v = to_coeff_vector(
        backshift(result.model_space.column_function(k)), read_pos);
    invariance =
        std::max(invariance, (v - result.model_space.project(v)).norm());
  }
  result.checks.push_back(make_check("model-space-backshift-invariant",
                                     invariance, options.subspace_tol));

  (void)s;
  result.verdict = aggregate_checks(result.checks);
  return result;
}

}  // namespace

ScalarStructureResult scalar_structure(const SubspaceBasis& e, double s,
                                       const StructureOptions& options) {
  if (e.vec_dim() != 1) {
    throw DimensionMismatch("scalar_structure: requires m = 1");
  }
  return scalar_structure_impl(e, s, options, 0);
}

// ---------------------------------------------------------------------------
// Beurling data extraction

BeurlingData beurling_extract(const SubspaceBasis& eprime,
                              const StructureOptions& options) {
  const int m = eprime.vec_dim();
  const int n = eprime.truncation();
  BeurlingData data(m);

  double invariance = 0.0;
  for (int k = 0; k < eprime.dim(); ++k) {
    const Eigen::VectorXcd v =
        to_coeff_vector(backshift(eprime.column_function(k)), n);
    invariance = std::max(invariance, (v - eprime.project(v)).norm());
  }
  if (invariance > options.subspace_tol) {
    throw NotInvariant("beurling_extract: input is not S*-invariant");
  }

  if (eprime.dim() == 0) {
    data.degenerate = true;
    data.phi = MatrixFourier::identity(m);
    data.checks.push_back(make_check("degenerate-input", 0.0, 0.0));
    data.verdict = aggregate_checks(data.checks);
    return data;
  }

  const SubspaceBasis complement = complement_in_window(eprime);
  if (complement.dim() == 0) {
    // E' is the whole window; the inner factor is empty (r' = 0).
    data.phi = MatrixFourier(m, m, 0, 0);
    data.checks.push_back(make_check("full-window-input", 0.0, 0.0));
    data.verdict = aggregate_checks(data.checks);
    return data;
  }

  // Wandering columns of the complement: C minus the truncated shift of C.
  Eigen::MatrixXcd shifted_mat(eprime.ambient(), complement.dim());
  for (int k = 0; k < complement.dim(); ++k) {
    const FourierVec sc = shift(complement.column_function(k));
    FourierVec windowed(m, 0, n);
    for (int j = 0; j <= n; ++j) windowed.set_coeff_block(j, sc.coeff_block(j));
    shifted_mat.col(k) = to_coeff_vector(windowed, n);
  }
  const SubspaceBasis shifted_span =
      SubspaceBasis::from_span(shifted_mat, m, options.rank_tol);
  std::vector<FourierVec> shifted_fns;
  for (int k = 0; k < shifted_span.dim(); ++k) {
    shifted_fns.push_back(shifted_span.column_function(k));
  }
  const SubspaceBasis wandering =
      orth_complement_within(complement, shifted_fns);

  if (wandering.dim() == 0) {
    data.phi = MatrixFourier(m, m, 0, 0);
    data.checks.push_back(make_check("empty-wandering", 0.0, 0.0));
    data.verdict = aggregate_checks(data.checks);
    return data;
  }
  std::vector<FourierVec> phi_cols;
  for (int k = 0; k < wandering.dim(); ++k) {
    phi_cols.push_back(wandering.column_function(k));
  }
  data.phi = MatrixFourier::from_columns(phi_cols);

  const int r_prime = data.phi.cols();
  const int grid = default_grid_size(n + 1);
  const auto nodes = to_grid(data.phi, grid);
  double innerness = 0.0;
  for (const auto& node : nodes) {
    innerness = std::max(
        innerness,
        operator_norm(node.adjoint() * node -
                      Eigen::MatrixXcd::Identity(r_prime, r_prime)));
  }
  data.checks.push_back(
      make_check("phi-inner-on-grid", innerness, options.subspace_tol));

  // Containment: phi z^k e_j stays orthogonal to E', boundary blocks masked.
  double containment = 0.0;
  for (int j = 0; j < r_prime; ++j) {
    FourierVec col = data.phi.column(j);
    for (int k = 0; k + 2 <= n; ++k) {
      if (k > 0) col = shift(col);
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(eprime.ambient());
      for (int idx = 0; idx <= n - 2; ++idx) {
        v.segment(idx * m, m) = col.coeff_block(idx);
      }
      containment = std::max(containment, eprime.project(v).norm());
    }
  }
  data.checks.push_back(
      make_check("phi-shifts-orthogonal", containment, options.subspace_tol));

  data.verdict = aggregate_checks(data.checks);
  return data;
}

}  // namespace schmidt
