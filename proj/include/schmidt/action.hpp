#pragma once

#include "schmidt/structure.hpp"

namespace schmidt {

struct ActionOptions {
  StructureOptions structure;
  double at_zero_tol = 1e-10;
  double grid_floor = 1e-8;
  // Rank cut for the windowed theta-shift span; raised above the symbol
  // tail so truncation junk is not counted as a constraint direction.
  double model_span_tol = 1e-10;
};

/// Residual of the projection identity tying P_E(U_i) to the H_U images of
/// the wandering basis through W(0).
double projection_identity_check(const HankelFamily& family,
                                 const SubspaceBasis& e,
                                 const WanderingData& wandering, double s);

/// Theta-tilde = Theta A extracted from the Schmidt data (never separated:
/// only the product enters the action formula).
struct ThetaExtraction {
  MatrixFourier theta{1, 1, 0, 0};  // analytic, theta(0) = 0 by construction
  double analyticity_residual = 0.0;
  double innerness_residual = 0.0;
  double min_f0_singular = 0.0;
};

/// Pointwise M = (1/s) F0^{-1} [H_U W] on the grid, coefficient extraction,
/// and theta = z * P_+(M). Throws GridSingularity when F0 is (near-)singular
/// at a node.
ThetaExtraction extract_theta_tilde(const HankelFamily& family,
                                    const WanderingData& wandering, double s,
                                    const ActionOptions& options);

/// The model space K_theta within the [0, truncation] window together with
/// the realized theta H^2 span it complements.
struct ModelSpacePair {
  SubspaceBasis theta_shifts;  // span of windowed z^j theta e_i
  SubspaceBasis k_theta;
};

ModelSpacePair model_space_basis(const MatrixFourier& theta, int truncation,
                                 double rank_tol);

/// Action-formula residuals over a K_theta basis plus the reverse membership
/// of the Schmidt basis through F0^{-1}.
struct ActionResiduals {
  double action_residual = 0.0;
  double model_membership_residual = 0.0;
  double isometry_residual = 0.0;
};

ActionResiduals verify_action(const HankelFamily& family,
                              const SubspaceBasis& e, double s,
                              const WanderingData& wandering,
                              const MatrixFourier& theta,
                              const ActionOptions& options);

/// Symmetry diagnostics of theta: (S* theta)(0) symmetry (always required),
/// full coefficientwise symmetry, and when fully symmetric the
/// projection-free action formula and the K_theta membership of
/// (S* theta) conj(G).
struct SymmetryChecks {
  double at_zero_residual = 0.0;
  bool full_symmetry = false;
  double full_symmetry_defect = 0.0;
  double simplified_action_residual = 0.0;
  double lemma_41_residual = 0.0;
};

SymmetryChecks symmetry_checks(const HankelFamily& family,
                               const WanderingData& wandering,
                               const MatrixFourier& theta, double s,
                               const ActionOptions& options);

/// Lemma relating S*(K_theta cap (C^m)-perp) to K_theta cap the backshifted
/// theta columns' complement. Throws NotInner on a failed innerness
/// precondition.
CheckResult lemma_ktheta_check(const MatrixFourier& theta, int truncation,
                               const ActionOptions& options);

/// Everything above for one Schmidt cluster.
struct ActionReport {
  double s = 0.0;
  Verdict verdict = Verdict::NotApplicable;
  std::vector<CheckResult> checks;
  MatrixFourier theta_tilde;
  double analyticity_residual = 0.0;
  double innerness_residual = 0.0;
  double action_residual = 0.0;
  double model_membership_residual = 0.0;
  double symmetry_at_zero_residual = 0.0;
  bool full_symmetry = false;
  double simplified_action_residual = 0.0;
  double min_f0_singular = 0.0;
  int wandering_dim = 0;

  explicit ActionReport(int vec_dim) : theta_tilde(vec_dim, vec_dim, 0, 0) {}
};

ActionReport run_action_suite(const HankelFamily& family,
                              const SubspaceBasis& e_h,
                              const SubspaceBasis& e_k, double s,
                              const ActionOptions& options);

}  // namespace schmidt
