#pragma once

#include <optional>
#include <string>

#include "schmidt/action.hpp"

namespace schmidt {

/// Check groups selectable from the driver.
struct WhichChecks {
  bool spectra = true;
  bool prop22 = true;
  bool rankm = true;
  bool lemma24 = true;
  bool near = true;
  bool full = true;
  bool scalar = true;
  bool action = true;
  bool lemmas4 = true;

  static WhichChecks none() {
    return WhichChecks{false, false, false, false, false,
                       false, false, false, false};
  }
  /// Parse a comma-separated list; throws SpecError on unknown names.
  static WhichChecks parse(const std::string& list);
};

struct RunOptions {
  int truncation = -1;        // default: symbol degree + 4
  double cluster_tol = 1e-8;  // relative
  double rank_tol = 1e-10;
  double subspace_tol = -1.0;  // default: max(1e-9, 10 * tail_bound)
  double s_floor = -1.0;       // default: max(1e-8, 2 * tail_bound)
  int grid_min = 0;
  int identity_probes = 10;

  int effective_truncation(const MatrixSymbol& u) const;
  double effective_subspace_tol(const MatrixSymbol& u) const;
  ClusterOptions cluster_options() const;
  StructureOptions structure_options(const MatrixSymbol& u) const;
  ActionOptions action_options(const MatrixSymbol& u) const;
};

/// Residuals of the operator identities on deterministic random probes:
/// anti-symmetry, intertwining, Hermitian/PSD realization, the three-way
/// K_U agreement, and the rank-m identity.
std::vector<CheckResult> identity_checks(const HankelFamily& family,
                                         int probes, double tol);

struct ClusterVerification {
  double s = 0.0;
  int multiplicity = 0;
  double cluster_residual = 0.0;
  int dim_e = 0;
  int dim_ek = 0;
  int wandering_dim = 0;
  int defect = 0;
  int defect_space_dim = 0;
  std::vector<CheckResult> structure_checks;
  Verdict structure_verdict = Verdict::Pass;
  bool scalar_grid_singular = false;
  std::optional<ActionReport> action;
};

struct VerificationRun {
  int truncation = 0;
  double tail_bound = 0.0;
  bool symmetric = true;
  int dim = 0;
  int degree = 0;
  double subspace_tol = 0.0;
  SchmidtSpectrum h_spectrum;
  SchmidtSpectrum k_spectrum;
  std::vector<CheckResult> identities;
  std::vector<ClusterVerification> clusters;

  /// Pass iff every applicable verdict passed; NotApplicable when nothing
  /// applicable ran.
  Verdict overall() const;
};

/// Runs the requested check groups on every Schmidt cluster of the symbol.
/// Throws NotSymmetric when Schmidt machinery is requested for a
/// non-symmetric symbol.
VerificationRun run_verification(const MatrixSymbol& u,
                                 const RunOptions& options,
                                 const WhichChecks& which);

}  // namespace schmidt
