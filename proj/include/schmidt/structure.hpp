#pragma once

#include <string>
#include <vector>

#include "schmidt/spectral.hpp"

namespace schmidt {

enum class Verdict { Pass, Fail, NotApplicable, Inconclusive };

const char* verdict_name(Verdict v);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

CheckResult make_check(std::string name, double residual, double tolerance);

/// Pass iff every check passes; callers layer NotApplicable/Inconclusive on
/// top where those states exist.
Verdict aggregate_checks(const std::vector<CheckResult>& checks);

struct StructureOptions {
  double subspace_tol = 1e-9;  // 10 * tail_bound for truncated symbols
  double rank_tol = 1e-10;
  double cond_limit = 1e8;
  int grid_min = 0;  // floor on extraction grid sizes
};

/// Near-S*-invariance data for one Schmidt cluster.
struct StructureReport {
  double s = 0.0;
  int dim_e = 0;
  int dim_ek = 0;
  int wandering_dim = 0;  // r
  int defect = 0;         // p
  int defect_space_dim = 0;  // dim of span{P_EK(U_i)}
  std::vector<CheckResult> checks;
  Verdict verdict = Verdict::Pass;
};

/// E_H(s) and {U_i}-orthogonal slices agree with the E_K(s) ones; the
/// residual is the max principal angle between the two intersections.
CheckResult lemma_24_check(const SubspaceBasis& e_h, const SubspaceBasis& e_k,
                           const std::vector<FourierVec>& columns, double tol);

/// S* residual geometry of E cap zH^2: defect rank, the E_K inclusion, and
/// the (E cap {U_i}-perp) + V inclusion.
StructureReport near_invariance_report(const SubspaceBasis& e_h,
                                       const SubspaceBasis& e_k,
                                       const std::vector<FourierVec>& columns,
                                       const StructureOptions& options);

/// Full-wandering (r = m) consequences: zero defect, E_K perp {U_i}, and an
/// invertible W(0); carries the fixed W basis and F0 for the action stage.
struct WanderingData {
  Verdict verdict = Verdict::NotApplicable;
  std::vector<CheckResult> checks;
  SubspaceBasis wandering;
  MatrixFourier f0;
  Eigen::MatrixXcd w_at_zero;
  double cond_w0 = 0.0;

  WanderingData(int vec_dim, int ambient)
      : wandering(vec_dim, ambient), f0(vec_dim, vec_dim, 0, 0) {}
};

WanderingData full_wandering_check(const SubspaceBasis& e_h,
                                   const SubspaceBasis& e_k,
                                   const std::vector<FourierVec>& columns,
                                   const StructureOptions& options);

/// Scalar (m = 1) structure: extract the isometric multiplier h and the
/// S*-invariant quotient space, recursing through the E subset zH^2 case.
struct ScalarStructureResult {
  Verdict verdict = Verdict::Pass;
  std::vector<CheckResult> checks;
  FourierVec h;
  SubspaceBasis model_space;  // recovered E', S*-invariant candidate
  int case_two_depth = 0;

  ScalarStructureResult(int vec_dim, int ambient)
      : h(vec_dim, 0, 0), model_space(vec_dim, ambient) {}
};

ScalarStructureResult scalar_structure(const SubspaceBasis& e, double s,
                                       const StructureOptions& options);

/// Beurling data of an S*-invariant subspace: the wandering columns of its
/// shift-invariant complement, with innerness and containment residuals.
/// Throws NotInvariant when the precondition residual exceeds tolerance.
struct BeurlingData {
  Verdict verdict = Verdict::Pass;
  std::vector<CheckResult> checks;
  MatrixFourier phi;
  bool degenerate = false;

  explicit BeurlingData(int vec_dim) : phi(vec_dim, vec_dim, 0, 0) {}
};

BeurlingData beurling_extract(const SubspaceBasis& eprime,
                              const StructureOptions& options);

}  // namespace schmidt
