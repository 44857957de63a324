#include "schmidt/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace schmidt {

WhichChecks WhichChecks::parse(const std::string& list) {
  if (list.empty() || list == "all") return WhichChecks{};
  WhichChecks which = WhichChecks::none();
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "prop22") {
      which.prop22 = true;
    } else if (item == "rankm") {
      which.rankm = true;
    } else if (item == "lemma24") {
      which.lemma24 = true;
    } else if (item == "near") {
      which.near = true;
    } else if (item == "full") {
      which.full = true;
    } else if (item == "scalar") {
      which.scalar = true;
    } else if (item == "action") {
      which.action = true;
    } else if (item == "lemmas4") {
      which.lemmas4 = true;
    } else if (item == "all") {
      return WhichChecks{};
    } else {
      throw SpecError("unknown check group '" + item + "'");
    }
  }
  return which;
}

int RunOptions::effective_truncation(const MatrixSymbol& u) const {
  return truncation >= 0 ? truncation : u.degree() + 4;
}

double RunOptions::effective_subspace_tol(const MatrixSymbol& u) const {
  if (subspace_tol > 0.0) return subspace_tol;
  return std::max(1e-9, 10.0 * u.tail_bound());
}

ClusterOptions RunOptions::cluster_options() const {
  ClusterOptions c;
  c.cluster_tol = cluster_tol;
  if (s_floor > 0.0) c.s_floor = s_floor;
  return c;
}

StructureOptions RunOptions::structure_options(const MatrixSymbol& u) const {
  StructureOptions s;
  s.subspace_tol = effective_subspace_tol(u);
  s.rank_tol = rank_tol;
  s.grid_min = grid_min;
  return s;
}

ActionOptions RunOptions::action_options(const MatrixSymbol& u) const {
  ActionOptions a;
  a.structure = structure_options(u);
  a.at_zero_tol = std::max(1e-10, 10.0 * u.tail_bound());
  a.model_span_tol = std::max(rank_tol, 4.0 * u.tail_bound());
  return a;
}

std::vector<CheckResult> identity_checks(const HankelFamily& family,
                                         int probes, double tol) {
  std::mt19937_64 rng(0xfeedbeefULL);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int m = family.symbol.dim();
  const int n = family.gamma.truncation();
  const auto random_probe = [&](int degree) {
    FourierVec f(m, 0, degree);
    for (int c = 0; c < m; ++c) {
      for (int j = 0; j <= degree; ++j) {
        f.set_coeff(c, j, Complex(dist(rng), dist(rng)));
      }
    }
    return f;
  };

  double antisym = 0.0;
  double intertwine = 0.0;
  double threeway = 0.0;
  for (int trial = 0; trial < probes; ++trial) {
    const FourierVec f = random_probe(n - 1);
    const FourierVec g = random_probe(n - 1);
    antisym = std::max(antisym,
                       std::abs(inner_product(apply_H(family.gamma, f), g) -
                                inner_product(apply_H(family.gamma, g), f)));
    intertwine = std::max(
        intertwine, distance(apply_H(family.gamma, shift(f)),
                             backshift(apply_H(family.gamma, f))));
    threeway = std::max(
        threeway, k_route_disagreement(family.gamma, family.gamma_shifted, f));
  }

  std::vector<CheckResult> checks;
  checks.push_back(make_check("prop2.2i-antisymmetry", antisym, tol));
  checks.push_back(make_check("prop2.2iii-intertwining", intertwine, tol));
  checks.push_back(make_check("k-threeway-agreement", threeway, tol));

  if (family.symbol.symmetric()) {
    const Eigen::MatrixXcd hsq = hsq_matrix(family.gamma);
    checks.push_back(make_check(
        "prop2.2ii-hermitian",
        (hsq - hsq.adjoint()).cwiseAbs().maxCoeff(), 1e-14));
    EigenDecomposition eig = hermitian_eig(hsq);
    const double scale = std::max(eig.values.maxCoeff(), 1.0);
    checks.push_back(make_check(
        "prop2.2ii-psd", std::max(0.0, -eig.values.minCoeff()),
        1e-10 * scale));
    const double rank_m =
        rank_m_identity_residual(family.gamma, family.gamma_shifted,
                                 family.columns);
    const double rank_m_tol =
        family.symbol.tail_bound() > 0.0
            ? 4.0 * family.symbol.tail_bound()
            : tol;
    checks.push_back(make_check("rank-m-identity", rank_m, rank_m_tol));
  }
  return checks;
}

namespace {

// E_K at the same s, or the zero subspace when K_U has no matching cluster.
SubspaceBasis matching_k_basis(const SchmidtSpectrum& k_spectrum, double s,
                               double match_tol, int vec_dim, int ambient) {
  const SchmidtSubspace* best = nullptr;
  double best_gap = match_tol;
  for (const auto& cluster : k_spectrum.clusters) {
    const double gap = std::abs(cluster.s - s);
    if (gap <= best_gap) {
      best_gap = gap;
      best = &cluster;
    }
  }
  if (best == nullptr) return SubspaceBasis(vec_dim, ambient);
  return best->basis;
}

}  // namespace

Verdict VerificationRun::overall() const {
  bool any_applicable = false;
  bool any_fail = false;
  const auto fold = [&](Verdict v) {
    if (v == Verdict::Fail || v == Verdict::Inconclusive) {
      any_applicable = true;
      any_fail = true;
    } else if (v == Verdict::Pass) {
      any_applicable = true;
    }
  };
  for (const auto& c : identities) {
    any_applicable = true;
    if (!c.pass) any_fail = true;
  }
  for (const auto& cluster : clusters) {
    if (!cluster.structure_checks.empty() || cluster.scalar_grid_singular) {
      fold(cluster.structure_verdict);
    }
    if (cluster.action.has_value()) fold(cluster.action->verdict);
  }
  if (!any_applicable) return Verdict::NotApplicable;
  return any_fail ? Verdict::Fail : Verdict::Pass;
}

VerificationRun run_verification(const MatrixSymbol& u,
                                 const RunOptions& options,
                                 const WhichChecks& which) {
  const bool needs_clusters = which.lemma24 || which.near || which.full ||
                              which.scalar || which.action || which.lemmas4;
  const bool needs_spectra = which.spectra || needs_clusters;
  if (needs_spectra && !u.symmetric()) {
    throw NotSymmetric(
        "run_verification: Schmidt checks require a symmetric symbol");
  }

  VerificationRun run;
  if (options.cluster_tol <= 0.0 || options.rank_tol <= 0.0 ||
      (options.subspace_tol != -1.0 && options.subspace_tol <= 0.0)) {
    throw SpecError("run_verification: tolerances must be positive");
  }
  const int n = options.effective_truncation(u);
  if (n < u.degree()) {
    throw SpecError("run_verification: truncation below symbol degree");
  }
  run.truncation = n;
  run.tail_bound = u.tail_bound();
  run.symmetric = u.symmetric();
  run.dim = u.dim();
  run.degree = u.degree();
  run.subspace_tol = options.effective_subspace_tol(u);

  const HankelFamily family = HankelFamily::build(u, n);
  const StructureOptions struct_opt = options.structure_options(u);
  const ActionOptions action_opt = options.action_options(u);

  if (which.prop22 || which.rankm) {
    auto checks = identity_checks(family, options.identity_probes, 1e-11);
    for (auto& c : checks) {
      const bool is_rankm = c.name == "rank-m-identity" ||
                            c.name == "k-threeway-agreement";
      if ((is_rankm && which.rankm) || (!is_rankm && which.prop22)) {
        run.identities.push_back(std::move(c));
      }
    }
  }

  if (!needs_spectra) return run;

  const SchmidtAnalysis analysis =
      analyze_family(family, options.cluster_options());
  run.h_spectrum = analysis.h;
  run.k_spectrum = analysis.k;
  if (!needs_clusters) return run;

  const double s_max = analysis.h.clusters.empty()
                           ? 0.0
                           : analysis.h.clusters.front().s;
  const double match_tol =
      std::max(analysis.h.cluster_tol_used * s_max, 4.0 * u.tail_bound());

  for (const auto& cluster : analysis.h.clusters) {
    ClusterVerification cv;
    cv.s = cluster.s;
    cv.multiplicity = cluster.multiplicity;
    cv.cluster_residual = cluster.cluster_residual;
    cv.dim_e = cluster.basis.dim();

    const SubspaceBasis e_k =
        matching_k_basis(analysis.k, cluster.s, match_tol, u.dim(),
                         cluster.basis.ambient());
    cv.dim_ek = e_k.dim();
    cv.wandering_dim = wandering_part(cluster.basis).dim();

    if (which.lemma24) {
      cv.structure_checks.push_back(lemma_24_check(
          cluster.basis, e_k, family.columns, struct_opt.subspace_tol));
    }
    if (which.near) {
      StructureReport near = near_invariance_report(cluster.basis, e_k,
                                                    family.columns, struct_opt);
      cv.defect = near.defect;
      cv.defect_space_dim = near.defect_space_dim;
      for (auto& c : near.checks) cv.structure_checks.push_back(std::move(c));
    }
    if (which.full) {
      WanderingData wd = full_wandering_check(cluster.basis, e_k,
                                              family.columns, struct_opt);
      if (wd.verdict != Verdict::NotApplicable) {
        for (auto& c : wd.checks) cv.structure_checks.push_back(std::move(c));
      }
    }
    if (which.scalar && u.dim() == 1) {
      ScalarStructureResult scalar =
          scalar_structure(cluster.basis, cluster.s, struct_opt);
      for (auto& c : scalar.checks) {
        cv.structure_checks.push_back(std::move(c));
      }
      if (scalar.verdict == Verdict::Inconclusive) {
        cv.scalar_grid_singular = true;
      } else if (scalar.verdict == Verdict::Pass &&
                 scalar.model_space.dim() > 0) {
        BeurlingData beurling = beurling_extract(scalar.model_space,
                                                 struct_opt);
        for (auto& c : beurling.checks) {
          cv.structure_checks.push_back(std::move(c));
        }
      }
    }

    cv.structure_verdict = aggregate_checks(cv.structure_checks);
    if (cv.scalar_grid_singular) cv.structure_verdict = Verdict::Inconclusive;

    if (which.action || which.lemmas4) {
      ActionReport action =
          run_action_suite(family, cluster.basis, e_k, cluster.s, action_opt);
      if (action.verdict == Verdict::Pass || action.verdict == Verdict::Fail) {
        // keep only the groups that were asked for
        if (!which.lemmas4) {
          std::erase_if(action.checks, [](const CheckResult& c) {
            return c.name == "lemma-4.1" || c.name == "lemma-4.2";
          });
        }
        if (!which.action) {
          std::erase_if(action.checks, [](const CheckResult& c) {
            return c.name != "lemma-4.1" && c.name != "lemma-4.2";
          });
        }
        action.verdict = aggregate_checks(action.checks);
      }
      cv.action = std::move(action);
    }

    run.clusters.push_back(std::move(cv));
  }
  return run;
}

}  // namespace schmidt
