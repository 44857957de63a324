#include "schmidt/reports.hpp"

#include <algorithm>

#include "json.hpp"

#include "schmidt/version.hpp"

namespace schmidt {

namespace {

using json = nlohmann::ordered_json;

json config_json(const VerificationRun& run, const ReportConfig& cfg) {
  json j;
  j["version"] = kVersion;
  j["command"] = cfg.command;
  if (!cfg.spec_path.empty()) j["spec"] = cfg.spec_path;
  j["truncation"] = run.truncation;
  j["cluster_tol"] = cfg.options.cluster_tol;
  j["rank_tol"] = cfg.options.rank_tol;
  j["subspace_tol"] = run.subspace_tol;
  j["s_floor"] = run.h_spectrum.s_floor_used;
  j["tail_bound"] = run.tail_bound;
  j["symbol"] = {{"m", run.dim},
                 {"degree", run.degree},
                 {"symmetric", run.symmetric}};
  return j;
}

json checks_json(std::vector<CheckResult> checks) {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     return a.name < b.name;
                   });
  json arr = json::array();
  for (const auto& c : checks) {
    json jc;
    jc["name"] = c.name;
    jc["residual"] = c.residual;
    jc["tolerance"] = c.tolerance;
    jc["pass"] = c.pass;
    if (!c.note.empty()) jc["note"] = c.note;
    arr.push_back(std::move(jc));
  }
  return arr;
}

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

json theta_json(const MatrixFourier& theta) {
  json blocks = json::array();
  for (int n = 0; n <= theta.pos(); ++n) {
    const Eigen::MatrixXcd b = theta.block(n);
    json rows = json::array();
    for (int r = 0; r < b.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < b.cols(); ++c) row.push_back(complex_pair(b(r, c)));
      rows.push_back(std::move(row));
    }
    blocks.push_back({{"n", n}, {"matrix", std::move(rows)}});
  }
  return blocks;
}

json action_json(const ActionReport& a, bool dump_theta) {
  json j;
  j["verdict"] = verdict_name(a.verdict);
  j["r"] = a.wandering_dim;
  if (a.verdict == Verdict::NotApplicable) return j;
  j["analyticity_residual"] = a.analyticity_residual;
  j["innerness_residual"] = a.innerness_residual;
  j["action_residual"] = a.action_residual;
  j["model_membership_residual"] = a.model_membership_residual;
  j["symmetry_at_zero_residual"] = a.symmetry_at_zero_residual;
  j["full_symmetry"] = a.full_symmetry;
  if (a.full_symmetry) {
    j["simplified_action_residual"] = a.simplified_action_residual;
  }
  j["min_f0_singular"] = a.min_f0_singular;
  j["theta_degree"] = a.theta_tilde.pos();
  j["checks"] = checks_json(a.checks);
  if (dump_theta) j["theta_coeffs"] = theta_json(a.theta_tilde);
  return j;
}

}  // namespace

std::string schmidt_json(const VerificationRun& run, const ReportConfig& cfg) {
  json j;
  j["config"] = config_json(run, cfg);
  json clusters = json::array();
  for (const auto& c : run.h_spectrum.clusters) {
    clusters.push_back({{"s", c.s},
                        {"multiplicity", c.multiplicity},
                        {"cluster_residual", c.cluster_residual}});
  }
  j["clusters"] = std::move(clusters);
  j["dropped_dim"] = run.h_spectrum.dropped_dim;
  return j.dump(2) + "\n";
}

std::string singular_values_csv(const VerificationRun& run) {
  std::string out = "s,multiplicity\n";
  for (const auto& c : run.h_spectrum.clusters) {
    json s_val = c.s;  // shortest round-trip formatting
    out += s_val.dump() + "," + std::to_string(c.multiplicity) + "\n";
  }
  return out;
}

std::string verify_json(const VerificationRun& run, const ReportConfig& cfg,
                        bool dump_theta) {
  json j;
  j["config"] = config_json(run, cfg);
  j["overall"] = verdict_name(run.overall());
  if (!run.identities.empty()) j["identities"] = checks_json(run.identities);
  json clusters = json::array();
  for (const auto& c : run.clusters) {
    json jc;
    jc["s"] = c.s;
    jc["multiplicity"] = c.multiplicity;
    jc["cluster_residual"] = c.cluster_residual;
    jc["dim_E"] = c.dim_e;
    jc["dim_EK"] = c.dim_ek;
    jc["r"] = c.wandering_dim;
    jc["p"] = c.defect;
    jc["defect_space_dim"] = c.defect_space_dim;
    jc["structure_verdict"] = verdict_name(c.structure_verdict);
    jc["checks"] = checks_json(c.structure_checks);
    if (c.action.has_value()) {
      jc["action"] = action_json(*c.action, dump_theta);
    }
    clusters.push_back(std::move(jc));
  }
  j["clusters"] = std::move(clusters);
  return j.dump(2) + "\n";
}

}  // namespace schmidt
