// hankel-schmidt: realize block Hankel operators from symbol spec files,
// compute Schmidt subspaces, and verify the structural and action-formula
// properties. Exit codes: 0 success, 2 spec error, 3 ambiguous clustering,
// 4 verification failure, 5 nothing applicable.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "schmidt/pipeline.hpp"
#include "schmidt/reports.hpp"
#include "schmidt/version.hpp"

namespace {

using namespace schmidt;

constexpr int kExitOk = 0;
constexpr int kExitSpecError = 2;
constexpr int kExitAmbiguous = 3;
constexpr int kExitVerifyFailed = 4;
constexpr int kExitNotApplicable = 5;

struct CliArgs {
  std::string spec_path;
  std::string out_dir = ".";
  std::string which = "all";
  std::string example;
  int truncation = -1;
  double cluster_tol = 1e-8;
  double rank_tol = 1e-10;
  double subspace_tol = -1.0;
  bool dump_theta = false;
};

RunOptions to_run_options(const CliArgs& args) {
  RunOptions opt;
  opt.truncation = args.truncation;
  opt.cluster_tol = args.cluster_tol;
  opt.rank_tol = args.rank_tol;
  opt.subspace_tol = args.subspace_tol;
  return opt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (!path.parent_path().empty()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
}

MatrixSymbol load_symbol(const CliArgs& args) {
  return realize_symbol(parse_symbol_spec(read_file(args.spec_path)));
}

int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return kExitOk;
    case Verdict::NotApplicable:
      return kExitNotApplicable;
    default:
      return kExitVerifyFailed;
  }
}

int cmd_schmidt(const CliArgs& args) {
  const MatrixSymbol u = load_symbol(args);
  WhichChecks which = WhichChecks::none();
  which.spectra = true;
  const VerificationRun run = run_verification(u, to_run_options(args), which);
  const ReportConfig cfg{args.spec_path, "schmidt", to_run_options(args)};
  const std::filesystem::path out(args.out_dir);
  write_file(out / "schmidt.json", schmidt_json(run, cfg));
  write_file(out / "singular_values.csv", singular_values_csv(run));
  for (const auto& c : run.h_spectrum.clusters) {
    std::cout << "s = " << c.s << "  multiplicity " << c.multiplicity
              << "  cluster_residual " << c.cluster_residual << "\n";
  }
  return kExitOk;
}

int cmd_verify(const CliArgs& args) {
  const MatrixSymbol u = load_symbol(args);
  WhichChecks which = WhichChecks::parse(args.which);
  const VerificationRun run = run_verification(u, to_run_options(args), which);
  const ReportConfig cfg{args.spec_path, "verify", to_run_options(args)};
  const std::filesystem::path out(args.out_dir);
  write_file(out / "verify.json", verify_json(run, cfg, args.dump_theta));
  const Verdict overall = run.overall();
  std::cout << "overall: " << verdict_name(overall) << "\n";
  return exit_code_for(overall);
}

struct Expectation {
  std::string fact;
  std::string expected;
  std::string observed;
  bool match;
};

void print_table(const std::vector<Expectation>& rows) {
  std::size_t w_fact = 4, w_exp = 8, w_obs = 8;
  for (const auto& r : rows) {
    w_fact = std::max(w_fact, r.fact.size());
    w_exp = std::max(w_exp, r.expected.size());
    w_obs = std::max(w_obs, r.observed.size());
  }
  const auto line = [&](const std::string& a, const std::string& b,
                        const std::string& c, const std::string& d) {
    std::cout << "  " << a << std::string(w_fact - a.size() + 2, ' ') << b
              << std::string(w_exp - b.size() + 2, ' ') << c
              << std::string(w_obs - c.size() + 2, ' ') << d << "\n";
  };
  line("fact", "expected", "observed", "match");
  for (const auto& r : rows) {
    line(r.fact, r.expected, r.observed, r.match ? "yes" : "NO");
  }
}

// E_scalar(s) of the scalar symbol phi, embedded into component `slot` of
// the C^2-valued coefficient space.
SubspaceBasis embedded_scalar_cluster(const MatrixSymbol& phi, int truncation,
                                      double s, int slot,
                                      const RunOptions& opt) {
  HankelFamily fam = HankelFamily::build(phi, truncation);
  SchmidtSpectrum spec = schmidt_subspaces(
      hsq_matrix(fam.gamma), 1, 'H', opt.cluster_options(), phi.tail_bound());
  for (const auto& cluster : spec.clusters) {
    if (std::abs(cluster.s - s) > 1e-6 * std::max(1.0, s)) continue;
    const int n = truncation;
    Eigen::MatrixXcd embedded =
        Eigen::MatrixXcd::Zero(2 * (n + 1), cluster.basis.dim());
    for (int k = 0; k < cluster.basis.dim(); ++k) {
      for (int j = 0; j <= n; ++j) {
        embedded(2 * j + slot, k) = cluster.basis.matrix()(j, k);
      }
    }
    return SubspaceBasis(std::move(embedded), 2);
  }
  return SubspaceBasis(2, 2 * (truncation + 1));
}

int cmd_reproduce(const CliArgs& args) {
  SymbolSpec spec;
  int zn = 3;
  if (args.example == "3.6A" || args.example == "3.6B") {
    spec.kind = args.example == "3.6A" ? "example-3.6A" : "example-3.6B";
    spec.m = 2;
    spec.phi_degree = 2;
  } else if (args.example == "4.6") {
    spec.kind = "example-4.6";
    spec.m = 2;
    spec.phi_degree = 1;
    spec.psi_degree = 2;
  } else if (args.example.rfind("scalar-z", 0) == 0) {
    spec.kind = "poly";
    spec.m = 1;
    if (args.example.size() > 8 && args.example != "scalar-zn") {
      zn = std::stoi(args.example.substr(8));
    }
    Eigen::MatrixXcd one(1, 1);
    one << Complex(1.0, 0.0);
    spec.blocks.emplace_back(zn, one);
  } else {
    throw SpecError("unknown example id '" + args.example + "'");
  }
  if (!args.spec_path.empty()) {
    spec = parse_symbol_spec(read_file(args.spec_path));
  }
  const MatrixSymbol u = realize_symbol(spec);
  const RunOptions opt = to_run_options(args);
  const VerificationRun run = run_verification(u, opt, WhichChecks{});
  const double tol = opt.effective_subspace_tol(u);

  std::vector<Expectation> rows;
  const auto fmt = [](double v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
  };

  if (args.example == "3.6A" || args.example == "3.6B") {
    // Expected: E = E_scalar + E_scalar blockwise and wandering dim 2.
    ScalarSeries phi;
    phi.coeffs = Eigen::VectorXcd::Zero(spec.phi_degree + 1);
    phi.coeffs(spec.phi_degree) = 1.0;
    const MatrixSymbol phi_symbol = scalar_diag_symbol(phi, 1);
    for (const auto& cluster : run.clusters) {
      SubspaceBasis expected = subspace_sum(
          embedded_scalar_cluster(phi_symbol, run.truncation, cluster.s, 0,
                                  opt),
          embedded_scalar_cluster(phi_symbol, run.truncation, cluster.s, 1,
                                  opt));
      SubspaceBasis observed(2, expected.ambient());
      for (const auto& hc : run.h_spectrum.clusters) {
        if (std::abs(hc.s - cluster.s) < 1e-12) observed = hc.basis;
      }
      const auto angles = principal_angles(expected, observed);
      double angle = std::numbers::pi / 2.0;
      if (expected.dim() == observed.dim()) {
        angle = angles.empty() ? 0.0 : angles.back();
      }
      rows.push_back({"E(s=" + fmt(cluster.s) + ") = E_scalar + E_scalar",
                      "angle <= 1e-10", fmt(angle), angle <= 1e-10});
      rows.push_back({"dim W at s=" + fmt(cluster.s), "2",
                      fmt(cluster.wandering_dim), cluster.wandering_dim == 2});
    }
  } else if (args.example == "4.6") {
    for (const auto& cluster : run.clusters) {
      rows.push_back({"dim W", "2", fmt(cluster.wandering_dim),
                      cluster.wandering_dim == 2});
      rows.push_back(
          {"defect p", "0", fmt(cluster.defect), cluster.defect == 0});
      if (cluster.action.has_value() &&
          cluster.action->verdict != Verdict::NotApplicable) {
        rows.push_back({"action residual", "<= " + fmt(tol),
                        fmt(cluster.action->action_residual),
                        cluster.action->action_residual <= tol});
      }
      rows.push_back({"action suite", "pass",
                      cluster.action.has_value()
                          ? verdict_name(cluster.action->verdict)
                          : "missing",
                      cluster.action.has_value() &&
                          cluster.action->verdict == Verdict::Pass});
    }
  } else {
    // scalar-zn: E = K_{z^{n+1}}, theta = z^{n+1}, defect 0
    if (run.clusters.size() != 1) {
      rows.push_back(
          {"cluster count", "1", fmt(double(run.clusters.size())), false});
    } else {
      const auto& cluster = run.clusters.front();
      rows.push_back(
          {"s", "1", fmt(cluster.s), std::abs(cluster.s - 1.0) <= 1e-10});
      rows.push_back({"multiplicity", fmt(zn + 1), fmt(cluster.multiplicity),
                      cluster.multiplicity == zn + 1});
      rows.push_back(
          {"defect p", "0", fmt(cluster.defect), cluster.defect == 0});
      bool theta_ok = false;
      if (cluster.action.has_value()) {
        const MatrixFourier& theta = cluster.action->theta_tilde;
        theta_ok =
            theta.pos() == zn + 1 &&
            std::abs(std::abs(theta.block(zn + 1)(0, 0)) - 1.0) <= 1e-10;
        for (int k = 0; k <= zn; ++k) {
          theta_ok = theta_ok && theta.block(k).norm() <= 1e-10;
        }
      }
      rows.push_back({"theta", "z^" + std::to_string(zn + 1) + " (unimodular)",
                      theta_ok ? "match" : "mismatch", theta_ok});
      rows.push_back({"structure suite", "pass",
                      verdict_name(cluster.structure_verdict),
                      cluster.structure_verdict == Verdict::Pass});
    }
  }

  std::cout << "reproduce " << args.example << " (truncation "
            << run.truncation << ")\n";
  print_table(rows);
  const bool all_match =
      !rows.empty() && std::all_of(rows.begin(), rows.end(),
                                   [](const Expectation& r) { return r.match; });
  const bool suite_ok = run.overall() == Verdict::Pass;
  std::cout << "verification suite: " << verdict_name(run.overall()) << "\n";
  return all_match && suite_ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block Hankel operators: Schmidt subspaces and their structure"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CliArgs args;
  auto add_common = [&](CLI::App* cmd, bool needs_spec) {
    auto* spec_opt =
        cmd->add_option("--spec", args.spec_path, "symbol spec JSON path");
    if (needs_spec) spec_opt->required();
    cmd->add_option("--truncation", args.truncation, "coefficient window N");
    cmd->add_option("--cluster-tol", args.cluster_tol,
                    "relative singular value clustering tolerance");
    cmd->add_option("--rank-tol", args.rank_tol, "numerical rank tolerance");
    cmd->add_option("--subspace-tol", args.subspace_tol,
                    "subspace residual tolerance");
    cmd->add_option("--out", args.out_dir, "output directory");
  };

  auto* schmidt_cmd =
      app.add_subcommand("schmidt", "singular values and Schmidt subspaces");
  add_common(schmidt_cmd, true);

  auto* verify_cmd =
      app.add_subcommand("verify", "run the theorem verification suites");
  add_common(verify_cmd, true);
  verify_cmd->add_option(
      "--which", args.which,
      "all|prop22|rankm|lemma24|near|full|scalar|action|lemmas4 (comma list)");
  verify_cmd->add_flag("--dump-theta", args.dump_theta,
                       "include theta coefficients in verify.json");

  auto* reproduce_cmd =
      app.add_subcommand("reproduce", "reproduce a named example");
  add_common(reproduce_cmd, false);
  reproduce_cmd->add_option("--example", args.example, "3.6A|3.6B|4.6|scalar-zn")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (schmidt_cmd->parsed()) return cmd_schmidt(args);
    if (verify_cmd->parsed()) return cmd_verify(args);
    if (reproduce_cmd->parsed()) return cmd_reproduce(args);
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitSpecError;
  } catch (const NotSymmetric& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitSpecError;
  } catch (const AmbiguousClustering& e) {
    std::cerr << "ambiguous clustering: " << e.what() << "\n";
    return kExitAmbiguous;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}
