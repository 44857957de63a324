// End-to-end exercise of the hankel-schmidt binary: spec files in, JSON/CSV
// out, exit-code contract.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

#ifndef HANKEL_SCHMIDT_BIN
#error "HANKEL_SCHMIDT_BIN must point at the CLI binary"
#endif

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli.log";
  const std::string command = std::string(HANKEL_SCHMIDT_BIN) + " " + args +
                              " > " + log.string() + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result{-1, ""};
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  std::ifstream in(log);
  std::ostringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hankel_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("schmidt command on u = z^3 at N = 7") {
  const fs::path dir = fresh_dir("schmidt");
  write(dir / "z3.json",
        R"({"m": 1, "kind": "poly", "truncation": 7,)"
        R"( "blocks": [{"n": 3, "matrix": [[[1.0, 0.0]]]}]})");
  RunResult r = run_cli("schmidt --spec " + (dir / "z3.json").string() +
                            " --truncation 7 --out " + dir.string(),
                        dir);
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "singular_values.csv");
  CHECK(csv == "s,multiplicity\n1.0,4\n");
  const std::string json = slurp(dir / "schmidt.json");
  CHECK(json.find("\"multiplicity\": 4") != std::string::npos);
  CHECK(json.find("\"version\"") != std::string::npos);
  CHECK(json.find("\"tail_bound\"") != std::string::npos);
}

TEST_CASE("schmidt on example 3.6A reports multiplicity 6") {
  const fs::path dir = fresh_dir("e36a_schmidt");
  write(dir / "e36a.json",
        R"({"m": 2, "kind": "example-3.6A", "truncation": 6,)"
        R"( "phi_degree": 2})");
  RunResult r = run_cli("schmidt --spec " + (dir / "e36a.json").string() +
                            " --out " + dir.string(),
                        dir);
  CHECK(r.exit_code == 0);
  CHECK(slurp(dir / "singular_values.csv") == "s,multiplicity\n1.0,6\n");
}

TEST_CASE("nearly coincident singular values exit 3") {
  // diag(z, (1+2e-8) z): the two s levels sit between the merge tolerance
  // and the 3x safety margin.
  const fs::path dir = fresh_dir("ambiguous");
  write(dir / "amb.json",
        R"({"m": 2, "kind": "poly", "truncation": 5, "blocks":)"
        R"( [{"n": 1, "matrix": [[[1,0],[0,0]],[[0,0],[1.00000002,0]]]}]})");
  RunResult r = run_cli("schmidt --spec " + (dir / "amb.json").string() +
                            " --out " + dir.string(),
                        dir);
  CHECK(r.exit_code == 3);
}

TEST_CASE("malformed spec exits 2 and names the byte offset") {
  const fs::path dir = fresh_dir("malformed");
  write(dir / "bad.json", "{\"m\": 1, \"kind\": ");
  RunResult r =
      run_cli("schmidt --spec " + (dir / "bad.json").string(), dir);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("byte") != std::string::npos);
}

TEST_CASE("non-symmetric symbols are refused with exit 2") {
  const fs::path dir = fresh_dir("nonsym");
  write(dir / "nonsym.json",
        R"({"m": 2, "kind": "poly", "truncation": 5, "blocks":)"
        R"( [{"n": 1, "matrix": [[[0,0],[1,0]],[[0,0],[0,0]]]}]})");
  RunResult r = run_cli("verify --spec " + (dir / "nonsym.json").string() +
                            " --which near --out " + dir.string(),
                        dir);
  CHECK(r.exit_code == 2);
}

TEST_CASE("verify example 4.6 passes everything") {
  const fs::path dir = fresh_dir("e46");
  write(dir / "e46.json",
        R"({"m": 2, "kind": "example-4.6", "truncation": 8,)"
        R"( "phi_degree": 1, "psi_degree": 2})");
  RunResult r = run_cli("verify --spec " + (dir / "e46.json").string() +
                            " --out " + dir.string(),
                        dir);
  CHECK(r.exit_code == 0);
  const std::string json = slurp(dir / "verify.json");
  CHECK(json.find("\"overall\": \"pass\"") != std::string::npos);
}

TEST_CASE("action-only run on a generic m = 2 symbol is NotApplicable") {
  const fs::path dir = fresh_dir("napp");
  write(dir / "gen.json",
        R"({"m": 2, "kind": "poly", "truncation": 6, "blocks":)"
        R"( [{"n": 1, "matrix": [[[1,0],[2,0]],[[2,0],[3,0]]]},)"
        R"(  {"n": 2, "matrix": [[[0,0],[1,0]],[[1,0],[1,0]]]}]})");
  RunResult r = run_cli("verify --spec " + (dir / "gen.json").string() +
                            " --which action --out " + dir.string(),
                        dir);
  CHECK(r.exit_code == 5);
}

TEST_CASE("verify output is byte-identical across runs") {
  const fs::path dir = fresh_dir("determinism");
  write(dir / "e36.json",
        R"({"m": 2, "kind": "example-3.6A", "truncation": 6,)"
        R"( "phi_degree": 2})");
  const fs::path out1 = dir / "run1";
  const fs::path out2 = dir / "run2";
  RunResult r1 = run_cli("verify --spec " + (dir / "e36.json").string() +
                             " --out " + out1.string(),
                         dir);
  RunResult r2 = run_cli("verify --spec " + (dir / "e36.json").string() +
                             " --out " + out2.string(),
                         dir);
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(out1 / "verify.json") == slurp(out2 / "verify.json"));
}

TEST_CASE("reproduce subcommand matches the stated facts") {
  const fs::path dir = fresh_dir("reproduce");
  CHECK(run_cli("reproduce --example 3.6A", dir).exit_code == 0);
  CHECK(run_cli("reproduce --example 4.6", dir).exit_code == 0);
  CHECK(run_cli("reproduce --example scalar-z3", dir).exit_code == 0);
  CHECK(run_cli("reproduce --example bogus", dir).exit_code == 2);
}
