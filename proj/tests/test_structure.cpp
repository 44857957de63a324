#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "schmidt/structure.hpp"
#include "support.hpp"

using namespace schmidt;

namespace {

MatrixSymbol scalar_monomial(int n) {
  Eigen::MatrixXcd one(1, 1);
  one << Complex(1.0, 0.0);
  return poly_symbol(1, {{n, one}});
}

struct Cluster {
  HankelFamily family;
  SubspaceBasis e_h;
  SubspaceBasis e_k;
  double s;
};

// Largest-s cluster of H together with the matching E_K.
Cluster top_cluster(const MatrixSymbol& u, int n) {
  HankelFamily family = HankelFamily::build(u, n);
  SchmidtAnalysis an = analyze_family(family, ClusterOptions{});
  REQUIRE(!an.h.clusters.empty());
  const SchmidtSubspace& top = an.h.clusters.front();
  SubspaceBasis e_k(u.dim(), top.basis.ambient());
  for (const auto& kc : an.k.clusters) {
    if (std::abs(kc.s - top.s) < 1e-8 * top.s) {
      e_k = kc.basis;
      break;
    }
  }
  return Cluster{std::move(family), top.basis, e_k, top.s};
}

SubspaceBasis span_of(const std::vector<FourierVec>& vecs, int truncation) {
  Eigen::MatrixXcd cols((truncation + 1) * vecs.front().dim(), vecs.size());
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    cols.col(k) = to_coeff_vector(vecs[k], truncation);
  }
  return SubspaceBasis::from_span(cols, vecs.front().dim());
}

MatrixSymbol example36(char variant, int phi_degree) {
  SymbolSpec spec;
  spec.kind = variant == 'A' ? "example-3.6A" : "example-3.6B";
  spec.m = 2;
  spec.phi_degree = phi_degree;
  return realize_symbol(spec);
}

MatrixSymbol example46() {
  SymbolSpec spec;
  spec.kind = "example-4.6";
  spec.m = 2;
  spec.phi_degree = 1;
  spec.psi_degree = 2;
  return realize_symbol(spec);
}

}  // namespace

TEST_CASE("lemma 2.4 on u = z by explicit chase") {
  Cluster c = top_cluster(scalar_monomial(1), 5);
  CHECK(c.e_h.dim() == 2);  // span{1, z}
  CHECK(c.e_k.dim() == 1);  // span{1}
  CheckResult check = lemma_24_check(c.e_h, c.e_k, c.family.columns, 1e-12);
  CHECK(check.pass);
  CHECK(check.residual <= 1e-12);
  // both intersections are span{1}
  SubspaceBasis lhs = orth_complement_within(c.e_h, c.family.columns);
  CHECK(lhs.dim() == 1);
  CHECK(subspaces_equal(
      lhs, span_of({FourierVec::monomial(1, 0, 0)}, c.e_h.truncation()),
      1e-12));
}

TEST_CASE("lemma 2.4 across the corpus and the named examples") {
  CheckResult a = [&] {
    Cluster c = top_cluster(example36('A', 2), 6);
    return lemma_24_check(c.e_h, c.e_k, c.family.columns, 1e-9);
  }();
  CHECK(a.pass);

  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    MatrixSymbol u = test::random_symmetric_symbol(seed);
    HankelFamily family = HankelFamily::build(u, u.degree() + 4);
    SchmidtAnalysis an = analyze_family(family, ClusterOptions{});
    for (const auto& cluster : an.h.clusters) {
      SubspaceBasis e_k(u.dim(), cluster.basis.ambient());
      for (const auto& kc : an.k.clusters) {
        if (std::abs(kc.s - cluster.s) < 1e-8 * an.h.clusters.front().s) {
          e_k = kc.basis;
        }
      }
      CheckResult check =
          lemma_24_check(cluster.basis, e_k, family.columns, 1e-9);
      CHECK(check.pass);
    }
  }
}

TEST_CASE("near invariance: scalar monomials have defect 0") {
  for (int n = 1; n <= 4; ++n) {
    Cluster c = top_cluster(scalar_monomial(n), n + 4);
    StructureReport report =
        near_invariance_report(c.e_h, c.e_k, c.family.columns,
                               StructureOptions{});
    CHECK(report.defect == 0);
    CHECK(report.verdict == Verdict::Pass);
    CHECK(report.wandering_dim == 1);
  }
}

TEST_CASE("near invariance: example 3.6B has defect at most 2") {
  Cluster c = top_cluster(example36('B', 2), 6);
  StructureReport report = near_invariance_report(
      c.e_h, c.e_k, c.family.columns, StructureOptions{});
  CHECK(report.defect <= 2);
  CHECK(report.verdict == Verdict::Pass);
}

TEST_CASE("near invariance: vacuous when E misses zH^2") {
  // synthetic one-dimensional E = span{1}
  SubspaceBasis e = span_of({FourierVec::monomial(1, 0, 0)}, 4);
  HankelFamily family = HankelFamily::build(scalar_monomial(1), 4);
  StructureReport report = near_invariance_report(
      e, SubspaceBasis(1, e.ambient()), family.columns, StructureOptions{});
  CHECK(report.defect == 0);
  CHECK(report.verdict == Verdict::Pass);
}

TEST_CASE("near invariance across the corpus: p <= m and inclusion 3.1") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    MatrixSymbol u = test::random_symmetric_symbol(seed + 1000);
    HankelFamily family = HankelFamily::build(u, u.degree() + 4);
    SchmidtAnalysis an = analyze_family(family, ClusterOptions{});
    for (const auto& cluster : an.h.clusters) {
      SubspaceBasis e_k(u.dim(), cluster.basis.ambient());
      for (const auto& kc : an.k.clusters) {
        if (std::abs(kc.s - cluster.s) < 1e-8 * an.h.clusters.front().s) {
          e_k = kc.basis;
        }
      }
      StructureReport report = near_invariance_report(
          cluster.basis, e_k, family.columns, StructureOptions{});
      CHECK(report.defect <= u.dim());
      CHECK(report.verdict == Verdict::Pass);
    }
  }
}

TEST_CASE("full wandering check on the named examples") {
  {
    Cluster c = top_cluster(example36('A', 2), 6);
    WanderingData data = full_wandering_check(c.e_h, c.e_k, c.family.columns,
                                              StructureOptions{});
    CHECK(data.verdict == Verdict::Pass);
    CHECK(data.wandering.dim() == 2);
    CHECK(data.cond_w0 < 1e8);
  }
  {
    Cluster c = top_cluster(example46(), 6);
    WanderingData data = full_wandering_check(c.e_h, c.e_k, c.family.columns,
                                              StructureOptions{});
    CHECK(data.verdict == Verdict::Pass);
    CHECK(data.wandering.dim() == 2);
  }
  {
    Cluster c = top_cluster(scalar_monomial(1), 5);
    WanderingData data = full_wandering_check(c.e_h, c.e_k, c.family.columns,
                                              StructureOptions{});
    CHECK(data.verdict == Verdict::Pass);
    CHECK(data.wandering.dim() == 1);
  }
}

TEST_CASE("full wandering check is NotApplicable when r < m") {
  // 1-dimensional top cluster of a generic m=2 symbol has r = 1 < 2
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    MatrixSymbol u = test::random_symmetric_symbol(seed);
    if (u.dim() < 2) continue;
    HankelFamily family = HankelFamily::build(u, u.degree() + 4);
    SchmidtAnalysis an = analyze_family(family, ClusterOptions{});
    bool found = false;
    for (const auto& cluster : an.h.clusters) {
      if (cluster.multiplicity == 1) {
        WanderingData data =
            full_wandering_check(cluster.basis, SubspaceBasis(u.dim(),
                                 cluster.basis.ambient()),
                                 family.columns, StructureOptions{});
        CHECK(data.verdict == Verdict::NotApplicable);
        found = true;
        break;
      }
    }
    if (found) return;
  }
  FAIL("no 1-dimensional cluster found in the corpus slice");
}

TEST_CASE("scalar structure of u = z^n: h = 1 and E' = span{1..z^n}") {
  for (int n = 1; n <= 3; ++n) {
    Cluster c = top_cluster(scalar_monomial(n), n + 4);
    ScalarStructureResult result =
        scalar_structure(c.e_h, c.s, StructureOptions{});
    CHECK(result.verdict == Verdict::Pass);
    CHECK(result.case_two_depth == 0);
    // h is a unimodular constant
    CHECK(result.h.pos() >= 0);
    CHECK(std::abs(std::abs(result.h.coeff(0, 0)) - 1.0) < 1e-12);
    CHECK(result.model_space.dim() == n + 1);
    std::vector<FourierVec> monos;
    for (int k = 0; k <= n; ++k) monos.push_back(FourierVec::monomial(1, 0, k));
    CHECK(subspaces_equal(result.model_space,
                          span_of(monos, result.model_space.truncation()),
                          1e-10));
  }
}

TEST_CASE("scalar structure on the truncated Blaschke symbol") {
  ScalarSeries phi = blaschke_scalar({Complex(0.5, 0.0)}, 24);
  MatrixSymbol u = scalar_diag_symbol(phi, 1);
  HankelFamily family = HankelFamily::build(u, 24);
  SchmidtAnalysis an =
      analyze_family(family, ClusterOptions{1e-8, 2.0 * phi.tail_bound});
  REQUIRE(!an.h.clusters.empty());
  StructureOptions opt;
  opt.subspace_tol = 10.0 * phi.tail_bound;
  ScalarStructureResult result =
      scalar_structure(an.h.clusters.front().basis, an.h.clusters.front().s,
                       opt);
  CHECK(result.verdict == Verdict::Pass);
  for (const auto& check : result.checks) {
    if (check.name == "multiplier-isometric") {
      CHECK(check.residual < 1e-6);
    }
  }
}

TEST_CASE("scalar structure case II: E = span{z}") {
  SubspaceBasis e = span_of({FourierVec::monomial(1, 0, 1)}, 4);
  ScalarStructureResult result = scalar_structure(e, 1.0, StructureOptions{});
  CHECK(result.verdict == Verdict::Pass);
  CHECK(result.case_two_depth == 1);
  // h = z times a unimodular constant
  CHECK(std::abs(result.h.coeff(0, 0)) < 1e-13);
  CHECK(std::abs(std::abs(result.h.coeff(0, 1)) - 1.0) < 1e-12);
  CHECK(result.model_space.dim() == 1);
}

TEST_CASE("beurling extraction") {
  // E' = span{1..z^n}: Phi = z^{n+1} up to a unimodular constant
  for (int n = 1; n <= 3; ++n) {
    std::vector<FourierVec> monos;
    for (int k = 0; k <= n; ++k) monos.push_back(FourierVec::monomial(1, 0, k));
    SubspaceBasis eprime = span_of(monos, n + 5);
    BeurlingData data = beurling_extract(eprime, StructureOptions{});
    CHECK(data.verdict == Verdict::Pass);
    REQUIRE(data.phi.cols() == 1);
    FourierVec phi = data.phi.column(0);
    CHECK(std::abs(std::abs(phi.coeff(0, n + 1)) - 1.0) < 1e-11);
    CHECK(std::abs(phi.norm() - 1.0) < 1e-11);
  }

  // full window: empty inner factor
  {
    std::vector<FourierVec> monos;
    for (int k = 0; k <= 3; ++k) monos.push_back(FourierVec::monomial(1, 0, k));
    SubspaceBasis full = span_of(monos, 3);
    BeurlingData data = beurling_extract(full, StructureOptions{});
    CHECK(data.verdict == Verdict::Pass);
    CHECK(data.phi.cols() == 1);
    CHECK(data.phi.norm_frobenius_sq() == 0.0);
    CHECK_FALSE(data.degenerate);
  }

  // zero subspace: degenerate, flagged not asserted
  {
    SubspaceBasis zero(1, 5);
    BeurlingData data = beurling_extract(zero, StructureOptions{});
    CHECK(data.degenerate);
  }

  // not S*-invariant input is refused
  {
    SubspaceBasis bad = span_of({FourierVec::monomial(1, 0, 1)}, 4);
    CHECK_THROWS_AS((void)beurling_extract(bad, StructureOptions{}),
                    NotInvariant);
  }
}

TEST_CASE("theorem 3.5 consequences on corpus instances with r = m") {
  int applicable = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    MatrixSymbol u = test::random_symmetric_symbol(seed);
    HankelFamily family = HankelFamily::build(u, u.degree() + 4);
    SchmidtAnalysis an = analyze_family(family, ClusterOptions{});
    for (const auto& cluster : an.h.clusters) {
      if (wandering_part(cluster.basis).dim() != u.dim()) continue;
      SubspaceBasis e_k(u.dim(), cluster.basis.ambient());
      for (const auto& kc : an.k.clusters) {
        if (std::abs(kc.s - cluster.s) < 1e-8 * an.h.clusters.front().s) {
          e_k = kc.basis;
        }
      }
      WanderingData data = full_wandering_check(cluster.basis, e_k,
                                                family.columns,
                                                StructureOptions{});
      if (data.verdict == Verdict::Inconclusive) continue;
      CHECK(data.verdict == Verdict::Pass);
      ++applicable;
    }
  }
  CHECK(applicable > 0);
}
