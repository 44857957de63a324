#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>

#include "schmidt/spectral.hpp"
#include "support.hpp"

using namespace schmidt;

namespace {

MatrixSymbol scalar_monomial(int n) {
  Eigen::MatrixXcd one(1, 1);
  one << Complex(1.0, 0.0);
  return poly_symbol(1, {{n, one}});
}

SubspaceBasis span_of(const std::vector<FourierVec>& vecs, int truncation) {
  Eigen::MatrixXcd cols((truncation + 1) * vecs.front().dim(), vecs.size());
  for (std::size_t k = 0; k < vecs.size(); ++k) {
    cols.col(k) = to_coeff_vector(vecs[k], truncation);
  }
  return SubspaceBasis::from_span(cols, vecs.front().dim());
}

}  // namespace

TEST_CASE("hermitian_eig contract") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 1.0;
  EigenDecomposition eig = hermitian_eig(d);
  CHECK(eig.values(0) == doctest::Approx(0.0));
  CHECK(eig.values(1) == doctest::Approx(1.0));
  CHECK(eig.values(2) == doctest::Approx(1.0));

  std::mt19937_64 rng(3);
  Eigen::MatrixXcd a(50, 50);
  for (int r = 0; r < 50; ++r) {
    for (int c = 0; c < 50; ++c) a(r, c) = test::random_complex(rng);
  }
  Eigen::MatrixXcd herm = a + a.adjoint();
  EigenDecomposition e = hermitian_eig(herm);
  const Eigen::MatrixXcd recon =
      e.vectors * e.values.asDiagonal() * e.vectors.adjoint();
  CHECK((recon - herm).norm() <= 1e-11 * herm.norm());
  CHECK((e.vectors.adjoint() * e.vectors -
         Eigen::MatrixXcd::Identity(50, 50)).norm() < 1e-12);

  CHECK_THROWS_AS((void)hermitian_eig(a), NotHermitian);
}

TEST_CASE("schmidt subspaces of u = z^n") {
  for (int n = 1; n <= 4; ++n) {
    HankelFamily fam = HankelFamily::build(scalar_monomial(n), n + 4);
    SchmidtSpectrum spec = schmidt_subspaces(hsq_matrix(fam.gamma), 1, 'H',
                                             ClusterOptions{});
    REQUIRE(spec.clusters.size() == 1);
    CHECK(spec.clusters[0].s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spec.clusters[0].multiplicity == n + 1);
    CHECK(spec.clusters[0].cluster_residual < 1e-12);
    // basis spans {1, ..., z^n}
    std::vector<FourierVec> monos;
    for (int k = 0; k <= n; ++k) monos.push_back(FourierVec::monomial(1, 0, k));
    SubspaceBasis expected = span_of(monos, fam.gamma.truncation());
    CHECK(subspaces_equal(spec.clusters[0].basis, expected, 1e-10));
  }
}

TEST_CASE("example 3.6A with phi = z^2 has s = 1 of multiplicity 6") {
  SymbolSpec sp;
  sp.kind = "example-3.6A";
  sp.m = 2;
  sp.phi_degree = 2;
  HankelFamily fam = HankelFamily::build(realize_symbol(sp), 6);
  SchmidtSpectrum spec =
      schmidt_subspaces(hsq_matrix(fam.gamma), 2, 'H', ClusterOptions{});
  REQUIRE(spec.clusters.size() == 1);
  CHECK(spec.clusters[0].s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.clusters[0].multiplicity == 6);
}

TEST_CASE("u = z + z^2: three simple clusters, frozen from the eigensolve") {
  Eigen::MatrixXcd one(1, 1);
  one << Complex(1.0, 0.0);
  MatrixSymbol u = poly_symbol(1, {{1, one}, {2, one}});
  HankelFamily fam = HankelFamily::build(u, 6);
  SchmidtSpectrum spec =
      schmidt_subspaces(hsq_matrix(fam.gamma), 1, 'H', ClusterOptions{});
  REQUIRE(spec.clusters.size() == 3);
  CHECK(spec.clusters[0].s == doctest::Approx(1.80193773580484).epsilon(1e-10));
  CHECK(spec.clusters[1].s == doctest::Approx(1.24697960371747).epsilon(1e-10));
  CHECK(spec.clusters[2].s == doctest::Approx(0.44504186791263).epsilon(1e-10));
  for (const auto& c : spec.clusters) CHECK(c.multiplicity == 1);

  // brute-force cross-check on the explicit 3x3 corner
  Eigen::MatrixXcd corner = hsq_matrix(BlockHankelMatrix(u, 2));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(corner);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::sqrt(es.eigenvalues()(2 - k)) ==
          doctest::Approx(spec.clusters[k].s).epsilon(1e-12));
  }
}

TEST_CASE("clusters too close to separate raise AmbiguousClustering") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = std::pow(1.0 - 2e-8, 2);
  d(2, 2) = 0.0625;
  CHECK_THROWS_AS(
      (void)schmidt_subspaces(d, 1, 'H', ClusterOptions{}),
      AmbiguousClustering);
}

TEST_CASE("kernel-side eigenvalues are dropped but counted") {
  HankelFamily fam = HankelFamily::build(scalar_monomial(2), 6);
  SchmidtSpectrum spec =
      schmidt_subspaces(hsq_matrix(fam.gamma), 1, 'H', ClusterOptions{});
  CHECK(spec.clusters.size() == 1);
  CHECK(spec.dropped_dim == 4);  // window dim 7, multiplicity 3 at s=1
}

TEST_CASE("principal angles") {
  const int ambient = 4;
  Eigen::MatrixXcd e1 = Eigen::MatrixXcd::Zero(ambient, 1);
  e1(0, 0) = 1.0;
  Eigen::MatrixXcd e2 = Eigen::MatrixXcd::Zero(ambient, 1);
  e2(1, 0) = 1.0;
  Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(ambient, 1);
  mix(0, 0) = mix(1, 0) = 1.0 / std::sqrt(2.0);

  SubspaceBasis a(e1, 1), b(e2, 1), c(mix, 1);
  CHECK(principal_angles(a, a).back() == doctest::Approx(0.0));
  CHECK(principal_angles(a, b).back() ==
        doctest::Approx(std::numbers::pi / 2.0));
  CHECK(principal_angles(a, c).back() ==
        doctest::Approx(std::numbers::pi / 4.0));
  CHECK(subspaces_equal(a, a, 1e-12));
  CHECK_FALSE(subspaces_equal(a, b, 1e-12));
}

TEST_CASE("intersection with zH^2 and the wandering part") {
  std::vector<FourierVec> monos = {FourierVec::monomial(1, 0, 0),
                                   FourierVec::monomial(1, 0, 1)};
  SubspaceBasis e = span_of(monos, 3);
  SubspaceBasis inter = intersect_with_shifted(e);
  SubspaceBasis wand = wandering_part(e);
  REQUIRE(inter.dim() == 1);
  REQUIRE(wand.dim() == 1);
  CHECK(subspaces_equal(inter, span_of({FourierVec::monomial(1, 0, 1)}, 3),
                        1e-12));
  CHECK(subspaces_equal(wand, span_of({FourierVec::monomial(1, 0, 0)}, 3),
                        1e-12));

  // all basis vectors vanish at zero -> wandering part is trivial
  std::vector<FourierVec> shifted = {FourierVec::monomial(1, 0, 1),
                                     FourierVec::monomial(1, 0, 2)};
  CHECK(wandering_part(span_of(shifted, 3)).dim() == 0);

  // example 3.6A at phi = z^2: wandering dimension 2
  SymbolSpec sp;
  sp.kind = "example-3.6A";
  sp.m = 2;
  sp.phi_degree = 2;
  HankelFamily fam = HankelFamily::build(realize_symbol(sp), 6);
  SchmidtSpectrum spec =
      schmidt_subspaces(hsq_matrix(fam.gamma), 2, 'H', ClusterOptions{});
  CHECK(wandering_part(spec.clusters[0].basis).dim() == 2);
}

TEST_CASE("orthogonal complements within a subspace") {
  std::vector<FourierVec> monos = {FourierVec::monomial(1, 0, 0),
                                   FourierVec::monomial(1, 0, 1)};
  SubspaceBasis e = span_of(monos, 3);
  SubspaceBasis c =
      orth_complement_within(e, {FourierVec::monomial(1, 0, 1)});
  REQUIRE(c.dim() == 1);
  CHECK(subspaces_equal(c, span_of({FourierVec::monomial(1, 0, 0)}, 3),
                        1e-12));

  // u = z: E_K = span{1}, U_1 = z, so V = E_K minus (E_K cap U^perp) = {0}
  HankelFamily fam = HankelFamily::build(scalar_monomial(1), 4);
  SchmidtSpectrum kspec = schmidt_subspaces(
      fam.gamma_shifted.gamma() * fam.gamma_shifted.gamma().conjugate(), 1,
      'K', ClusterOptions{});
  REQUIRE(kspec.clusters.size() == 1);
  const SubspaceBasis& ek = kspec.clusters[0].basis;
  SubspaceBasis ek_perp = orth_complement_within(ek, fam.columns);
  CHECK(ek.dim() == 1);
  CHECK(ek_perp.dim() == 1);  // E_K is already orthogonal to U_1

  CHECK(numerical_rank(Eigen::MatrixXcd::Zero(4, 4)) == 0);
}

TEST_CASE("Schmidt bases are H_U-invariant and V has dimension <= m") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    MatrixSymbol u = test::random_symmetric_symbol(seed);
    HankelFamily fam = HankelFamily::build(u, u.degree() + 4);
    SchmidtAnalysis an = analyze_family(fam, ClusterOptions{});
    for (const auto& cluster : an.h.clusters) {
      const SubspaceBasis& q = cluster.basis;
      CHECK(wandering_part(q).dim() <= u.dim());
      for (int k = 0; k < q.dim(); ++k) {
        FourierVec img = apply_H(fam.gamma, q.column_function(k));
        Eigen::VectorXcd v = to_coeff_vector(img, fam.gamma.truncation());
        CHECK((v - q.project(v)).norm() <= 1e-10 * (cluster.s + 1.0));
      }
    }
    for (const auto& cluster : an.k.clusters) {
      SubspaceBasis perp = orth_complement_within(cluster.basis, fam.columns);
      CHECK(cluster.basis.dim() - perp.dim() <= u.dim());
    }
  }
}

TEST_CASE("results are independent of N beyond d + 4") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MatrixSymbol u = test::random_symmetric_symbol(seed + 60);
    HankelFamily lo = HankelFamily::build(u, u.degree() + 4);
    HankelFamily hi = HankelFamily::build(u, u.degree() + 7);
    SchmidtSpectrum slo =
        schmidt_subspaces(hsq_matrix(lo.gamma), u.dim(), 'H', ClusterOptions{});
    SchmidtSpectrum shi =
        schmidt_subspaces(hsq_matrix(hi.gamma), u.dim(), 'H', ClusterOptions{});
    REQUIRE(slo.clusters.size() == shi.clusters.size());
    for (std::size_t c = 0; c < slo.clusters.size(); ++c) {
      CHECK(std::abs(slo.clusters[c].s - shi.clusters[c].s) < 1e-10);
      SubspaceBasis padded =
          slo.clusters[c].basis.padded(hi.gamma.truncation());
      CHECK(subspaces_equal(padded, shi.clusters[c].basis, 1e-10));
    }
  }
}
