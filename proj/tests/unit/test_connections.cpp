#include "holonome/connections.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace holonome;

namespace {

std::size_t rank_of_forms(const Arrangement& arr, const std::vector<std::size_t>& idx) {
  QMatrix m(idx.size(), arr.base_dim);
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < arr.base_dim; ++c) m(r, c) = arr.forms[idx[r]][c];
  return rank(m);
}

Representation rep_of(const char* alg, const char* kind, Normalization norm = Normalization::basic) {
  return build_rep(parse_root_system(alg, norm), parse_rep_kind(kind));
}

}  // namespace

TEST_SUITE("connections") {
  TEST_CASE("coplanar families match a brute-force rank search") {
    std::vector<Arrangement> arrangements;
    arrangements.push_back(build_kz(rep_of("A1", "vector"), 4, 0.1, false).arrangement);
    arrangements.push_back(build_casimir(rep_of("B3", "vector"), 0.1, false).arrangement);
    arrangements.push_back(build_casimir(rep_of("D4", "vector"), 0.1, false).arrangement);
    for (const auto& arr : arrangements) {
      const auto families = coplanar_families(arr);
      const std::size_t n = arr.forms.size();
      std::set<std::vector<std::size_t>> expected;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          std::vector<std::size_t> fam;
          for (std::size_t c = 0; c < n; ++c)
            if (rank_of_forms(arr, {a, b, c}) == 2) fam.push_back(c);
          expected.insert(fam);
        }
      CHECK(std::set<std::vector<std::size_t>>(families.begin(), families.end()) == expected);
    }
  }

  TEST_CASE("arrangement validation") {
    Arrangement arr;
    arr.base_dim = 2;
    arr.forms = {{1, 0}, {2, 0}};
    CHECK_THROWS_AS(arr.validate(), std::invalid_argument);
    arr.forms = {{0, 0}};
    CHECK_THROWS_AS(arr.validate(), std::invalid_argument);
  }

  TEST_CASE("KZ and Casimir connections are flat, perturbations are not") {
    const auto kz = build_kz(rep_of("A1", "vector"), 4, 0.1);
    CHECK(kz.size() == 6);
    const auto flat = kohno_flatness_check(kz);
    CHECK(flat.pass);
    CHECK(flat.families == 7);  // four triples and three pairs of disjoint transpositions

    const auto cas = build_casimir(rep_of("A2", "adjoint"), 0.1);
    CHECK(kohno_flatness_check(cas).pass);
    QMatrix delta(cas.fiber_dim, cas.fiber_dim);
    delta(0, cas.fiber_dim - 1) = 1;
    const auto bent = perturb_residue(cas, 0, delta);
    CHECK_FALSE(bent.verified_flat);
    const auto report = kohno_flatness_check(bent);
    CHECK_FALSE(report.pass);
    CHECK(!report.offending_family.empty());

    const auto numeric = kohno_flatness_check(cas, false, 1e-12);
    CHECK(numeric.pass);
    CHECK(numeric.max_norm < 1e-12);
  }

  TEST_CASE("commutant of the KZ residues") {
    // One residue equal to the flip on C^2 (x) C^2: eigenspaces of dimension 3 and 1.
    CHECK(commutant_dim(build_kz(rep_of("A1", "gl:vector"), 2, 0.1)) == 3 * 3 + 1 * 1);
    // Three points: the residues generate the image of the symmetric group, whose commutant is
    // the image of gl_2 on the 4- and 2-dimensional summands.
    CHECK(commutant_dim(build_kz(rep_of("A1", "vector"), 3, 0.1)) == 4 * 4 + 2 * 2);
  }

  TEST_CASE("Coxeter-KZ needs weights constant on orbits") {
    const RootSystem a2 = parse_root_system("A2");
    CHECK_THROWS_AS(build_ckz(a2, reflection_rep(a2), {1.0, 2.0, 1.0}), std::invalid_argument);
    const RootSystem b2 = parse_root_system("B2");
    const auto orbits = b2.root_orbits();
    std::vector<cplx> k(b2.num_positive());
    for (std::size_t a : orbits[0]) k[a] = 0.2;
    for (std::size_t a : orbits[1]) k[a] = 0.7;
    const auto conn = build_ckz(b2, reflection_rep(b2), k);
    CHECK(kohno_flatness_check(conn).pass);
  }

  TEST_CASE("zero-weight subspace of sl2 modules") {
    // e^2 kills the zero weight vector of V_m exactly when weight 4 is absent, i.e. m <= 2.
    for (int m : {0, 2, 4, 6}) {
      const auto rep = rep_of("A1", ("irrep(" + std::to_string(m) + ")").c_str());
      const auto report = check_v0_identity(rep);
      CAPTURE(m);
      CHECK(report.zero_weight_dim == 1);
      CHECK(report.v0_dim == (m <= 2 ? 1u : 0u));
      // An empty V[[0]] is reported as a failure rather than passing vacuously.
      CHECK(report.pass == (m <= 2));
    }
    const auto adj = check_v0_identity(rep_of("B2", "adjoint"));
    CHECK(adj.pass);
    CHECK(adj.v0_dim == 2);
  }

  TEST_CASE("restriction to an invariant block") {
    const auto kz = build_kz(rep_of("A1", "vector"), 2, 0.1);
    // Basis |00>, |01>, |10>, |11>: span{|01>, |10>} is invariant under Omega.
    const auto block = restrict_connection(kz, {1, 2});
    CHECK(block.fiber_dim == 2);
    CHECK_THROWS_AS(restrict_connection(kz, {0, 1}), std::invalid_argument);
  }

  TEST_CASE("comparison modulo scalars") {
    const auto rep = rep_of("A2", "vector");
    const auto cas = build_casimir(rep, 0.1);
    std::vector<QMatrix> shifted = cas.exact_residues;
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += frac(long(i) + 1, 3) * QMatrix::identity(rep.dim);
    const auto cmp = compare_mod_scalars(shifted, cas.exact_residues);
    CHECK(cmp.equal_mod_scalars);
    CHECK(cmp.scalars[2] == 1);
    shifted[0](0, 1) += 1;
    CHECK_FALSE(compare_mod_scalars(shifted, cas.exact_residues).equal_mod_scalars);
  }
}
