#include "holonome/duality.hpp"

#include <doctest.h>

using namespace holonome;

TEST_SUITE("duality") {
  TEST_CASE("small highest-weight spaces") {
    CHECK(hw_space(2, 2, {2, 0}, {1, 1}).dim() == 1);
    CHECK(hw_space(2, 2, {1, 1}, {2, 0}).dim() == 0);
    const HWSpace det = hw_space(2, 2, {1, 1}, {1, 1});
    REQUIRE(det.dim() == 1);
    // x_{00} x_{11} - x_{10} x_{01}, exponents row-major.
    const Poly p = det.space.to_poly(det.basis);
    REQUIRE(p.size() == 2);
    const Rational a = p.at({1, 0, 0, 1}), b = p.at({0, 1, 1, 0});
    CHECK(a == -b);
    CHECK(hw_raising_failures(det) == 0);
    CHECK_THROWS_AS(hw_space(2, 3, {1, 1}, {1, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(hw_space(3, 3, {1, 2}, {1, 1, 1}), std::invalid_argument);
  }

  TEST_CASE("highest-weight multiplicities are Kostka numbers") {
    for (int d = 1; d <= 4; ++d)
      for (const IntVec& lambda : partitions(d, 3)) {
        IntVec lam = lambda;
        lam.resize(3, 0);
        for (const IntVec& shape : partitions(d, 3)) {
          IntVec mu = shape;
          mu.resize(3, 0);
          for (const IntVec& perm : weight_orbit(mu)) {
            CAPTURE(lam);
            CAPTURE(perm);
            CHECK(hw_space(3, 3, lam, perm).dim() == kostka_number(lam, perm));
          }
        }
      }
  }

  TEST_CASE("dimension formulas") {
    CHECK(hook_length_dim({2, 1}) == 2);
    CHECK(hook_length_dim({3, 1}) == 3);
    CHECK(hook_length_dim({3, 2}) == 5);
    CHECK(hook_length_dim({2, 2, 1}) == 5);
    CHECK(gl_irrep_dim({1, 1}, 3) == 3);
    CHECK(gl_irrep_dim({2, 1}, 3) == 8);
    CHECK(gl_irrep_dim({2}, 2) == 3);
    CHECK(gl_irrep_dim({1, 1, 1}, 2) == 0);
    CHECK(kostka_number({2, 1}, {1, 1, 1}) == 2);
    CHECK(kostka_number({3}, {1, 1, 1}) == 1);
    CHECK(kostka_number({1, 1, 1}, {3, 0, 0}) == 0);
  }

  TEST_CASE("partition helpers") {
    CHECK(partitions(4, 4).size() == 5);
    CHECK(partitions(4, 2).size() == 3);
    CHECK(transpose_partition({3, 1}) == IntVec{2, 1, 1});
    CHECK(transpose_partition({2, 2}) == IntVec{2, 2});
    const auto orbit = weight_orbit({0, 1, 0});
    REQUIRE(orbit.size() == 3);
    CHECK(orbit.front() == IntVec{1, 0, 0});
    CHECK(orbit.back() == IntVec{0, 0, 1});
  }

  TEST_CASE("row and column operators commute") {
    const PolySpace space = poly_space(2, 3, {1, 2, 1});
    for (std::size_t b = 0; b < space.dim(); b += 3) {
      Poly p{{space.basis[b], Rational(1)}};
      const Poly rc = column_op(row_op(p, 2, 3, 0, 1), 2, 3, 2, 0);
      const Poly cr = row_op(column_op(p, 2, 3, 2, 0), 2, 3, 0, 1);
      CHECK(rc == cr);
    }
  }

  TEST_CASE("the polynomial algebra is multiplicity free") {
    for (std::size_t k = 1; k <= 3; ++k)
      for (std::size_t n = 1; n <= 3; ++n)
        for (int d = 0; d <= 4; ++d) {
          const auto r = multiplicity_free_check(k, n, d);
          CAPTURE(k);
          CAPTURE(n);
          CAPTURE(d);
          CHECK(r.pass());
        }
  }

  TEST_CASE("Casimir residues are twice Omega up to scalars") {
    const auto r = residue_match_check(3, 3, {2, 1, 0}, {1, 1, 1});
    CHECK_MESSAGE(r.pass, r.failure);
    CHECK(r.omega_cross_check);
    CHECK(r.max_off_scalar == 0);
    const auto wrong = residue_match_check(3, 3, {2, 1, 0}, {1, 1, 1}, 1);
    CHECK_FALSE(wrong.pass);
  }

  TEST_CASE("zero weight spaces against the hook length formula") {
    CHECK(schur_weyl_zero_weight(2, {2}).zero_weight_dim == 1);
    CHECK(schur_weyl_zero_weight(3, {2, 1}).hook_dim == 2);
    for (std::size_t n = 1; n <= 4; ++n)
      for (const IntVec& lambda : partitions(int(n), n)) CHECK(schur_weyl_zero_weight(n, lambda).equal());
    CHECK_THROWS_AS(schur_weyl_zero_weight(3, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(schur_weyl_zero_weight(3, {1, 2}), std::invalid_argument);
  }
}
