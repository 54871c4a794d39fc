#include "holonome/quantum.hpp"
#include "holonome/transport.hpp"

#include <doctest.h>

#include <numbers>

using namespace holonome;

namespace {

constexpr double pi = std::numbers::pi;

CMatrix shift(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
  return m;
}

}  // namespace

TEST_SUITE("quantum") {
  TEST_CASE("q-integers") {
    const cplx q(0.8, 0.3);
    CHECK(std::abs(q_int(3, q) - (q * q + 1.0 + 1.0 / (q * q))) < 1e-14);
    CHECK(std::abs(q_int(0, q)) < 1e-15);
    CHECK(std::abs(q_int(5, 1.0) - 5.0) < 1e-15);
    // (q^2 + q^-2)(q + q^-1) at q = -1.
    CHECK(std::abs(q_int(4, -1.0) + 4.0) < 1e-12);
    CHECK(std::abs(q_fact(3, q) - q_int(2, q) * q_int(3, q)) < 1e-14);
    CHECK(std::abs(q_fact(0, q) - 1.0) < 1e-15);
  }

  TEST_CASE("q-exponential") {
    // At q = 1 it is the ordinary exponential of the shift: entries 1/(j-i)!.
    const CMatrix e = exp_q(shift(4), 1.0);
    CHECK(std::abs(e(0, 3) - 1.0 / 6.0) < 1e-15);
    CHECK(std::abs(e(1, 3) - 0.5) < 1e-15);
    const cplx q(1.2, 0.1);
    const CMatrix eq = exp_q(shift(3), q);
    CHECK(std::abs(eq(0, 2) - q / q_int(2, q)) < 1e-14);
    CHECK_THROWS_AS(exp_q(CMatrix::identity(2), q), std::invalid_argument);
    // q = i makes [2]_q vanish.
    CHECK_THROWS_AS(exp_q(shift(3), cplx(0.0, 1.0)), std::invalid_argument);
    CHECK_NOTHROW(exp_q(shift(2), cplx(0.0, 1.0)));
  }

  TEST_CASE("modules satisfy the defining relations") {
    for (cplx log_q : {cplx(0.3), cplx(0.0, 0.4), cplx(0.2, -0.1)}) {
      CHECK(qmodule_residual(uq_sl2_module(3, log_q)) < 1e-12);
      CHECK(qmodule_residual(uq_sln_vector(4, log_q)) < 1e-12);
      CHECK(qmodule_residual(q_tensor(uq_sl2_module(1, log_q), uq_sl2_module(2, log_q))) < 1e-12);
      CHECK(qmodule_residual(q_tensor_power(uq_sln_vector(3, log_q), 3)) < 1e-12);
    }
    CHECK_THROWS(q_tensor(uq_sl2_module(1, 0.1), uq_sl2_module(1, 0.2)));
    CHECK_THROWS(q_tensor(uq_sl2_module(1, 0.1), uq_sln_vector(3, 0.1)));
  }

  TEST_CASE("sl2 R-matrix coefficients have the closed form") {
    // c_n = q^{n(n-1)/2} (q - q^-1)^n / [n]_q!
    for (cplx log_q : {cplx(0.3), cplx(0.0, 0.7)}) {
      const cplx q = std::exp(log_q);
      const RMatrix r = r_matrix(uq_sl2_module(2, log_q), uq_sl2_module(3, log_q));
      REQUIRE(r.coefficients.size() >= 3);
      for (int n = 0; n < 3; ++n) {
        const cplx expected = std::pow(q, n * (n - 1) / 2.0) * std::pow(q - 1.0 / q, n) / q_fact(n, q);
        CAPTURE(n);
        CHECK(std::abs(r.coefficients[n] - expected) < 1e-10);
      }
      CHECK(r.intertwining_residual < 1e-10);
    }
  }

  TEST_CASE("R-check on the top vector of V_m (x) V_m is q^{m^2/2}") {
    for (int m = 1; m <= 3; ++m) {
      const RMatrix r = r_matrix(uq_sl2_module(m, 0.25), uq_sl2_module(m, 0.25));
      CHECK(r.top_exponent == doctest::Approx(m * m / 2.0));
    }
  }

  TEST_CASE("vector R-matrix of sl_n satisfies the Hecke and braid relations") {
    const cplx log_q(0.1, 0.3);
    const cplx q = std::exp(log_q);
    const auto gens = rmat_rep(uq_sln_vector(3, log_q), 3);
    REQUIRE(gens.size() == 2);
    CHECK(hecke_check(gens, {q, q}).max_residual < 1e-12);
    CHECK(verify_braid_relations(gens, {{1, 3}, {3, 1}}).max_residual < 1e-12);
  }

  TEST_CASE("the plain flip does not intertwine for q != 1") {
    const QModule v = uq_sl2_module(1, 0.3);
    CMatrix flip(4, 4);
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) flip(b * 2 + a, a * 2 + b) = 1.0;
    CHECK(intertwining_residual(v, v, flip) > 1e-2);
    CHECK(intertwining_residual(v, v, r_matrix(v, v).Rcheck) < 1e-12);
  }

  TEST_CASE("quantum Weyl elements") {
    const cplx log_q(0.0, 0.3);
    for (int m = 1; m <= 4; ++m) {
      const QModule v = uq_sl2_module(m, log_q);
      for (auto norm : {QWeylNormalization::literal, QWeylNormalization::casimir}) {
        const QWeylOp op = qweyl_op(v, norm);
        CHECK(qweyl_weight_residual(v, op) < 1e-12);
      }
      // The Casimir-normalized square acts by a scalar on an irreducible module.
      const CMatrix s2 = power(qweyl_op(v, QWeylNormalization::casimir).S[0], 2);
      CHECK(max_abs_diff(s2, CMatrix::identity(v.dim) * s2(0, 0)) < 1e-12);
    }
    const QModule v3 = uq_sln_vector(3, log_q);
    const QWeylOp op = qweyl_op(v3);
    CHECK(verify_braid_relations(op.S, qmodule_coxeter_orders(v3)).max_residual < 1e-12);
    CHECK(parse_qweyl_normalization("casimir") == QWeylNormalization::casimir);
    CHECK_THROWS(parse_qweyl_normalization("other"));
  }

  TEST_CASE("at q = 1 the quantum Weyl element has the spectrum of the Tits lift") {
    const RootSystem a1 = parse_root_system("A1");
    for (int m = 1; m <= 4; ++m) {
      const auto classical = build_rep(a1, parse_rep_kind("irrep(" + std::to_string(m) + ")"));
      const CMatrix tits = tits_lift(classical).matrices[0].to_complex();
      const CMatrix s = qweyl_op(uq_sl2_module(m, 0.0)).S[0];
      CHECK(spectral_distance(spectrum(s), spectrum(tits)) < 1e-12);
    }
  }

  TEST_CASE("roots of unity are rejected where q-factorials vanish") {
    // q = exp(i pi / 2): [2]_q = 0, so exp_q of E on V_3 is undefined.
    CHECK_THROWS_AS(qweyl_op(uq_sl2_module(3, cplx(0.0, pi / 2))), std::invalid_argument);
  }
}
