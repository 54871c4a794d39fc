#include "holonome/transport.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

using namespace holonome;

namespace {

constexpr double pi = std::numbers::pi;

CMatrix expm(const CMatrix& m) {
  Eigen::MatrixXcd a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  // Scaling and squaring with a long Taylor series; the test matrices are small.
  int s = 0;
  while (a.cwiseAbs().maxCoeff() > 0.5) {
    a /= 2.0;
    ++s;
  }
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols()), sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / double(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  CMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = sum(i, j);
  return out;
}

// Connection with explicit numeric residues on the forms z_i - z_j of C^n.
FlatConnection numeric_kz_shape(std::size_t n, std::vector<CMatrix> residues) {
  FlatConnection conn;
  conn.arrangement.base_dim = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Rational> f(n, Rational(0));
      f[i] = 1;
      f[j] = -1;
      conn.arrangement.forms.push_back(f);
    }
  conn.fiber_dim = residues.front().rows();
  conn.numeric_override = std::move(residues);
  conn.label = "numeric";
  conn.validate();
  return conn;
}

double brute_bottleneck(const std::vector<cplx>& a, std::vector<cplx> b) {
  std::vector<std::size_t> perm(b.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  double best = 1e300;
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_SUITE("transport") {
  TEST_CASE("braid paths exchange neighbouring points") {
    const PathSpec p = braid_path_config(3, 1);
    CHECK(std::abs(p.start()[0] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(p.end()[0] - cplx(2.0)) < 1e-15);
    CHECK(std::abs(p.end()[1] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(p.end()[2] - cplx(3.0)) < 1e-15);
    const PathSpec r = p.reversed();
    CHECK(std::abs(r.start()[0] - cplx(2.0)) < 1e-15);
    CHECK_THROWS(p.then(p));
  }

  TEST_CASE("Cartan braid paths end at the reflected point") {
    const RootSystem b2 = parse_root_system("B2");
    const Point x0 = default_cartan_basepoint(b2);
    for (std::size_t i = 0; i < 2; ++i) {
      const PathSpec p = braid_path_cartan(b2, i + 1, x0);
      const IntVec root = b2.positive_roots[b2.simple[i]];
      // s(x) = x - <alpha, x> alpha^vee with alpha^vee = 2 alpha / <alpha, alpha>.
      cplx pairing = 0.0;
      double len2 = 0.0;
      for (std::size_t c = 0; c < x0.size(); ++c) {
        pairing += double(root[c]) * x0[c];
        len2 += double(root[c] * root[c]);
      }
      for (std::size_t c = 0; c < x0.size(); ++c)
        CHECK(std::abs(p.end()[c] - (x0[c] - pairing * 2.0 * double(root[c]) / len2)) < 1e-13);
    }
    Point wall(2, cplx(1.0));
    CHECK_THROWS_AS(braid_path_cartan(b2, 1, wall), std::invalid_argument);
  }

  TEST_CASE("wall clearance agrees with dense sampling") {
    const auto conn = numeric_kz_shape(3, std::vector<CMatrix>(3, CMatrix::identity(1)));
    const PathSpec p = braid_path_config(3, 2, {}, 0.3);
    double sampled = 1e300;
    for (int s = 0; s <= 200000; ++s) {
      const Point x = p.segments.front().point(s / 200000.0);
      for (std::size_t f = 0; f < conn.size(); ++f) sampled = std::min(sampled, std::abs(conn.arrangement.evaluate(f, x)));
    }
    const double computed = wall_clearance(p, conn.arrangement);
    CHECK(computed <= sampled + 1e-12);
    CHECK(computed == doctest::Approx(sampled).epsilon(1e-6));
  }

  TEST_CASE("commuting residues transport to a closed-form exponential") {
    // Along the first half-twist of (1, 2, 3): log(z1 - z2) gains i pi,
    // log(z1 - z3) goes from log(-2) to log(-1) and log(z2 - z3) from log(-1) to log(-2).
    const std::vector<cplx> a{0.3, cplx(-0.2, 0.1), 0.05}, b{cplx(0.1, 0.4), 0.25, -0.3};
    std::vector<CMatrix> res;
    for (int f = 0; f < 3; ++f) {
      const std::vector<cplx> d{a[f], b[f]};
      res.push_back(CMatrix::diagonal(d));
    }
    const auto conn = numeric_kz_shape(3, res);
    const cplx i_pi(0.0, pi);
    const CMatrix expected =
        expm(res[0] * i_pi + res[1] * cplx(std::log(0.5)) + res[2] * cplx(std::log(2.0)));
    for (bool fixed : {false, true}) {
      TransportOptions opts;
      opts.fixed_step = fixed;
      opts.tol = fixed ? 1e-8 : 1e-11;
      opts.fixed_steps = 800;
      const auto out = parallel_transport(conn, braid_path_config(3, 1), opts);
      CAPTURE(fixed);
      CHECK(max_abs_diff(out.matrix, expected) < (fixed ? 1e-7 : 1e-10));
      CHECK(out.err_estimate <= opts.tol);
    }
  }

  TEST_CASE("zero connection transports to the identity") {
    const auto conn = numeric_kz_shape(2, {CMatrix(3, 3)});
    const auto out = parallel_transport(conn, braid_path_config(2, 1));
    CHECK(max_abs_diff(out.matrix, CMatrix::identity(3)) == 0.0);
  }

  TEST_CASE("two-point KZ monodromy of sl2") {
    // rho(T) = P exp(i pi h Omega); Omega = 1/2 on Sym^2 and -3/2 on the alternating square.
    const cplx h(0.13, 0.02);
    const auto vec = build_rep(parse_root_system("A1"), parse_rep_kind("vector"));
    const auto mono = monodromy_config(build_kz(vec, 2, h), {2, 2});
    const cplx i_pi_h = cplx(0.0, pi) * h;
    std::vector<cplx> expected{std::exp(0.5 * i_pi_h), std::exp(0.5 * i_pi_h), std::exp(0.5 * i_pi_h),
                               -std::exp(-1.5 * i_pi_h)};
    CHECK(spectral_distance(spectrum(mono.generators[0]), expected) < 1e-9);
  }

  TEST_CASE("monodromy satisfies the braid relations") {
    const auto rs = parse_root_system("A2");
    const auto adj = build_rep(rs, parse_rep_kind("adjoint"));
    const auto lift = tits_lift(adj);
    const auto mono = monodromy_cartan(build_casimir(adj, 0.1), rs, lift.matrices, "tits");
    CHECK(verify_braid_relations(mono).max_residual < 1e-8);

    const auto vec = build_rep(rs, parse_rep_kind("vector"));
    const auto kz = monodromy_config(build_kz(vec, 4, 0.07), {3, 3, 3, 3}, {}, 2);
    CHECK(kz.generators.size() == 3);
    CHECK(verify_braid_relations(kz).max_residual < 1e-8);
  }

  TEST_CASE("fixed-step transport is reproducible bit for bit") {
    const auto vec = build_rep(parse_root_system("A1"), parse_rep_kind("vector"));
    TransportOptions opts;
    opts.fixed_step = true;
    opts.tol = 1e-6;
    const auto conn = build_kz(vec, 3, 0.1);
    const auto a = monodromy_config(conn, {2, 2, 2}, opts, 1);
    const auto b = monodromy_config(conn, {2, 2, 2}, opts, 2);
    for (std::size_t g = 0; g < a.generators.size(); ++g) CHECK(max_abs_diff(a.generators[g], b.generators[g]) == 0.0);
  }

  TEST_CASE("spectral distance is an optimal matching") {
    // Greedy nearest-neighbour pairing would give 1.9 here.
    CHECK(spectral_distance({0.0, 1.0}, {0.9, 1.9}) == doctest::Approx(0.9));
    std::mt19937 rng(3);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<cplx> a(5), b(5);
      for (auto& z : a) z = {g(rng), g(rng)};
      for (auto& z : b) z = {g(rng), g(rng)};
      CHECK(spectral_distance(a, b) == doctest::Approx(brute_bottleneck(a, b)).epsilon(1e-12));
    }
  }

  TEST_CASE("Hecke and BMW residuals vanish on exact examples") {
    const cplx q(1.1, 0.2);
    // Diagonal operator with eigenvalues q and -1/q.
    const std::vector<cplx> d{q, -1.0 / q};
    CHECK(hecke_check({CMatrix::diagonal(d)}, {q}).max_residual < 1e-14);
    CHECK(hecke_check({CMatrix::identity(2)}, {q}).max_residual > 1e-3);
    CHECK_THROWS_AS(bmw_check({CMatrix::identity(2)}, 1.0, 1.0), std::invalid_argument);
  }

  TEST_CASE("words and comparisons") {
    for (std::size_t g = 1; g <= 3; ++g)
      for (std::size_t len = 1; len <= 3; ++len) {
        std::size_t count = 0, power = 1;
        for (std::size_t l = 1; l <= len; ++l) count += (power *= g);
        CHECK(default_words(g, len).size() == count);
      }
    std::mt19937 rng(9);
    std::normal_distribution<double> g;
    auto random_matrix = [&] {
      CMatrix m(3, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = {g(rng), g(rng)};
      return m;
    };
    const std::vector<CMatrix> a{random_matrix(), random_matrix()};
    const CMatrix p = random_matrix(), pinv = inverse(p);
    const std::vector<CMatrix> b{p * a[0] * pinv, p * a[1] * pinv};
    CHECK(kd_compare(a, b, default_words(2, 3), 1e-9).pass);
    const std::vector<CMatrix> c{a[0] * cplx(1.01), a[1]};
    CHECK_FALSE(kd_compare(a, c, default_words(2, 3), 1e-9).pass);
  }

  TEST_CASE("parameter dictionary") {
    const cplx h(0.21, -0.03);
    CHECK(std::abs(q_from_h(h, 0.5) - std::exp(cplx(0.0, pi) * h)) < 1e-15);
    CHECK(std::abs(q_from_h(h, 1.0, 1.0) - std::exp(cplx(0.0, pi) * h)) < 1e-15);
  }
}
