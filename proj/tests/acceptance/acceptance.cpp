// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "holonome/connections.hpp"
#include "holonome/duality.hpp"
#include "holonome/liecore.hpp"
#include "holonome/quantum.hpp"
#include "holonome/transport.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace holonome;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("%s %2d %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// Runs one criterion; an exception counts as a failure with its message as detail.
void criterion(int id, const std::string& title, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  report(id, title, pass, detail.str());
}

const cplx I(0.0, 1.0);
const double pi = std::numbers::pi;

MonodromyRep kz_monodromy(const std::string& algebra, const std::string& rep, std::size_t n, double h,
                          Normalization norm = Normalization::basic, double tol = 1e-10) {
  const Representation V = build_rep(parse_root_system(algebra, norm), parse_rep_kind(rep));
  TransportOptions opts;
  opts.tol = tol;
  return monodromy_config(build_kz(V, n, h), std::vector<std::size_t>(n, V.dim), opts);
}

MonodromyRep casimir_monodromy(const std::string& algebra, const std::string& rep, double h) {
  const RootSystem rs = parse_root_system(algebra);
  const Representation V = build_rep(rs, parse_rep_kind(rep));
  return monodromy_cartan(build_casimir(V, h), rs, tits_lift(V).matrices, "tits");
}

std::vector<IntVec> artin_orders(std::size_t gens) {
  std::vector<IntVec> m(gens, IntVec(gens, 2));
  for (std::size_t i = 0; i < gens; ++i) {
    m[i][i] = 1;
    if (i + 1 < gens) m[i][i + 1] = m[i + 1][i] = 3;
  }
  return m;
}

// Projection onto the invariant line of V (x) V along the invariant complement: w phi / (phi w),
// with w spanning the joint kernel of the coproduct action and phi the joint left kernel.
QMatrix invariant_projection(const Representation& V) {
  const std::size_t d = V.dim;
  const QMatrix id = QMatrix::identity(d);
  RowReducer right(d * d), left(d * d);
  for (std::size_t r = 0; r < V.e.size(); ++r)
    for (const QMatrix* x : {&V.e[r], &V.f[r], &V.h[r]}) {
      const QMatrix delta = kron(*x, id) + kron(id, *x);
      for (std::size_t i = 0; i < d * d; ++i) {
        std::vector<Rational> row(d * d), col(d * d);
        for (std::size_t j = 0; j < d * d; ++j) {
          row[j] = delta(i, j);
          col[j] = delta(j, i);
        }
        right.add_row(row);
        left.add_row(col);
      }
    }
  const QMatrix w = right.nullspace(), phi = left.nullspace();
  if (w.cols() != 1 || phi.cols() != 1) throw std::runtime_error("invariant line of V (x) V is not one-dimensional");
  Rational pairing = 0;
  for (std::size_t i = 0; i < d * d; ++i) pairing += phi(i, 0) * w(i, 0);
  return w * phi.transpose() * Rational(1 / pairing);
}

double slope(double e1, double d1, double e2, double d2) { return std::log(d1 / d2) / std::log(e1 / e2); }

CMatrix exp_nilpotent_c(const CMatrix& x) {
  CMatrix out = CMatrix::identity(x.rows()), term = CMatrix::identity(x.rows());
  for (std::size_t k = 1; k <= x.rows(); ++k) {
    term = term * x * (1.0 / static_cast<double>(k));
    out += term;
  }
  return out;
}

CMatrix flip_c(std::size_t d) {
  CMatrix p(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) p(b * d + a, a * d + b) = 1.0;
  return p;
}

}  // namespace

int main() {
  criterion(1, "exact flatness (KZ, Casimir, Coxeter-KZ)", [](std::ostringstream& out) {
    const auto t0 = Clock::now();
    bool ok = true;
    std::size_t count = 0;
    auto take = [&](const FlatConnection& c, const std::string& name) {
      const FlatnessReport r = kohno_flatness_check(c, true);
      ++count;
      if (!r.pass) {
        ok = false;
        out << name << " not flat (" << r.detail << "); ";
      }
    };
    for (const char* alg : {"A1", "A2"})
      for (std::size_t n : {3, 4}) take(build_kz(build_rep(parse_root_system(alg), parse_rep_kind("vector")), n, 1.0, false),
                                        std::string("KZ ") + alg);
    for (const char* alg : {"A1", "A2", "A3", "B2"})
      for (const char* rep : {"vector", "adjoint"})
        take(build_casimir(build_rep(parse_root_system(alg), parse_rep_kind(rep)), 1.0, false),
             std::string("Casimir ") + alg + " " + rep);
    for (const char* alg : {"A2", "A3"}) {
      const RootSystem rs = parse_root_system(alg);
      take(build_ckz(rs, reflection_rep(rs), std::vector<cplx>(rs.num_positive(), 1.0), false), std::string("CKZ ") + alg);
    }
    const double secs = seconds_since(t0);
    out << count << " connections, all commutators exactly zero: " << (ok ? "yes" : "no") << "; " << secs << " s (limit 60 s)";
    return ok && secs < 60.0;
  });

  criterion(2, "Omega identities (gl_m, so_n, sp_2n)", [](std::ostringstream& out) {
    bool ok = true;
    for (const char* alg : {"A1", "A2"}) {
      const Representation V = build_rep(parse_root_system(alg), parse_rep_kind("gl:vector"));
      const bool eq = omega_pair(V, 1, 2, 2) == transposition_op({V.dim, V.dim}, 0, 1);
      out << "gl" << V.dim << " " << (eq ? "=" : "!=") << " (12); ";
      ok = ok && eq;
    }
    for (const char* alg : {"B1", "B2", "C1", "C2"}) {
      const RootSystem rs = parse_root_system(alg, Normalization::trace);
      const Representation V = build_rep(rs, parse_rep_kind("vector"));
      const long N = static_cast<long>(V.dim);
      const QMatrix expected = transposition_op({V.dim, V.dim}, 0, 1) - invariant_projection(V) * Rational(N);
      const bool eq = omega_pair(V, 1, 2, 2) == expected;
      out << (rs.series == Series::B ? "so" : "sp") << N << (eq ? " ok" : " MISMATCH") << "; ";
      ok = ok && eq;
    }
    return ok;
  });

  criterion(3, "Hecke factorization, gl2 vector n=3", [](std::ostringstream& out) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double h : {0.05, 0.1}) {
      const MonodromyRep m = kz_monodromy("A1", "gl:vector", 3, h);
      const cplx q = std::exp(I * pi * h);
      const ResidualReport r = hecke_check(m.generators, {q, q});
      out << "h=" << h << " residual " << r.max_residual << "; ";
      worst = std::max(worst, r.max_residual);
    }
    const double secs = seconds_since(t0);
    out << secs << " s (limit 120 s)";
    return worst <= 1e-6 && secs < 120.0;
  });

  criterion(4, "BMW factorization, so3 vector n=3 h=0.1", [](std::ostringstream& out) {
    const double h = 0.1;
    const MonodromyRep m = kz_monodromy("B1", "vector", 3, h, Normalization::trace);
    const BmwReport r = bmw_check(m.generators, std::exp(I * pi * h), std::exp(2.0 * I * pi * h));
    out << "cubic " << r.cubic.max_residual << ", tangle " << r.tangle.max_residual << " (tol 1e-6)";
    return r.max_residual() <= 1e-6;
  });

  criterion(5, "zero-weight identities on V[[0]]", [](std::ostringstream& out) {
    bool ok = true;
    for (auto [alg, rep] : std::vector<std::pair<const char*, const char*>>{
             {"A1", "adjoint"}, {"A2", "adjoint"}, {"B2", "vector"}, {"A2", "tensor_power(3)"}}) {
      const V0Report r = check_v0_identity(build_rep(parse_root_system(alg), parse_rep_kind(rep)));
      out << alg << " " << rep << ": dim V[[0]]=" << r.v0_dim << (r.pass ? " ok" : " FAIL " + r.failure) << "; ";
      ok = ok && r.pass && r.v0_dim > 0;
    }
    return ok;
  });

  criterion(6, "braid relations (KZ, Casimir, R-check, quantum Weyl)", [](std::ostringstream& out) {
    const double kz = verify_braid_relations(kz_monodromy("A1", "vector", 4, 0.1)).max_residual;
    const double cv = verify_braid_relations(casimir_monodromy("A2", "vector", 0.1)).max_residual;
    const double ca = verify_braid_relations(casimir_monodromy("A2", "adjoint", 0.1)).max_residual;
    const QModule v = uq_sln_vector(3, 0.2);
    const double rb = verify_braid_relations(rmat_rep(v, 3), artin_orders(2)).max_residual;
    const QModule cube = q_tensor_power(v, 3);
    const double sb = verify_braid_relations(qweyl_op(cube).S, qmodule_coxeter_orders(cube)).max_residual;
    out << "KZ sl2 n=4 " << kz << ", Casimir sl3 vector " << cv << ", adjoint " << ca << " (tol 1e-8); R-check " << rb
        << ", S_i " << sb << " on U_q(sl3) V^3 (tol 1e-10)";
    return kz <= 1e-8 && cv <= 1e-8 && ca <= 1e-8 && rb <= 1e-10 && sb <= 1e-10;
  });

  criterion(7, "sl2 Casimir monodromy vs quantum Weyl spectra", [](std::ostringstream& out) {
    double worst = 0.0;
    for (int m = 1; m <= 3; ++m)
      for (double h : {0.02, 0.05}) {
        const MonodromyRep mon = casimir_monodromy("A1", "irrep(" + std::to_string(m) + ")", h);
        const QModule V = uq_sl2_module(m, std::log(q_from_h(h, 1.0)));
        const CMatrix S = qweyl_op(V, QWeylNormalization::casimir).S[0];
        worst = std::max(worst, spectral_distance(spectrum(mon.generators[0]), spectrum(S)));
      }
    out << "max spectral distance over m=1..3, h in {0.02,0.05}: " << worst << " (tol 1e-6)";
    return worst <= 1e-6;
  });

  criterion(8, "KZ monodromy vs R-matrix representation, gl2 n=3 h=0.05", [](std::ostringstream& out) {
    const double h = 0.05;
    const MonodromyRep mon = kz_monodromy("A1", "gl:vector", 3, h);
    const std::vector<CMatrix> r = rmat_rep(uq_sln_vector(2, I * pi * h), 3);
    const std::vector<Word> words = default_words(2, 3);
    const KdReport kd = kd_compare(mon.generators, r, words, 1e-6);
    out << words.size() << " words; spectra " << kd.max_spectral_dev << ", traces " << kd.max_trace_dev << " (tol 1e-6)";
    return kd.pass && kd.max_spectral_dev <= 1e-6 && kd.max_trace_dev <= 1e-6;
  });

  criterion(9, "Casimir/KZ residue coincidence on multiplicity spaces", [](std::ostringstream& out) {
    bool ok = true;
    for (auto [k, lambda] : std::vector<std::pair<std::size_t, IntVec>>{{2, {1, 1}}, {2, {2, 0}}, {3, {2, 1, 0}}}) {
      int d = 0;
      for (int x : lambda) d += x;
      const std::size_t n = k;
      std::size_t nonzero_blocks = 0;
      for (IntVec mu : partitions(d, n)) {
        mu.resize(n, 0);
        const ResidueMatchReport r = residue_match_check(k, n, lambda, mu);
        for (const auto& b : r.blocks) nonzero_blocks += b.dim > 0;
        ok = ok && r.pass && r.max_off_scalar == 0;
      }
      out << "(" << k << "," << n << ",(";
      for (std::size_t i = 0; i < lambda.size(); ++i) out << (i ? "," : "") << lambda[i];
      out << ")): " << nonzero_blocks << " nonempty blocks; ";
    }
    out << "off-scalar part " << (ok ? "exactly 0" : "NONZERO");
    return ok;
  });

  criterion(10, "transport: inverse path, homotopy, tolerance refinement", [](std::ostringstream& out) {
    const double tol = 1e-10;
    TransportOptions opts;
    opts.tol = tol;
    const Representation V2 = build_rep(parse_root_system("A1"), parse_rep_kind("vector"));
    const FlatConnection kz = build_kz(V2, 3, 0.1);
    const PathSpec path = braid_path_config(3, 1);
    const CMatrix fwd = parallel_transport(kz, path, opts).matrix;
    const CMatrix back = parallel_transport(kz, path.reversed(), opts).matrix;
    const double inv = max_abs_diff(back * fwd, CMatrix::identity(fwd.rows()));
    const CMatrix low = parallel_transport(kz, braid_path_config(3, 1, {}, 0.5), opts).matrix;
    const double homotopy = max_abs_diff(fwd, low);
    out << "inverse " << inv << ", homotopy " << homotopy << " (tol " << 2 * tol << "); ";

    // Five fixed jobs: the error against a tight reference must not grow when tol is halved.
    const RootSystem a2 = parse_root_system("A2"), b2 = parse_root_system("B2");
    const Representation v3 = build_rep(a2, parse_rep_kind("vector"));
    const Representation vb = build_rep(b2, parse_rep_kind("vector"));
    struct Job {
      FlatConnection conn;
      PathSpec path;
    };
    std::vector<Job> jobs = {
        {kz, braid_path_config(3, 2)},
        {build_kz(V2, 4, 0.2), braid_path_config(4, 2)},
        {build_casimir(v3, 0.1), braid_path_cartan(a2, 1)},
        {build_casimir(vb, 0.1), braid_path_cartan(b2, 2)},
        {build_ckz(a2, reflection_rep(a2), std::vector<cplx>(3, 0.15)), braid_path_cartan(a2, 2)},
    };
    bool monotone = true;
    for (const auto& job : jobs) {
      TransportOptions ref_opts, o1, o2;
      ref_opts.tol = 1e-13;
      o1.tol = 1e-6;
      o2.tol = 5e-7;
      const CMatrix ref = parallel_transport(job.conn, job.path, ref_opts).matrix;
      const double e1 = max_abs_diff(parallel_transport(job.conn, job.path, o1).matrix, ref);
      const double e2 = max_abs_diff(parallel_transport(job.conn, job.path, o2).matrix, ref);
      out << "[" << e1 << " -> " << e2 << "]";
      monotone = monotone && e2 <= e1 + 1e-13 && e1 <= o1.tol;
    }
    return inv <= 2 * tol && homotopy <= 2 * tol && monotone;
  });

  criterion(11, "classical limits of R-check and S_i", [](std::ostringstream& out) {
    const std::vector<double> eps = {1e-2, 1e-3, 1e-4};
    bool ok = true;
    auto check = [&](const std::string& name, const std::function<double(double)>& dist) {
      std::vector<double> d;
      for (double e : eps) d.push_back(dist(e));
      const double s1 = slope(eps[0], d[0], eps[1], d[1]), s2 = slope(eps[1], d[1], eps[2], d[2]);
      out << name << " slopes " << s1 << ", " << s2 << "; ";
      ok = ok && std::abs(s1 - 1.0) <= 0.2 && std::abs(s2 - 1.0) <= 0.2;
    };
    check("R sl3", [](double e) {
      return max_abs_diff(r_matrix(uq_sln_vector(3, std::log(1.0 + e)), uq_sln_vector(3, std::log(1.0 + e))).Rcheck, flip_c(3));
    });
    check("R sl2 V2", [](double e) {
      const QModule m = uq_sl2_module(2, std::log(1.0 + e));
      return max_abs_diff(r_matrix(m, m).Rcheck, flip_c(3));
    });
    // s~_i = exp(e_i) exp(-f_i) exp(e_i) from the q = 1 module matrices.
    auto tits = [](const QModule& classical, std::size_t i) {
      return exp_nilpotent_c(classical.E[i]) * exp_nilpotent_c(classical.F[i] * -1.0) * exp_nilpotent_c(classical.E[i]);
    };
    check("S sl3 V^2", [&](double e) {
      const QModule qm = q_tensor_power(uq_sln_vector(3, std::log(1.0 + e)), 2);
      const QModule cl = q_tensor_power(uq_sln_vector(3, 0.0), 2);
      return std::max(max_abs_diff(qweyl_op(qm).S[0], tits(cl, 0)), max_abs_diff(qweyl_op(qm).S[1], tits(cl, 1)));
    });
    check("S sl2 V3", [&](double e) {
      return max_abs_diff(qweyl_op(uq_sl2_module(3, std::log(1.0 + e))).S[0], tits(uq_sl2_module(3, 0.0), 0));
    });
    return ok;
  });

  criterion(12, "Schur-Weyl zero weight dimensions, n <= 5", [](std::ostringstream& out) {
    bool ok = true;
    std::size_t count = 0;
    for (std::size_t n = 1; n <= 5; ++n)
      for (const IntVec& lambda : partitions(static_cast<int>(n), n)) {
        const SchurWeylPair p = schur_weyl_zero_weight(n, lambda);
        ++count;
        if (!p.equal()) {
          ok = false;
          out << "mismatch at n=" << n << "; ";
        }
      }
    out << count << " partitions, all pairs equal: " << (ok ? "yes" : "no");
    return ok;
  });

  std::printf("%s: %d of 12 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
