#include "holonome/cli.hpp"

#include "holonome/connections.hpp"
#include "holonome/duality.hpp"
#include "holonome/quantum.hpp"

#include <cmath>
#include <future>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace holonome {

namespace {

constexpr std::size_t kMatrixDumpCap = 64;

const std::map<std::string, std::string>& task_help() {
  static const std::map<std::string, std::string> help = {
      {"flatness",
       "Exact flatness of a logarithmic connection (connection: kz, casimir or ckz).\n"
       "For every coplanar family J of hyperplanes and every j in J checks [r_j, sum_{j' in J} r_j'] = 0\n"
       "over the rationals, so the result holds for every value of h. Fields: algebra, rep, connection,\n"
       "n (kz), perturb (adds an elementary matrix to the first residue; expected to fail)."},
      {"monodromy",
       "Monodromy generators of a connection along the standard half-twist paths.\n"
       "kz: rho(T_i) = P_{i,i+1} * transport around z_i <-> z_{i+1}; casimir: rho(S_i) = Tits lift * transport;\n"
       "ckz: rho(S_i) = s_i * transport. Checks the braid relations. Fields: algebra, rep, connection, n, h, tol."},
      {"spectra", "Eigenvalues of the monodromy generators (same fields as monodromy); checks transport convergence."},
      {"hecke",
       "KZ monodromy for gl_N on the vector representation, n points. Checks the Hecke relation\n"
       "(T_i - q)(T_i + q^-1) = 0 with q = exp(i pi h), unless q is given. The gl center is always included."},
      {"bmw",
       "KZ monodromy for so_N or sp_N on the vector representation (trace-form normalization). Checks\n"
       "the cubic relation (T - q)(T + q^-1)(T - r^-1) = 0 and the tangle relations\n"
       "E_i T_j^{+-1} E_i = r^{+-1} E_i, where E_i = 1 - (T_i - T_i^-1)/(q - q^-1), q = exp(i pi h),\n"
       "r = q^{N-1} for so_N and r = -q^{N+1} for sp_N."},
      {"braid-relations", "Braid (Artin or generalized) relations of the monodromy generators, residual <= check_tol."},
      {"kd-compare",
       "Compares monodromy with the quantum group side at hbar = 2 pi i h, q = exp(kappa hbar <a,a>/2).\n"
       "connection kz: KZ monodromy of gl_N vector vs the R-matrix representation of U_q(sl_N) (kappa = 1/2).\n"
       "connection casimir: sl2 Casimir monodromy on V_m vs the quantum Weyl element (kappa = 1).\n"
       "Eigenvalue multisets and traces of all words up to max_word_length are compared."},
      {"qweyl",
       "Quantum Weyl group elements S_i on a U_q module (A1: vector or irrep(m); A_r: vector) tensored n times.\n"
       "Checks the module relations, that S_i maps weight mu to s_i mu, and the braid relations."},
      {"rmatrix",
       "R-matrix of a U_q module with itself: intertwining residual, braid relations of R-check on n factors,\n"
       "and the Hecke relation for vector modules of sl_N."},
      {"v0-check", "On V[[0]] = {v in V[0] : e_a^2 v = 0}: C_alpha = <alpha,alpha>(1 - s_alpha) exactly."},
      {"duality-check",
       "Polynomials on k x n matrices: highest-weight spaces M_lambda^nu for nu in S_n mu, and the exact\n"
       "comparison of the sl_n Casimir residue with the gl_k Omega_ij on columns (C = 2 Omega + scalar).\n"
       "Fields: k (default n), lambda, mu."},
      {"schur-weyl",
       "dim V_{lambda^t}[0] for sl_n against dim U_lambda (hook length formula), for lambda or all partitions of n."},
  };
  return help;
}

const std::set<std::string> kJobKeys = {
    "task",   "label",   "algebra",  "normalization", "rep",       "connection",      "n",
    "h",      "q",       "kappa",    "tol",           "check_tol", "fixed_step",      "fixed_steps",
    "workers", "k",      "lambda",   "mu",            "max_word_length", "word_list", "perturb",
    "qweyl_normalization", "full_matrices", "output"};

template <class T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw JobError(std::string("field '") + key + "': " + e.what());
  }
}

class Checks {
 public:
  void bound(const std::string& name, double value, double tol) {
    const bool ok = std::isfinite(value) && value <= tol;
    arr_.push_back({{"name", name}, {"value", value}, {"tol", tol}, {"pass", ok}});
    pass_ = pass_ && ok;
  }
  void exact(const std::string& name, bool ok, const std::string& detail = "") {
    json c = {{"name", name}, {"exact", true}, {"pass", ok}};
    if (!detail.empty()) c["detail"] = detail;
    arr_.push_back(std::move(c));
    pass_ = pass_ && ok;
  }
  bool pass() const { return pass_; }
  const json& list() const { return arr_; }

 private:
  json arr_ = json::array();
  bool pass_ = true;
};

json matrices_json(const std::vector<CMatrix>& ms, bool full) {
  json a = json::array();
  for (const auto& m : ms) {
    if (!full && m.rows() > kMatrixDumpCap) a.push_back({{"omitted", true}, {"dim", m.rows()}});
    else a.push_back(to_json(m));
  }
  return a;
}

json spectra_json(const std::vector<CMatrix>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(to_json(spectrum(m)));
  return a;
}

json residuals_json(const ResidualReport& r) {
  json a = json::array();
  for (std::size_t i = 0; i < r.labels.size(); ++i) a.push_back({{"relation", r.labels[i]}, {"residual", r.residuals[i]}});
  return a;
}

json intvec_json(const IntVec& v) { return json(v); }

json rational_json(const Rational& r) { return to_string(r); }

Normalization normalization_for(const JobSpec& job) {
  if (!job.normalization.empty()) return parse_normalization(job.normalization);
  return job.task == "bmw" ? Normalization::trace : Normalization::basic;
}

RootSystem root_system_for(const JobSpec& job) { return parse_root_system(job.algebra, normalization_for(job)); }

RepKind rep_kind_for(const JobSpec& job, bool force_gl = false) {
  RepKind kind = parse_rep_kind(job.rep);
  if (force_gl) kind.gl_center = true;
  return kind;
}

TransportOptions transport_options(const JobSpec& job) {
  TransportOptions o;
  o.tol = job.tol;
  o.fixed_step = job.fixed_step;
  o.fixed_steps = job.fixed_steps;
  return o;
}

double check_tol_or(const JobSpec& job, double fallback) { return job.check_tol.value_or(fallback); }

// log q for the quantum side: q itself when given, otherwise kappa * 2 pi i h (<alpha,alpha> = 2).
cplx log_q_for(const JobSpec& job, double default_kappa) {
  if (job.q) return std::log(*job.q);
  return job.kappa.value_or(default_kappa) * 2.0 * std::numbers::pi * cplx(0.0, 1.0) * job.h;
}

FlatConnection connection_for(const JobSpec& job, const RootSystem& rs, const Representation* V) {
  if (job.connection == "kz") return build_kz(*V, job.n, job.h, false);
  if (job.connection == "casimir") return build_casimir(*V, job.h, false);
  std::vector<cplx> k(rs.positive_roots.size(), job.h);
  return build_ckz(rs, reflection_rep(rs), k, false);
}

MonodromyRep monodromy_for(const JobSpec& job, const RootSystem& rs, const Representation* V, const FlatConnection& conn) {
  const TransportOptions opts = transport_options(job);
  if (job.connection == "kz") return monodromy_config(conn, std::vector<std::size_t>(job.n, V->dim), opts, job.workers);
  if (job.connection == "casimir") return monodromy_cartan(conn, rs, tits_lift(*V).matrices, "tits", opts, job.workers);
  const std::vector<QMatrix> refl = reflection_rep(rs);
  std::vector<QMatrix> simple;
  for (std::size_t i : rs.simple) simple.push_back(refl[i]);
  return monodromy_cartan(conn, rs, simple, "reflection", opts, job.workers);
}

json monodromy_json(const MonodromyRep& m, bool full) {
  json bp = json::array();
  for (cplx z : m.basepoint) bp.push_back(to_json(z));
  return {{"group", m.group},
          {"equivariance", m.equivariance},
          {"composition", m.composition},
          {"h", to_json(m.h)},
          {"tol", m.tol},
          {"basepoint", bp},
          {"err_estimates", m.err_estimates},
          {"steps", m.steps},
          {"generators", matrices_json(m.generators, full)},
          {"spectra", spectra_json(m.generators)}};
}

QModule qmodule_for(const JobSpec& job, cplx log_q, std::size_t copies) {
  const RootSystem rs = parse_root_system(job.algebra);
  if (rs.series != Series::A) throw JobError("quantum modules are implemented for type A only");
  const RepKind kind = parse_rep_kind(job.rep);
  QModule base;
  if (rs.rank == 1) {
    if (kind.type == RepKind::Type::vector) base = uq_sl2_module(1, log_q);
    else if (kind.type == RepKind::Type::irrep) base = uq_sl2_module(kind.k, log_q);
    else throw JobError("U_q(sl2) modules: rep must be vector or irrep(m)");
  } else {
    if (kind.type != RepKind::Type::vector) throw JobError("U_q(sl_n) modules: rep must be vector");
    base = uq_sln_vector(rs.rank + 1, log_q);
  }
  return copies <= 1 ? base : q_tensor_power(base, copies);
}

std::vector<Word> words_for(const JobSpec& job, std::size_t generators) {
  if (!job.word_list.empty()) {
    for (const auto& w : job.word_list)
      for (std::size_t g : w)
        if (g >= generators) throw JobError("word_list refers to a generator that does not exist");
    return job.word_list;
  }
  return default_words(generators, job.max_word_length);
}

// Task bodies fill `checks` and `data`.
void task_flatness(const JobSpec& job, Checks& checks, json& data) {
  const RootSystem rs = root_system_for(job);
  std::optional<Representation> V;
  if (job.connection != "ckz") V = cached_build_rep(rs, rep_kind_for(job));
  FlatConnection conn = connection_for(job, rs, V ? &*V : nullptr);
  if (job.perturb) {
    QMatrix delta(conn.fiber_dim, conn.fiber_dim);
    delta(0, conn.fiber_dim - 1) += 1;
    conn = perturb_residue(conn, 0, delta);
  }
  const FlatnessReport rep = kohno_flatness_check(conn, true);
  data = {{"connection", conn.label},
          {"fiber_dim", conn.fiber_dim},
          {"hyperplanes", conn.size()},
          {"families", rep.families},
          {"commutators_checked", rep.commutators_checked},
          {"nonzero_commutators", rep.pass ? 0 : 1},
          {"perturbed", job.perturb}};
  if (!rep.pass) data["offending_family"] = rep.offending_family;
  checks.exact("commutators vanish", rep.pass, rep.detail);
}

void task_monodromy(const JobSpec& job, Checks& checks, json& data, bool spectra_only) {
  const RootSystem rs = root_system_for(job);
  std::optional<Representation> V;
  if (job.connection != "ckz") V = cached_build_rep(rs, rep_kind_for(job));
  const FlatConnection conn = connection_for(job, rs, V ? &*V : nullptr);
  const MonodromyRep mon = monodromy_for(job, rs, V ? &*V : nullptr, conn);
  data = monodromy_json(mon, job.full_matrices);
  double worst_err = 0.0;
  for (double e : mon.err_estimates) worst_err = std::max(worst_err, e);
  checks.bound("transport refinement difference", worst_err, std::max(job.tol * 100.0, 1e-8));
  if (!spectra_only && mon.generators.size() > 1) {
    const ResidualReport br = verify_braid_relations(mon);
    data["braid_residuals"] = residuals_json(br);
    checks.bound("braid relations", br.max_residual, check_tol_or(job, 1e-8));
  }
}

void task_hecke(const JobSpec& job, Checks& checks, json& data) {
  const RootSystem rs = root_system_for(job);
  const Representation V = cached_build_rep(rs, rep_kind_for(job, true));
  const FlatConnection conn = build_kz(V, job.n, job.h, false);
  const MonodromyRep mon = monodromy_config(conn, std::vector<std::size_t>(job.n, V.dim), transport_options(job), job.workers);
  const cplx q = job.q ? *job.q : std::exp(log_q_for(job, 0.5));
  const ResidualReport hr = hecke_check(mon.generators, std::vector<cplx>(mon.generators.size(), q));
  data = monodromy_json(mon, job.full_matrices);
  data["q"] = to_json(q);
  data["hecke_residuals"] = residuals_json(hr);
  checks.bound("(T - q)(T + 1/q)", hr.max_residual, check_tol_or(job, 1e-6));
}

void task_bmw(const JobSpec& job, Checks& checks, json& data) {
  const RootSystem rs = root_system_for(job);
  const Representation V = cached_build_rep(rs, rep_kind_for(job));
  const FlatConnection conn = build_kz(V, job.n, job.h, false);
  const MonodromyRep mon = monodromy_config(conn, std::vector<std::size_t>(job.n, V.dim), transport_options(job), job.workers);
  const cplx q = job.q ? *job.q : std::exp(log_q_for(job, 0.5));
  const int N = static_cast<int>(V.dim);
  const cplx r = rs.series == Series::C ? -std::pow(q, N + 1) : std::pow(q, N - 1);
  const BmwReport br = bmw_check(mon.generators, q, r);
  data = monodromy_json(mon, job.full_matrices);
  data["q"] = to_json(q);
  data["r"] = to_json(r);
  data["cubic_residuals"] = residuals_json(br.cubic);
  data["tangle_residuals"] = residuals_json(br.tangle);
  checks.bound("cubic relation", br.cubic.max_residual, check_tol_or(job, 1e-6));
  checks.bound("tangle relations", br.tangle.max_residual, check_tol_or(job, 1e-6));
}

void task_kd_compare(const JobSpec& job, Checks& checks, json& data) {
  const RootSystem rs = root_system_for(job);
  std::vector<CMatrix> quantum;
  MonodromyRep mon;
  cplx log_q;
  if (job.connection == "kz") {
    const Representation V = cached_build_rep(rs, rep_kind_for(job, true));
    const FlatConnection conn = build_kz(V, job.n, job.h, false);
    mon = monodromy_config(conn, std::vector<std::size_t>(job.n, V.dim), transport_options(job), job.workers);
    log_q = log_q_for(job, 0.5);
    if (parse_rep_kind(job.rep).type != RepKind::Type::vector) throw JobError("kd-compare with kz needs the vector rep");
    // Hecke-normalized vector R-matrix, also for N = 2.
    quantum = rmat_rep(uq_sln_vector(rs.rank + 1, log_q), job.n);
    data["quantum_side"] = "R-matrix representation";
  } else {
    const Representation V = cached_build_rep(rs, rep_kind_for(job));
    const FlatConnection conn = build_casimir(V, job.h, false);
    mon = monodromy_cartan(conn, rs, tits_lift(V).matrices, "tits", transport_options(job), job.workers);
    log_q = log_q_for(job, 1.0);
    const QWeylNormalization norm = job.qweyl_normalization.empty() ? QWeylNormalization::casimir
                                                                     : parse_qweyl_normalization(job.qweyl_normalization);
    quantum = qweyl_op(qmodule_for(job, log_q, 1), norm).S;
    data["quantum_side"] = norm == QWeylNormalization::casimir ? "quantum Weyl (casimir)" : "quantum Weyl (literal)";
  }
  const KdReport kd = kd_compare(mon.generators, quantum, words_for(job, mon.generators.size()), check_tol_or(job, 1e-6));
  data["q"] = to_json(std::exp(log_q));
  data["monodromy"] = monodromy_json(mon, job.full_matrices);
  data["quantum_generators"] = matrices_json(quantum, job.full_matrices);
  data["quantum_spectra"] = spectra_json(quantum);
  json words = json::array();
  for (std::size_t i = 0; i < kd.words.size(); ++i)
    words.push_back({{"word", kd.words[i]}, {"spectral_dev", kd.spectral_dev[i]}, {"trace_dev", kd.trace_dev[i]}});
  data["words"] = words;
  checks.bound("spectra", kd.max_spectral_dev, check_tol_or(job, 1e-6));
  checks.bound("traces", kd.max_trace_dev, check_tol_or(job, 1e-6));
}

void task_qweyl(const JobSpec& job, Checks& checks, json& data) {
  const cplx log_q = log_q_for(job, 1.0);
  const QModule m = qmodule_for(job, log_q, job.n);
  const QWeylNormalization norm = job.qweyl_normalization.empty() ? QWeylNormalization::literal
                                                                   : parse_qweyl_normalization(job.qweyl_normalization);
  const QWeylOp op = qweyl_op(m, norm);
  const double tol = check_tol_or(job, 1e-10);
  data = {{"q", to_json(m.q())},
          {"dim", m.dim},
          {"normalization", norm == QWeylNormalization::casimir ? "casimir" : "literal"},
          {"S", matrices_json(op.S, job.full_matrices)},
          {"spectra", spectra_json(op.S)}};
  checks.bound("module relations", qmodule_residual(m), tol);
  checks.bound("S maps weight mu to s_i mu", qweyl_weight_residual(m, op), tol);
  if (op.S.size() > 1) {
    const ResidualReport br = verify_braid_relations(op.S, qmodule_coxeter_orders(m));
    data["braid_residuals"] = residuals_json(br);
    checks.bound("braid relations", br.max_residual, tol);
  }
}

void task_rmatrix(const JobSpec& job, Checks& checks, json& data) {
  const cplx log_q = log_q_for(job, 0.5);
  const QModule base = qmodule_for(job, log_q, 1);
  const RMatrix r = r_matrix(base, base);
  const double tol = check_tol_or(job, 1e-10);
  data = {{"q", to_json(base.q())},
          {"convention", r.convention},
          {"top_exponent", r.top_exponent},
          {"coefficients", to_json(r.coefficients)},
          {"Rcheck", matrices_json({r.Rcheck}, job.full_matrices)[0]},
          {"spectrum", to_json(spectrum(r.Rcheck))}};
  checks.bound("intertwining", r.intertwining_residual, tol);
  if (job.n >= 3) {
    const std::vector<CMatrix> gens = rmat_rep(base, job.n);
    std::vector<IntVec> orders(gens.size(), IntVec(gens.size(), 2));
    for (std::size_t i = 0; i < gens.size(); ++i) {
      orders[i][i] = 1;
      if (i + 1 < gens.size()) orders[i][i + 1] = orders[i + 1][i] = 3;
    }
    const ResidualReport br = verify_braid_relations(gens, orders);
    data["braid_residuals"] = residuals_json(br);
    checks.bound("braid relations", br.max_residual, tol);
  }
  if (base.kind == "sln_vector") {
    const ResidualReport hr = hecke_check({r.Rcheck}, {base.q()});
    checks.bound("(R - q)(R + 1/q)", hr.max_residual, tol);
  }
}

void task_v0(const JobSpec& job, Checks& checks, json& data) {
  const RootSystem rs = root_system_for(job);
  const Representation V = cached_build_rep(rs, rep_kind_for(job));
  const V0Report rep = check_v0_identity(V);
  data = {{"dim", V.dim}, {"zero_weight_dim", rep.zero_weight_dim}, {"v0_dim", rep.v0_dim}, {"w_invariant", rep.w_invariant}};
  checks.exact("C_alpha = <alpha,alpha>(1 - s_alpha) on V[[0]]", rep.pass, rep.failure);
}

void task_duality(const JobSpec& job, Checks& checks, json& data) {
  const std::size_t n = job.mu.size();
  const std::size_t k = job.k.value_or(n);
  const ResidueMatchReport rep = residue_match_check(k, n, job.lambda, job.mu);
  json blocks = json::array();
  std::size_t raising_failures = 0;
  for (const auto& b : rep.blocks) {
    json pairs = json::array(), scalars = json::array();
    for (std::size_t p = 0; p < b.pairs.size(); ++p) {
      pairs.push_back({b.pairs[p].first, b.pairs[p].second});
      scalars.push_back(rational_json(b.scalars[p]));
    }
    blocks.push_back({{"nu", intvec_json(b.nu)},
                      {"dim", b.dim},
                      {"kostka", kostka_number(job.lambda, b.nu)},
                      {"pairs", pairs},
                      {"scalars", scalars},
                      {"off_scalar", rational_json(b.off_scalar)},
                      {"pass", b.pass}});
    raising_failures += hw_raising_failures(hw_space(k, n, job.lambda, b.nu));
  }
  data = {{"k", k},
          {"n", n},
          {"lambda", intvec_json(job.lambda)},
          {"mu", intvec_json(job.mu)},
          {"omega_factor", rational_json(rep.omega_factor)},
          {"blocks", blocks},
          {"max_off_scalar", rational_json(rep.max_off_scalar)}};
  checks.exact("C_ij - 2 Omega_ij is scalar on every block", rep.max_off_scalar == 0, rep.failure);
  checks.exact("Omega agrees with the tensor-product model", rep.omega_cross_check);
  checks.exact("highest-weight bases are killed by raising operators", raising_failures == 0);
  bool kostka_ok = true;
  for (const auto& b : rep.blocks) kostka_ok = kostka_ok && b.dim == kostka_number(job.lambda, b.nu);
  checks.exact("dim M_lambda^nu equals the Kostka number", kostka_ok);
}

void task_schur_weyl(const JobSpec& job, Checks& checks, json& data) {
  std::vector<IntVec> lambdas;
  if (job.lambda.empty()) lambdas = partitions(static_cast<int>(job.n), job.n);
  else lambdas = {job.lambda};
  json pairs = json::array();
  bool all = true;
  for (const auto& l : lambdas) {
    const SchurWeylPair p = schur_weyl_zero_weight(job.n, l);
    pairs.push_back({{"lambda", intvec_json(l)}, {"zero_weight_dim", p.zero_weight_dim}, {"hook_dim", p.hook_dim}});
    all = all && p.equal();
  }
  data = {{"n", job.n}, {"pairs", pairs}};
  checks.exact("dim V_{lambda^t}[0] = dim U_lambda", all);
}

void require(bool cond, const std::string& message) {
  if (!cond) throw JobError(message);
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {"flatness", "monodromy", "spectra", "hecke", "bmw", "braid-relations",
                                                 "kd-compare", "qweyl", "rmatrix", "v0-check", "duality-check",
                                                 "schur-weyl"};
  return names;
}

JobSpec job_from_json(const json& j) {
  if (!j.is_object()) throw JobError("job must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kJobKeys.count(key)) throw JobError("unknown job field '" + key + "'");
  JobSpec job;
  job.task = get_field<std::string>(j, "task");
  auto opt = [&](const char* key, auto& target) {
    if (j.contains(key)) target = get_field<std::decay_t<decltype(target)>>(j, key);
  };
  opt("label", job.label);
  opt("algebra", job.algebra);
  opt("normalization", job.normalization);
  opt("rep", job.rep);
  opt("connection", job.connection);
  opt("n", job.n);
  opt("tol", job.tol);
  opt("fixed_step", job.fixed_step);
  opt("fixed_steps", job.fixed_steps);
  opt("workers", job.workers);
  opt("max_word_length", job.max_word_length);
  opt("perturb", job.perturb);
  opt("qweyl_normalization", job.qweyl_normalization);
  opt("full_matrices", job.full_matrices);
  opt("output", job.output);
  try {
    if (j.contains("h")) job.h = cplx_from_json(j.at("h"));
    if (j.contains("q")) job.q = cplx_from_json(j.at("q"));
  } catch (const std::invalid_argument& e) {
    throw JobError(e.what());
  }
  if (j.contains("kappa")) job.kappa = get_field<double>(j, "kappa");
  if (j.contains("check_tol")) job.check_tol = get_field<double>(j, "check_tol");
  if (j.contains("k")) job.k = get_field<std::size_t>(j, "k");
  if (j.contains("lambda")) job.lambda = get_field<IntVec>(j, "lambda");
  if (j.contains("mu")) job.mu = get_field<IntVec>(j, "mu");
  if (j.contains("word_list")) {
    for (const auto& w : get_field<std::vector<std::vector<int>>>(j, "word_list")) {
      Word word;
      for (int g : w) {
        if (g < 1) throw JobError("word_list entries are 1-based generator indices");
        word.push_back(static_cast<std::size_t>(g - 1));
      }
      job.word_list.push_back(std::move(word));
    }
  }
  validate_job(job);
  return job;
}

json job_to_json(const JobSpec& job) {
  json j = {{"task", job.task},
            {"algebra", job.algebra},
            {"rep", job.rep},
            {"connection", job.connection},
            {"n", job.n},
            {"h", to_json(job.h)},
            {"tol", job.tol},
            {"fixed_step", job.fixed_step},
            {"fixed_steps", job.fixed_steps},
            {"workers", job.workers},
            {"max_word_length", job.max_word_length},
            {"perturb", job.perturb},
            {"full_matrices", job.full_matrices}};
  if (!job.label.empty()) j["label"] = job.label;
  if (!job.normalization.empty()) j["normalization"] = job.normalization;
  if (job.q) j["q"] = to_json(*job.q);
  if (job.kappa) j["kappa"] = *job.kappa;
  if (job.check_tol) j["check_tol"] = *job.check_tol;
  if (job.k) j["k"] = *job.k;
  if (!job.lambda.empty()) j["lambda"] = job.lambda;
  if (!job.mu.empty()) j["mu"] = job.mu;
  if (!job.qweyl_normalization.empty()) j["qweyl_normalization"] = job.qweyl_normalization;
  if (!job.word_list.empty()) {
    json wl = json::array();
    for (const auto& w : job.word_list) {
      json word = json::array();
      for (std::size_t g : w) word.push_back(g + 1);
      wl.push_back(word);
    }
    j["word_list"] = wl;
  }
  if (!job.output.empty()) j["output"] = job.output;
  return j;
}

void validate_job(const JobSpec& job) {
  require(task_help().count(job.task) > 0, "unknown task '" + job.task + "'");
  require(job.tol > 0.0 && std::isfinite(job.tol), "tol must be positive");
  require(!job.check_tol || *job.check_tol > 0.0, "check_tol must be positive");
  require(job.workers >= 1, "workers must be at least 1");
  require(job.fixed_steps >= 1, "fixed_steps must be at least 1");
  require(std::isfinite(job.h.real()) && std::isfinite(job.h.imag()), "h must be finite");
  require(job.connection == "kz" || job.connection == "casimir" || job.connection == "ckz",
          "connection must be kz, casimir or ckz");
  require(!job.perturb || job.task == "flatness", "perturb applies to the flatness task only");
  if (!job.qweyl_normalization.empty()) {
    try {
      parse_qweyl_normalization(job.qweyl_normalization);
    } catch (const std::invalid_argument& e) {
      throw JobError(e.what());
    }
  }
  const std::string& t = job.task;
  if (t == "duality-check") {
    require(!job.lambda.empty() && !job.mu.empty(), "duality-check needs lambda and mu");
    require(job.mu.size() >= 2, "duality-check needs mu with at least two entries");
    require(job.k.value_or(job.mu.size()) >= job.mu.size(), "duality-check needs k >= n (n = length of mu)");
    return;
  }
  if (t == "schur-weyl") {
    require(job.n >= 1 && job.n <= 8, "schur-weyl needs 1 <= n <= 8");
    return;
  }
  RootSystem rs;
  try {
    rs = root_system_for(job);
    if (!(job.connection == "ckz" && t != "qweyl" && t != "rmatrix")) parse_rep_kind(job.rep);
  } catch (const std::invalid_argument& e) {
    throw JobError(e.what());
  }
  const bool uses_kz = t == "hecke" || t == "bmw" || ((t == "flatness" || t == "monodromy" || t == "spectra" ||
                                                       t == "braid-relations" || t == "kd-compare") &&
                                                      job.connection == "kz");
  if (uses_kz) require(job.n >= 2, "KZ jobs need n >= 2 points");
  if (t == "hecke") require(rs.series == Series::A, "hecke needs a type A algebra");
  if (t == "bmw") {
    require(rs.series != Series::A, "bmw needs an orthogonal or symplectic algebra (B, C or D)");
    require(job.n >= 3, "bmw needs n >= 3");
  }
  if (t == "kd-compare") {
    require(rs.series == Series::A, "kd-compare needs a type A algebra");
    require(job.connection != "ckz", "kd-compare supports kz and casimir connections");
    if (job.connection == "casimir") require(rs.rank == 1, "kd-compare with the Casimir connection is implemented for sl2");
  }
  if (t == "qweyl" || t == "rmatrix") require(rs.series == Series::A, "quantum modules are implemented for type A only");
  if (t == "rmatrix") require(job.n >= 2, "rmatrix needs n >= 2");
}

JobOutcome run_job(const JobSpec& job) {
  validate_job(job);
  Checks checks;
  json data = json::object();
  std::string error;
  try {
    const std::string& t = job.task;
    if (t == "flatness") task_flatness(job, checks, data);
    else if (t == "monodromy" || t == "braid-relations") task_monodromy(job, checks, data, false);
    else if (t == "spectra") task_monodromy(job, checks, data, true);
    else if (t == "hecke") task_hecke(job, checks, data);
    else if (t == "bmw") task_bmw(job, checks, data);
    else if (t == "kd-compare") task_kd_compare(job, checks, data);
    else if (t == "qweyl") task_qweyl(job, checks, data);
    else if (t == "rmatrix") task_rmatrix(job, checks, data);
    else if (t == "v0-check") task_v0(job, checks, data);
    else if (t == "duality-check") task_duality(job, checks, data);
    else if (t == "schur-weyl") task_schur_weyl(job, checks, data);
  } catch (const JobError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw JobError(e.what());
  } catch (const std::exception& e) {
    error = e.what();
  }
  JobOutcome out;
  out.pass = error.empty() && checks.pass();
  out.report = {{"schema", "1"}, {"task", job.task}, {"job", job_to_json(job)}, {"pass", out.pass},
                {"checks", checks.list()}, {"data", data}};
  if (!job.label.empty()) out.report["label"] = job.label;
  if (!error.empty()) out.report["error"] = error;
  return out;
}

std::vector<JobSpec> suite_jobs(const std::string& name) {
  auto make = [](std::string task, std::string label) {
    JobSpec j;
    j.task = std::move(task);
    j.label = std::move(label);
    return j;
  };
  std::vector<JobSpec> exact, numeric;
  for (const char* alg : {"A1", "A2"})
    for (std::size_t n : {3, 4}) {
      JobSpec j = make("flatness", std::string("kz ") + alg + " vector n=" + std::to_string(n));
      j.algebra = alg;
      j.n = n;
      exact.push_back(j);
    }
  for (const char* alg : {"A1", "A2", "A3", "B2"})
    for (const char* rep : {"vector", "adjoint"}) {
      JobSpec j = make("flatness", std::string("casimir ") + alg + " " + rep);
      j.algebra = alg;
      j.rep = rep;
      j.connection = "casimir";
      exact.push_back(j);
    }
  for (const char* alg : {"A2", "A3"}) {
    JobSpec j = make("flatness", std::string("ckz ") + alg);
    j.algebra = alg;
    j.connection = "ckz";
    exact.push_back(j);
  }
  for (auto [alg, rep] : std::vector<std::pair<const char*, const char*>>{
           {"A1", "adjoint"}, {"A2", "adjoint"}, {"B2", "vector"}, {"A2", "tensor_power(3)"}}) {
    JobSpec j = make("v0-check", std::string("v0 ") + alg + " " + rep);
    j.algebra = alg;
    j.rep = rep;
    exact.push_back(j);
  }
  for (auto [k, lambda, mu] : std::vector<std::tuple<std::size_t, IntVec, IntVec>>{
           {2, {1, 1}, {1, 1}}, {2, {2, 0}, {1, 1}}, {3, {2, 1, 0}, {1, 1, 1}}}) {
    JobSpec j = make("duality-check", "duality k=" + std::to_string(k));
    j.k = k;
    j.lambda = lambda;
    j.mu = mu;
    exact.push_back(j);
  }
  for (std::size_t n = 1; n <= 5; ++n) {
    JobSpec j = make("schur-weyl", "schur-weyl n=" + std::to_string(n));
    j.n = n;
    exact.push_back(j);
  }

  for (double h : {0.05, 0.1}) {
    JobSpec j = make("hecke", "hecke gl2 n=3 h=" + std::to_string(h));
    j.h = h;
    numeric.push_back(j);
  }
  for (const char* alg : {"B1", "C1"}) {
    JobSpec j = make("bmw", std::string("bmw ") + alg + " n=3");
    j.algebra = alg;
    numeric.push_back(j);
  }
  {
    JobSpec j = make("braid-relations", "braid kz A1 n=4");
    j.n = 4;
    numeric.push_back(j);
  }
  for (const char* rep : {"vector", "adjoint"}) {
    JobSpec j = make("braid-relations", std::string("braid casimir A2 ") + rep);
    j.algebra = "A2";
    j.rep = rep;
    j.connection = "casimir";
    numeric.push_back(j);
  }
  for (const char* task : {"qweyl", "rmatrix"}) {
    JobSpec j = make(task, std::string(task) + " A2 vector^3 q=e^0.2");
    j.algebra = "A2";
    j.q = std::exp(cplx(0.2));
    numeric.push_back(j);
  }
  for (int m = 1; m <= 3; ++m)
    for (double h : {0.02, 0.05}) {
      JobSpec j = make("kd-compare", "casimir vs qweyl V" + std::to_string(m) + " h=" + std::to_string(h));
      j.rep = "irrep(" + std::to_string(m) + ")";
      j.connection = "casimir";
      j.h = h;
      numeric.push_back(j);
    }
  {
    JobSpec j = make("kd-compare", "kz vs R-matrix gl2 n=3");
    j.h = 0.05;
    numeric.push_back(j);
  }

  if (name == "paper-exact") return exact;
  if (name == "paper-numeric") return numeric;
  if (name == "all") {
    exact.insert(exact.end(), numeric.begin(), numeric.end());
    return exact;
  }
  throw JobError("unknown suite '" + name + "' (expected paper-exact, paper-numeric or all)");
}

JobOutcome run_suite(const std::string& name, unsigned workers) {
  const std::vector<JobSpec> jobs = suite_jobs(name);
  std::vector<JobOutcome> results(jobs.size());
  workers = std::max(1u, workers);
  for (std::size_t start = 0; start < jobs.size(); start += workers) {
    std::vector<std::future<JobOutcome>> batch;
    for (std::size_t k = start; k < std::min(jobs.size(), start + workers); ++k)
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 [&jobs, k] { return run_job(jobs[k]); }));
    for (std::size_t k = 0; k < batch.size(); ++k) results[start + k] = batch[k].get();
  }
  JobOutcome out;
  out.pass = true;
  json list = json::array();
  for (const auto& r : results) {
    out.pass = out.pass && r.pass;
    list.push_back(r.report);
  }
  out.report = {{"schema", "1"}, {"suite", name}, {"pass", out.pass}, {"jobs", list}};
  return out;
}

std::string describe(const std::string& task) {
  const auto it = task_help().find(task);
  if (it == task_help().end()) throw JobError("unknown task '" + task + "'");
  return task + ": " + it->second + "\n";
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << "malformed JSON at line " << line << ", column " << column << ": " << e.what();
    throw JobError(msg.str());
  }
}

}  // namespace holonome
