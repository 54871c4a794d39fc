// holonome: run one job (JSON file and/or flags), a named suite, or print task help.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 invalid input.

#include "holonome/cli.hpp"
#include "holonome/simd/kernels.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace holonome;

namespace {

cplx parse_complex_flag(const std::string& text) {
  const std::size_t comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw JobError("expected a number or 're,im', got '" + text + "'");
  }
}

IntVec parse_int_list(const std::string& text) {
  IntVec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw JobError("expected a comma-separated integer list, got '" + text + "'");
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JobError("cannot read job file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_summary(const json& report) {
  const bool pass = report.value("pass", false);
  std::cerr << (pass ? "PASS " : "FAIL ") << report.value("task", std::string()) << ' '
            << report.value("label", std::string()) << '\n';
  for (const auto& c : report["checks"]) {
    std::cerr << "  " << (c.value("pass", false) ? "ok   " : "FAIL ") << c.value("name", std::string());
    if (c.contains("value")) std::cerr << "  " << c["value"].get<double>() << " (tol " << c["tol"].get<double>() << ')';
    if (c.contains("detail")) std::cerr << "  " << c["detail"].get<std::string>();
    std::cerr << '\n';
  }
  if (report.contains("error")) std::cerr << "  error: " << report["error"].get<std::string>() << '\n';
}

void emit(const json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) std::cout << text;
  else write_file_atomic(out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holonome: flat connections, monodromy and quantum group checks"};
  std::string job_file, task, algebra, rep, connection, normalization, h_text, q_text, out, suite, describe_task;
  std::string lambda_text, mu_text, qweyl_norm;
  std::size_t n = 0, k = 0;
  double tol = 0.0, check_tol = 0.0;
  unsigned workers = 1;
  bool fixed_step = false, full = false, perturb = false;
  app.set_help_flag("--help", "print usage");
  app.add_option("--job", job_file, "JSON job file");
  auto* o_task = app.add_option("--task", task, "task name");
  auto* o_alg = app.add_option("--algebra", algebra, "root system, e.g. A2, B2, C1");
  auto* o_rep = app.add_option("--rep", rep, "representation: vector, adjoint, sym(k), ext(k), tensor_power(n), irrep(m)");
  auto* o_conn = app.add_option("--connection", connection, "kz, casimir or ckz");
  auto* o_norm = app.add_option("--normalization", normalization, "basic or trace");
  auto* o_n = app.add_option("--n", n, "number of points / tensor factors");
  auto* o_k = app.add_option("--k", k, "rows of the matrix space (duality-check)");
  auto* o_h = app.add_option("--h", h_text, "coupling h as 're' or 're,im'");
  auto* o_q = app.add_option("--q", q_text, "quantum parameter q as 're' or 're,im'");
  auto* o_tol = app.add_option("--tol", tol, "transport tolerance");
  auto* o_ctol = app.add_option("--check-tol", check_tol, "tolerance of the numerical checks");
  auto* o_lambda = app.add_option("--lambda", lambda_text, "partition, comma-separated");
  auto* o_mu = app.add_option("--mu", mu_text, "column degrees, comma-separated");
  auto* o_qn = app.add_option("--qweyl-normalization", qweyl_norm, "literal or casimir");
  auto* o_fixed = app.add_flag("--fixed-step", fixed_step, "fixed-step transport");
  auto* o_full = app.add_flag("--full-matrices", full, "dump matrices of every size");
  auto* o_perturb = app.add_flag("--perturb", perturb, "perturb the first residue (flatness)");
  auto* o_workers = app.add_option("--workers", workers, "parallel transports / suite jobs");
  app.add_option("--out", out, "report path (default: stdout)");
  app.add_option("--suite", suite, "paper-exact, paper-numeric or all");
  app.add_option("--describe", describe_task, "print help for a task");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!describe_task.empty()) {
      std::cout << describe(describe_task);
      return 0;
    }
    const auto t0 = std::chrono::steady_clock::now();
    JobOutcome outcome;
    if (!suite.empty()) {
      outcome = run_suite(suite, workers);
      for (const auto& r : outcome.report["jobs"]) print_summary(r);
    } else {
      json spec = job_file.empty() ? json::object() : parse_json_text(read_file(job_file));
      if (!spec.is_object()) throw JobError("job must be a JSON object");
      if (*o_task) spec["task"] = task;
      if (*o_alg) spec["algebra"] = algebra;
      if (*o_rep) spec["rep"] = rep;
      if (*o_conn) spec["connection"] = connection;
      if (*o_norm) spec["normalization"] = normalization;
      if (*o_n) spec["n"] = n;
      if (*o_k) spec["k"] = k;
      if (*o_h) spec["h"] = to_json(parse_complex_flag(h_text));
      if (*o_q) spec["q"] = to_json(parse_complex_flag(q_text));
      if (*o_tol) spec["tol"] = tol;
      if (*o_ctol) spec["check_tol"] = check_tol;
      if (*o_lambda) spec["lambda"] = parse_int_list(lambda_text);
      if (*o_mu) spec["mu"] = parse_int_list(mu_text);
      if (*o_qn) spec["qweyl_normalization"] = qweyl_norm;
      if (*o_fixed) spec["fixed_step"] = fixed_step;
      if (*o_full) spec["full_matrices"] = full;
      if (*o_perturb) spec["perturb"] = perturb;
      if (*o_workers) spec["workers"] = workers;
      if (!spec.contains("task")) throw JobError("no task given (use --task or a job file)");
      const JobSpec job = job_from_json(spec);
      if (out.empty()) out = job.output;
      outcome = run_job(job);
      print_summary(outcome.report);
    }
    emit(outcome.report, out);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "kernels: " << simd::active_kernels().name << ", elapsed " << secs << " s\n";
    return outcome.pass ? 0 : 1;
  } catch (const JobError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
