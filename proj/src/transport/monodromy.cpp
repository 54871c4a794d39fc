#include "holonome/transport.hpp"

#include <future>
#include <stdexcept>

namespace holonome {

namespace {

struct GeneratorJob {
  PathSpec path;
  CMatrix symmetry;
};

// Runs the transports with at most `workers` in flight; results are stored by generator index.
void run_jobs(const FlatConnection& conn, const std::vector<GeneratorJob>& jobs, const TransportOptions& opts,
              unsigned workers, MonodromyRep& rep) {
  const std::size_t n = jobs.size();
  std::vector<TransportResult> results(n);
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) results[k] = parallel_transport(conn, jobs[k].path, opts);
  } else {
    for (std::size_t start = 0; start < n; start += workers) {
      std::vector<std::future<TransportResult>> batch;
      for (std::size_t k = start; k < std::min(n, start + workers); ++k)
        batch.push_back(std::async(std::launch::async, [&, k] { return parallel_transport(conn, jobs[k].path, opts); }));
      for (std::size_t k = 0; k < batch.size(); ++k) results[start + k] = batch[k].get();
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    rep.generators.push_back(jobs[k].symmetry * results[k].matrix);
    rep.err_estimates.push_back(results[k].err_estimate);
    rep.steps.push_back(results[k].steps);
  }
}

std::vector<IntVec> artin_orders(std::size_t generators) {
  std::vector<IntVec> m(generators, IntVec(generators, 2));
  for (std::size_t i = 0; i < generators; ++i) {
    m[i][i] = 1;
    if (i + 1 < generators) m[i][i + 1] = m[i + 1][i] = 3;
  }
  return m;
}

}  // namespace

MonodromyRep monodromy_config(const FlatConnection& conn, const std::vector<std::size_t>& factor_dims,
                              const TransportOptions& opts, unsigned workers) {
  const std::size_t n = conn.arrangement.base_dim;
  if (factor_dims.size() != n) throw std::invalid_argument("monodromy_config: one tensor factor per point is required");
  std::size_t total = 1;
  for (std::size_t d : factor_dims) total *= d;
  if (total != conn.fiber_dim) throw std::invalid_argument("monodromy_config: factor dims do not match the fiber");
  MonodromyRep rep;
  rep.group = "artin";
  rep.coxeter_orders = artin_orders(n - 1);
  rep.equivariance = "permutation";
  rep.tol = opts.tol;
  rep.h = conn.class_coupling.empty() ? cplx(0.0) : conn.class_coupling.front();
  std::vector<GeneratorJob> jobs;
  for (std::size_t i = 1; i < n; ++i) {
    GeneratorJob job{braid_path_config(n, i), transposition_op(factor_dims, i - 1, i).to_complex()};
    job.path.wall_clearance = wall_clearance(job.path, conn.arrangement);
    if (i == 1) rep.basepoint = job.path.start();
    jobs.push_back(std::move(job));
  }
  run_jobs(conn, jobs, opts, workers, rep);
  return rep;
}

MonodromyRep monodromy_cartan(const FlatConnection& conn, const RootSystem& rs, const std::vector<QMatrix>& symmetry,
                              const std::string& equivariance, const TransportOptions& opts, unsigned workers) {
  const std::size_t r = static_cast<std::size_t>(rs.rank);
  if (symmetry.size() != r) throw std::invalid_argument("monodromy_cartan: one symmetry matrix per simple root is required");
  if (conn.arrangement.base_dim != rs.eps_dim) throw std::invalid_argument("monodromy_cartan: connection is not on the Cartan");
  MonodromyRep rep;
  rep.group = "generalized";
  rep.coxeter_orders = rs.coxeter_orders;
  rep.equivariance = equivariance;
  rep.tol = opts.tol;
  rep.h = conn.class_coupling.empty() ? cplx(0.0) : conn.class_coupling.front();
  rep.basepoint = default_cartan_basepoint(rs);
  std::vector<GeneratorJob> jobs;
  for (std::size_t i = 1; i <= r; ++i) {
    if (symmetry[i - 1].rows() != conn.fiber_dim) throw std::invalid_argument("symmetry matrix has the wrong size");
    jobs.push_back({braid_path_cartan(rs, i), symmetry[i - 1].to_complex()});
  }
  run_jobs(conn, jobs, opts, workers, rep);
  return rep;
}

}  // namespace holonome
