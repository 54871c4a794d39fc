#include "holonome/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace holonome {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Fifth-order weights equal the last row of kA; kE = b5 - b4.
constexpr double kE[7] = {71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

constexpr double kMinStep = 1e-14;

// Coefficient field A(t) of one segment: sum_i (phi_i(x'(t)) / phi_i(x(t))) r_i.
class SegmentField {
 public:
  SegmentField(const Segment& seg, const Arrangement& arr, const std::vector<CMatrix>& residues)
      : seg_(seg), residues_(residues) {
    const std::size_t m = arr.forms.size();
    fc_.resize(m);
    fa_.resize(m);
    fb_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      fc_[i] = arr.evaluate(i, seg.c);
      fa_[i] = arr.evaluate(i, seg.a);
      fb_[i] = arr.evaluate(i, seg.b);
    }
  }

  void eval(double t, CMatrix& out) const {
    std::fill(out.data(), out.data() + out.size(), cplx(0.0));
    for (std::size_t i = 0; i < residues_.size(); ++i) {
      cplx phi, dphi;
      if (seg_.kind == Segment::Kind::line) {
        phi = fc_[i] + t * fa_[i];
        dphi = fa_[i];
      } else {
        const double th = seg_.theta0 + seg_.dtheta * t;
        const double ct = std::cos(th), st = std::sin(th);
        phi = fc_[i] + ct * fa_[i] + st * fb_[i];
        dphi = seg_.dtheta * (-st * fa_[i] + ct * fb_[i]);
      }
      if (dphi == cplx(0.0)) continue;
      if (std::abs(phi) == 0.0) throw std::runtime_error("transport path hits a wall");
      out.axpy(dphi / phi, residues_[i]);
    }
  }

 private:
  const Segment& seg_;
  const std::vector<CMatrix>& residues_;
  std::vector<cplx> fc_, fa_, fb_;
};

struct RunResult {
  CMatrix y;
  std::size_t steps = 0;
};

// One Dormand-Prince step of size dt from (t, y) with k1 = A(t) y given; returns the
// fifth-order solution, the embedded error matrix and k7 = A(t+dt) y_new.
struct StepWork {
  std::vector<CMatrix> k;
  CMatrix a, stage;
  explicit StepWork(std::size_t d) : k(7, CMatrix(d, d)), a(d, d), stage(d, d) {}
};

void dp_step(const SegmentField& field, double t, double dt, const CMatrix& y, StepWork& w, CMatrix& y_new,
             CMatrix& err) {
  for (int s = 1; s < 7; ++s) {
    w.stage = y;
    for (int j = 0; j < s; ++j)
      if (kA[s][j] != 0.0) w.stage.axpy(dt * kA[s][j], w.k[static_cast<std::size_t>(j)]);
    if (s == 6) y_new = w.stage;
    field.eval(t + kC[s] * dt, w.a);
    w.k[static_cast<std::size_t>(s)] = w.a * w.stage;
  }
  std::fill(err.data(), err.data() + err.size(), cplx(0.0));
  for (int j = 0; j < 7; ++j)
    if (kE[j] != 0.0) err.axpy(dt * kE[j], w.k[static_cast<std::size_t>(j)]);
}

void check_finite(const CMatrix& m) {
  if (!m.all_finite()) throw std::runtime_error("transport produced non-finite values");
}

RunResult integrate_adaptive(const PathSpec& path, const Arrangement& arr, const std::vector<CMatrix>& residues,
                             std::size_t d, double tol) {
  RunResult rr;
  rr.y = CMatrix::identity(d);
  StepWork w(d);
  CMatrix y_new(d, d), err(d, d);
  for (const auto& seg : path.segments) {
    const SegmentField field(seg, arr, residues);
    double t = 0.0, dt = 1e-2;
    CMatrix y = CMatrix::identity(d);
    field.eval(0.0, w.a);
    w.k[0] = w.a * y;
    while (t < 1.0) {
      if (t + dt > 1.0) dt = 1.0 - t;
      dp_step(field, t, dt, y, w, y_new, err);
      const double err_rate = err.max_abs() / dt;
      if (!std::isfinite(err_rate)) throw std::runtime_error("transport produced non-finite values");
      const double factor = err_rate == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(tol / err_rate, 0.25), 0.2, 5.0);
      if (err_rate <= tol) {
        t = (1.0 - t <= dt) ? 1.0 : t + dt;
        y = y_new;
        w.k[0] = w.k[6];
        ++rr.steps;
      }
      dt *= factor;
      if (dt < kMinStep) throw std::runtime_error("transport step size underflow: path too close to a wall for tol");
    }
    check_finite(y);
    rr.y = y * rr.y;
  }
  return rr;
}

RunResult integrate_fixed(const PathSpec& path, const Arrangement& arr, const std::vector<CMatrix>& residues,
                          std::size_t d, std::size_t n_steps) {
  RunResult rr;
  rr.y = CMatrix::identity(d);
  StepWork w(d);
  CMatrix y_new(d, d), err(d, d);
  for (const auto& seg : path.segments) {
    const SegmentField field(seg, arr, residues);
    const double dt = 1.0 / static_cast<double>(n_steps);
    CMatrix y = CMatrix::identity(d);
    field.eval(0.0, w.a);
    w.k[0] = w.a * y;
    for (std::size_t s = 0; s < n_steps; ++s) {
      dp_step(field, static_cast<double>(s) * dt, dt, y, w, y_new, err);
      y = y_new;
      w.k[0] = w.k[6];
      ++rr.steps;
    }
    check_finite(y);
    rr.y = y * rr.y;
  }
  return rr;
}

}  // namespace

TransportResult parallel_transport(const FlatConnection& conn, const PathSpec& path, const TransportOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("transport tolerance must be positive");
  if (path.segments.empty()) throw std::invalid_argument("empty path");
  conn.validate();
  for (const auto& seg : path.segments)
    if (seg.c.size() != conn.arrangement.base_dim) throw std::invalid_argument("path lives in the wrong base space");
  TransportResult res;
  const std::size_t d = conn.fiber_dim;
  if (conn.is_zero()) {
    res.matrix = CMatrix::identity(d);
    return res;
  }
  if (!(path.wall_clearance > 0.0)) throw std::invalid_argument("path has no wall clearance");
  const std::vector<CMatrix> residues = conn.numeric_residues();

  auto run = [&](int level) {
    if (opts.fixed_step) return integrate_fixed(path, conn.arrangement, residues, d, opts.fixed_steps << level);
    return integrate_adaptive(path, conn.arrangement, residues, d, opts.tol * std::pow(0.1, level));
  };
  RunResult prev = run(0);
  for (int level = 1;; ++level) {
    RunResult next = run(level);
    res.err_estimate = max_abs_diff(prev.y, next.y);
    res.matrix = std::move(next.y);
    res.steps = next.steps;
    res.levels = level + 1;
    if (res.err_estimate <= opts.tol || level > opts.max_refinements) break;
    prev.y = res.matrix;
  }
  return res;
}

}  // namespace holonome
