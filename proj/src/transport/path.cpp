#include "holonome/transport.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holonome {

Segment Segment::line(const Point& from, const Point& to) {
  if (from.size() != to.size()) throw std::invalid_argument("line: endpoint dimensions differ");
  Segment s;
  s.kind = Kind::line;
  s.c = from;
  s.a.resize(from.size());
  for (std::size_t k = 0; k < from.size(); ++k) s.a[k] = to[k] - from[k];
  s.b.assign(from.size(), 0.0);
  return s;
}

Point Segment::point(double t) const {
  Point x(c.size());
  if (kind == Kind::line) {
    for (std::size_t k = 0; k < c.size(); ++k) x[k] = c[k] + t * a[k];
  } else {
    const double th = theta0 + dtheta * t;
    const double ct = std::cos(th), st = std::sin(th);
    for (std::size_t k = 0; k < c.size(); ++k) x[k] = c[k] + ct * a[k] + st * b[k];
  }
  return x;
}

Point Segment::velocity(double t) const {
  if (kind == Kind::line) return a;
  Point v(c.size());
  const double th = theta0 + dtheta * t;
  const double ct = std::cos(th), st = std::sin(th);
  for (std::size_t k = 0; k < c.size(); ++k) v[k] = dtheta * (-st * a[k] + ct * b[k]);
  return v;
}

Segment Segment::reversed() const {
  Segment r = *this;
  if (kind == Kind::line) {
    r.c = point(1.0);
    for (auto& z : r.a) z = -z;
  } else {
    r.theta0 = theta0 + dtheta;
    r.dtheta = -dtheta;
  }
  return r;
}

Point PathSpec::start() const { return segments.front().point(0.0); }
Point PathSpec::end() const { return segments.back().point(1.0); }

PathSpec PathSpec::reversed() const {
  PathSpec r;
  r.wall_clearance = wall_clearance;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) r.segments.push_back(it->reversed());
  return r;
}

PathSpec PathSpec::then(const PathSpec& next) const {
  const Point e = end(), s = next.start();
  double gap = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) gap = std::max(gap, std::abs(e[k] - s[k]));
  if (e.size() != s.size() || gap > 1e-12) throw std::invalid_argument("paths are not concatenable");
  PathSpec p = *this;
  p.segments.insert(p.segments.end(), next.segments.begin(), next.segments.end());
  p.wall_clearance = std::min(wall_clearance, next.wall_clearance);
  return p;
}

double wall_clearance(const PathSpec& path, const Arrangement& arr) {
  constexpr int kSamples = 256;
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double best = INFINITY;
  for (const auto& seg : path.segments) {
    for (std::size_t f = 0; f < arr.forms.size(); ++f) {
      auto g = [&](double t) { return std::abs(arr.evaluate(f, seg.point(t))); };
      int arg = 0;
      double min_sample = INFINITY;
      for (int s = 0; s <= kSamples; ++s) {
        const double v = g(static_cast<double>(s) / kSamples);
        if (v < min_sample) {
          min_sample = v;
          arg = s;
        }
      }
      // Golden-section search on the bracket around the best sample.
      double lo = std::max(0, arg - 1) / static_cast<double>(kSamples);
      double hi = std::min(kSamples, arg + 1) / static_cast<double>(kSamples);
      double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
      double f1 = g(x1), f2 = g(x2);
      for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - golden * (hi - lo);
          f1 = g(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + golden * (hi - lo);
          f2 = g(x2);
        }
      }
      best = std::min({best, min_sample, f1, f2});
    }
  }
  return best;
}

namespace {

Arrangement config_arrangement(std::size_t n) {
  Arrangement arr;
  arr.base_dim = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Rational> f(n, 0);
      f[i] = 1;
      f[j] = -1;
      arr.forms.push_back(f);
    }
  return arr;
}

Arrangement root_arrangement(const RootSystem& rs) {
  Arrangement arr;
  arr.base_dim = rs.eps_dim;
  for (const auto& r : rs.positive_roots) arr.forms.emplace_back(r.begin(), r.end());
  return arr;
}

cplx pair_with(const IntVec& form, const Point& x) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < form.size(); ++k) s += static_cast<double>(form[k]) * x[k];
  return s;
}

}  // namespace

PathSpec braid_path_config(std::size_t n, std::size_t i, Point basepoint, double height) {
  if (n < 2 || i < 1 || i >= n) throw std::invalid_argument("braid_path_config needs 1 <= i <= n-1");
  if (basepoint.empty())
    for (std::size_t k = 0; k < n; ++k) basepoint.push_back(static_cast<double>(k + 1));
  if (basepoint.size() != n) throw std::invalid_argument("basepoint has the wrong dimension");
  if (!(height > 0.0)) throw std::invalid_argument("arc height must be positive");
  const std::size_t a = i - 1, b = i;
  const cplx center = (basepoint[a] + basepoint[b]) / 2.0;
  const cplx rad = (basepoint[b] - basepoint[a]) / 2.0;
  Segment s;
  s.kind = Segment::Kind::ellipse;
  s.c = basepoint;
  s.a.assign(n, 0.0);
  s.b.assign(n, 0.0);
  s.c[a] = s.c[b] = center;
  s.a[a] = -rad;
  s.a[b] = rad;
  s.b[a] = -cplx(0.0, height) * rad;
  s.b[b] = cplx(0.0, height) * rad;
  s.theta0 = 0.0;
  s.dtheta = std::numbers::pi;
  PathSpec p;
  p.segments.push_back(s);
  p.wall_clearance = wall_clearance(p, config_arrangement(n));
  if (!(p.wall_clearance > 0.0)) throw std::invalid_argument("braid path meets a diagonal; use distinct basepoint coordinates");
  return p;
}

Point default_cartan_basepoint(const RootSystem& rs) {
  const std::size_t r = static_cast<std::size_t>(rs.rank);
  Point x(rs.eps_dim);
  switch (rs.series) {
    case Series::A:
      for (std::size_t k = 0; k <= r; ++k) x[k] = static_cast<double>(r - k);
      break;
    case Series::B:
      for (std::size_t k = 0; k < r; ++k) x[k] = static_cast<double>(r - k);
      break;
    case Series::C:
      for (std::size_t k = 0; k < r; ++k) x[k] = static_cast<double>(r - k) - 0.5;
      break;
    case Series::D:
      for (std::size_t k = 0; k < r; ++k) x[k] = static_cast<double>(r - 1 - k);
      break;
  }
  return x;
}

PathSpec braid_path_cartan(const RootSystem& rs, std::size_t i, Point basepoint, double height, double min_clearance) {
  const std::size_t r = static_cast<std::size_t>(rs.rank);
  if (i < 1 || i > r) throw std::invalid_argument("braid_path_cartan needs 1 <= i <= rank");
  if (basepoint.empty()) basepoint = default_cartan_basepoint(rs);
  if (basepoint.size() != rs.eps_dim) throw std::invalid_argument("basepoint has the wrong dimension");
  const Arrangement arr = root_arrangement(rs);
  for (std::size_t k = 0; k < arr.forms.size(); ++k)
    if (std::abs(arr.evaluate(k, basepoint)) < 1e-12) throw std::invalid_argument("basepoint lies on a wall");

  const IntVec& alpha = rs.positive_roots[rs.simple[i - 1]];
  long a2 = 0;
  for (int c : alpha) a2 += static_cast<long>(c) * c;
  // Coroot in eps coordinates: 2 alpha / (alpha, alpha).
  Point coroot(rs.eps_dim);
  for (std::size_t k = 0; k < rs.eps_dim; ++k) coroot[k] = 2.0 * alpha[k] / static_cast<double>(a2);
  const cplx a = pair_with(alpha, basepoint);

  double h = height;
  for (int attempt = 0; attempt < 8; ++attempt, h /= 2.0) {
    Segment s;
    s.kind = Segment::Kind::ellipse;
    s.c.resize(rs.eps_dim);
    s.a.resize(rs.eps_dim);
    s.b.resize(rs.eps_dim);
    for (std::size_t k = 0; k < rs.eps_dim; ++k) {
      s.c[k] = basepoint[k] - a / 2.0 * coroot[k];
      s.a[k] = a / 2.0 * coroot[k];
      s.b[k] = cplx(0.0, h) * a / 2.0 * coroot[k];
    }
    s.theta0 = 0.0;
    s.dtheta = std::numbers::pi;
    PathSpec p;
    p.segments.push_back(s);
    p.wall_clearance = wall_clearance(p, arr);
    if (p.wall_clearance >= min_clearance) return p;
  }
  throw std::runtime_error("could not find a Cartan braid path with enough wall clearance");
}

}  // namespace holonome
