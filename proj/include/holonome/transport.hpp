#pragma once

// Paths in hyperplane complements, parallel transport, braid-group monodromy
// and the relation / spectral comparisons built on it.

#include "holonome/cmatrix.hpp"
#include "holonome/connections.hpp"
#include "holonome/liecore.hpp"

#include <string>
#include <vector>

namespace holonome {

using Point = std::vector<cplx>;

/// Smooth arc t in [0,1] -> C^N.
///   line:    x(t) = c + t a
///   ellipse: x(t) = c + a cos(th) + b sin(th),  th = theta0 + dtheta t
struct Segment {
  enum class Kind { line, ellipse } kind = Kind::line;
  Point c, a, b;
  double theta0 = 0.0;
  double dtheta = 0.0;

  static Segment line(const Point& from, const Point& to);
  Point point(double t) const;
  Point velocity(double t) const;
  Segment reversed() const;
};

struct PathSpec {
  std::vector<Segment> segments;
  double wall_clearance = 0.0;

  Point start() const;
  Point end() const;
  PathSpec reversed() const;
  /// This path followed by `next`; endpoints must match.
  PathSpec then(const PathSpec& next) const;
};

/// min over t and over forms of |phi(x(t))|: dense sampling plus golden-section refinement.
double wall_clearance(const PathSpec& path, const Arrangement& arr);

/// Counterclockwise half-twist exchanging z_i and z_{i+1} (1-based i) along a half-ellipse;
/// z_{i+1} - z_i = (b - a)(cos pi t + i H sin pi t), so z_i passes below. Default basepoint (1,...,n).
PathSpec braid_path_config(std::size_t n, std::size_t i, Point basepoint = {}, double height = 1.0);

/// Point of the Cartan (eps coordinates) with alpha_j(x0) = 1 for every simple root.
Point default_cartan_basepoint(const RootSystem& rs);

/// Path from x0 to s_i(x0): alpha_i(x(t)) = alpha_i(x0)(cos pi t + i H sin pi t), the s_i-fixed part constant.
/// Throws std::invalid_argument for a basepoint on a wall; shrinks H until every positive root stays at
/// least `min_clearance` away from zero, giving up after 8 attempts (std::runtime_error).
PathSpec braid_path_cartan(const RootSystem& rs, std::size_t i, Point basepoint = {}, double height = 1.0,
                           double min_clearance = 1e-2);

struct TransportOptions {
  double tol = 1e-10;
  bool fixed_step = false;
  std::size_t fixed_steps = 400;  // per segment, for the coarse fixed-step run
  int max_refinements = 3;
};

struct TransportResult {
  CMatrix matrix;
  double err_estimate = 0.0;
  std::size_t steps = 0;
  int levels = 0;
};

/// Solves Y' = A(t) Y, A(t) = sum_i (d/dt log phi_i(x(t))) r_i, Y(0) = I along the path.
/// Adaptive mode runs Dormand-Prince 5(4) at tol, tol/10, ... until successive results agree to tol;
/// err_estimate is the last difference. Fixed-step mode compares N and 2N steps per segment.
TransportResult parallel_transport(const FlatConnection& conn, const PathSpec& path, const TransportOptions& opts = {});

struct MonodromyRep {
  std::string group;  // "artin" or "generalized"
  std::vector<IntVec> coxeter_orders;
  std::vector<CMatrix> generators;
  std::vector<double> err_estimates;
  std::vector<std::size_t> steps;
  Point basepoint;
  cplx h = 0.0;
  double tol = 0.0;
  std::string equivariance;  // "permutation", "tits" or "reflection"
  std::string composition = "symmetry-after-transport";
};

/// rho(T_i) = P_{i,i+1} * transport(braid_path_config(i)) for a connection on configuration space.
MonodromyRep monodromy_config(const FlatConnection& conn, const std::vector<std::size_t>& factor_dims,
                              const TransportOptions& opts = {}, unsigned workers = 1);
/// rho(S_i) = symmetry[i] * transport(braid_path_cartan(i)); symmetry = Tits lifts (Casimir) or reflections (CKZ).
MonodromyRep monodromy_cartan(const FlatConnection& conn, const RootSystem& rs, const std::vector<QMatrix>& symmetry,
                              const std::string& equivariance, const TransportOptions& opts = {}, unsigned workers = 1);

struct ResidualReport {
  double max_residual = 0.0;
  std::vector<double> residuals;
  std::vector<std::string> labels;
  void add(const std::string& label, double value);
};

/// Alternating products of length m_ij for every pair i < j.
ResidualReport verify_braid_relations(const std::vector<CMatrix>& gens, const std::vector<IntVec>& coxeter_orders);
ResidualReport verify_braid_relations(const MonodromyRep& rep);
/// (T_i - q_i)(T_i + q_i^{-1}) per generator.
ResidualReport hecke_check(const std::vector<CMatrix>& gens, const std::vector<cplx>& q);

struct BmwReport {
  ResidualReport cubic;
  ResidualReport tangle;
  double max_residual() const { return std::max(cubic.max_residual, tangle.max_residual); }
};
/// Cubic (T-q)(T+q^-1)(T-r^-1) and tangles E_i T_j^{+-1} E_i = r^{+-1} E_i for |i-j| = 1, with
/// E_i = 1 - (T_i - T_i^-1)/(q - q^-1). Throws std::invalid_argument if |q - q^-1| < 1e-6.
BmwReport bmw_check(const std::vector<CMatrix>& gens, cplx q, cplx r);
/// E_i as above.
CMatrix bmw_idempotent(const CMatrix& t, cplx q);

/// Eigenvalues with multiplicity, sorted by (re, im). Throws on non-finite input.
std::vector<cplx> spectrum(const CMatrix& m);
/// Smallest possible max |a_k - b_pi(k)| over bijections pi (assignment problem).
double spectral_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

using Word = std::vector<std::size_t>;  // generator indices, applied left to right as a product
/// Generators, then all words of length 2..max_len over the generators.
std::vector<Word> default_words(std::size_t generators, std::size_t max_len = 3);
CMatrix evaluate_word(const std::vector<CMatrix>& gens, const Word& w);
std::string word_to_string(const Word& w);

struct KdReport {
  bool pass = true;
  double max_spectral_dev = 0.0;
  double max_trace_dev = 0.0;
  std::vector<std::string> words;
  std::vector<double> spectral_dev;
  std::vector<double> trace_dev;
};
/// Compares eigenvalue multisets and traces of every word between two generator sets.
KdReport kd_compare(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b, const std::vector<Word>& words,
                    double tol);

/// Parameter dictionary: hbar = 2 pi i h, q = exp(kappa * hbar * <alpha,alpha>/2).
cplx q_from_h(cplx h, double kappa, double length2 = 2.0);

}  // namespace holonome
