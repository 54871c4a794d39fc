#pragma once

// Classical root systems, exact matrix representations, Casimir and
// two-site invariant operators, and Tits lifts of simple reflections.

#include "holonome/rational.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace holonome {

enum class Series { A, B, C, D };

/// Scaling of the invariant form.
///  basic: highest root has squared length 2.
///  trace: <X,Y> = tr(XY) on gl/sl and 1/2 tr(XY) on so and sp (vector rep).
/// The two agree except for C_r and B_1.
enum class Normalization { basic, trace };

using IntVec = std::vector<int>;

struct RootSystem {
  Series series = Series::A;
  int rank = 0;
  Normalization normalization = Normalization::basic;
  /// Roots are written in the coordinates eps_1..eps_d; d = rank+1 for A, rank otherwise.
  std::size_t eps_dim = 0;
  std::vector<IntVec> positive_roots;  // eps coordinates
  std::vector<IntVec> simple_coords;   // coefficients on the simple roots
  std::vector<IntVec> coroots;         // coefficients on the simple coroots
  std::vector<std::size_t> simple;     // positions of the simple roots in positive_roots
  std::vector<IntVec> cartan_matrix;   // a_ij = <alpha_j, alpha_i^vee>
  std::vector<IntVec> coxeter_orders;  // m_ij
  /// <X,Y> = trace_scale * tr(XY) in the defining matrix realization.
  Rational trace_scale;
  /// <eps_i, eps_j> = eps_scale * delta_ij on the root lattice.
  Rational eps_scale;

  std::string name() const;
  std::size_t num_positive() const { return positive_roots.size(); }
  Rational inner(const IntVec& a, const IntVec& b) const;
  Rational length2(std::size_t root) const { return inner(positive_roots[root], positive_roots[root]); }
  std::size_t highest_root() const;
  /// Dynkin labels mu(h_i) of a weight given in eps coordinates.
  IntVec dynkin_labels(const IntVec& eps_weight) const;
  /// Reflects a weight written in Dynkin labels by the simple reflection s_i.
  IntVec reflect_weight(const IntVec& labels, std::size_t i) const;
  /// Reflection s_root applied to an eps-coordinate vector.
  IntVec reflect_eps(const IntVec& v, std::size_t root) const;
  /// Position of +-v among the positive roots, or npos.
  std::size_t find_root(const IntVec& eps) const;
  /// Partition of the positive roots into W-orbits (index lists, sorted).
  std::vector<std::vector<std::size_t>> root_orbits() const;
  /// Matrix of s_root on h* in the basis of simple roots.
  QMatrix reflection_matrix(std::size_t root) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Throws std::invalid_argument for unsupported combinations. B_1 (so3) and C_1 (sp2) are accepted.
RootSystem build_root_system(Series series, int rank, Normalization norm = Normalization::basic);
/// Parses names such as "A2", "B2", "C1", "D4".
RootSystem parse_root_system(const std::string& name, Normalization norm = Normalization::basic);
Normalization parse_normalization(const std::string& name);
std::string to_string(Series s);

struct RepKind {
  enum class Type { vector, adjoint, sym, ext, tensor_power, irrep } type = Type::vector;
  int k = 1;  // degree for sym/ext, factor count for tensor_power, highest weight for irrep
  /// Include the gl center (series A only); it acts through the identity of the vector rep.
  bool gl_center = false;

  std::string describe() const;
};

/// Parses "vector", "adjoint", "sym(k)", "ext(k)", "tensor_power(n)", "irrep(m)";
/// a "gl:" prefix requests the gl center.
RepKind parse_rep_kind(const std::string& text);

struct Representation {
  RootSystem root_system;
  std::string kind;
  std::size_t dim = 0;
  /// Per positive root (same order as root_system.positive_roots).
  std::vector<QMatrix> e, f, h;
  /// Action of the identity of gl_N (empty when the center is not included).
  QMatrix center;
  bool has_center = false;
  /// Dynkin labels of each basis vector.
  std::vector<IntVec> weights;
  std::map<IntVec, std::vector<std::size_t>> weight_decomp;
  /// Dimensions of the tensor factors (a single entry for an untensored module).
  std::vector<std::size_t> factor_dims;

  const QMatrix& E(std::size_t i) const { return e[root_system.simple[i]]; }
  const QMatrix& F(std::size_t i) const { return f[root_system.simple[i]]; }
  const QMatrix& H(std::size_t i) const { return h[root_system.simple[i]]; }
  std::size_t rank() const { return static_cast<std::size_t>(root_system.rank); }
  /// Basis indices of V[mu]; empty if mu is not a weight.
  std::vector<std::size_t> weight_space(const IntVec& labels) const;
  std::vector<std::size_t> zero_weight_space() const;
};

constexpr std::size_t kDefaultDimCap = 20000;

Representation build_rep(const RootSystem& rs, const RepKind& kind, std::size_t dim_cap = kDefaultDimCap);
/// Coproduct action on V (x) W.
Representation tensor_product(const Representation& a, const Representation& b,
                              std::size_t dim_cap = kDefaultDimCap);
/// Re-derives weights from the diagonal H_i; throws if some H_i is not diagonal or not integral.
void assign_weights(Representation& rep);

struct RelationReport {
  bool ok = true;
  std::string failure;  // first failing relation
};
/// [H_i,E_j] = a_ij E_j, [H_i,F_j] = -a_ij F_j, [E_i,F_j] = delta_ij H_i, [e_a,f_a] = h_a, H_i diagonal.
RelationReport check_relations(const Representation& rep);

/// Matrices realizing the defining representation, as gl_N matrices.
Representation vector_rep(const RootSystem& rs, bool gl_center = false);

/// C_alpha = (<a,a>/2)(e f + f e + h^2/2).
QMatrix casimir_op(const Representation& rep, std::size_t root);

/// Embeds x acting on factor `site` of a tensor product with the given factor dims.
QMatrix embed(const QMatrix& x, const std::vector<std::size_t>& factor_dims, std::size_t site);
/// Omega acting on factors i and j (0-based, i != j) of the tensor product of `factors`.
QMatrix omega_on_factors(const std::vector<const Representation*>& factors, std::size_t i, std::size_t j);
/// Omega_ij on V^{(x) n}; i, j are 1-based with 1 <= i < j <= n, as in the usual notation.
QMatrix omega_pair(const Representation& rep, std::size_t i, std::size_t j, std::size_t n,
                   std::size_t dim_cap = kDefaultDimCap);
/// Transposition of tensor factors i and j (0-based).
QMatrix transposition_op(const std::vector<std::size_t>& factor_dims, std::size_t i, std::size_t j);
/// Permutation operator of sigma: factor k is moved to position sigma[k].
QMatrix permutation_op(const std::vector<std::size_t>& factor_dims, const std::vector<std::size_t>& sigma);

struct TitsLift {
  std::vector<QMatrix> matrices;  // one per simple root
};
/// s~ = exp(e) exp(-f) exp(e) for every simple root.
TitsLift tits_lift(const Representation& rep);
/// The same construction for an arbitrary positive root.
QMatrix tits_lift_root(const Representation& rep, std::size_t root);

/// Checks the three Tits-lift invariants: weight mapping, squares, braid relations.
RelationReport check_tits_lift(const Representation& rep, const TitsLift& lift);

}  // namespace holonome
