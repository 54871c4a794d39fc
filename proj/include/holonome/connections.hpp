#pragma once

// Logarithmic connections on hyperplane complements: arrangements, residue
// families (KZ, Casimir, Coxeter-KZ), exact flatness and zero-weight checks.

#include "holonome/cmatrix.hpp"
#include "holonome/liecore.hpp"
#include "holonome/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace holonome {

struct Arrangement {
  std::size_t base_dim = 0;
  std::vector<std::vector<Rational>> forms;

  /// Throws std::invalid_argument on zero forms, wrong lengths or proportional forms.
  void validate() const;
  cplx evaluate(std::size_t i, const std::vector<cplx>& x) const;
};

/// nabla = d - sum_i (d phi_i / phi_i) r_i with r_i = coupling[weight_class[i]] * exact_residues[i].
///
/// Residues are kept exact; the complex couplings (h for KZ and Casimir, the orbit weights
/// k_alpha for Coxeter-KZ) are applied when the numeric residues are requested. A raw
/// numeric connection sets `numeric_override` instead.
struct FlatConnection {
  Arrangement arrangement;
  std::vector<QMatrix> exact_residues;
  std::vector<std::size_t> weight_class;
  std::vector<cplx> class_coupling;
  std::size_t fiber_dim = 0;
  std::string label;
  bool verified_flat = false;
  std::vector<CMatrix> numeric_override;

  std::size_t size() const { return arrangement.forms.size(); }
  std::vector<CMatrix> numeric_residues() const;
  bool is_zero() const;
  void validate() const;
};

/// Maximal subsets of forms whose span is two-dimensional; every unordered pair of forms
/// lies in exactly one family. Families are sorted.
std::vector<std::vector<std::size_t>> coplanar_families(const Arrangement& arr);

struct FlatnessReport {
  bool pass = true;
  bool exact = true;
  std::size_t families = 0;
  std::size_t commutators_checked = 0;
  double max_norm = 0.0;
  std::vector<std::size_t> offending_family;
  std::size_t offending_index = 0;
  std::string detail;
};

/// Exact mode checks [R_j, sum_{j' in J, class c} R_j'] = 0 for every family J, j in J and weight
/// class c, so flatness holds for every value of the couplings. Numeric mode checks
/// [r_j, sum_{J} r_j'] against `tol` in max-entry norm.
FlatnessReport kohno_flatness_check(const FlatConnection& conn, bool exact = true, double tol = 1e-12);

/// Forms z_i - z_j on C^n (i < j, lexicographic) with residues Omega_ij.
FlatConnection build_kz(const Representation& V, std::size_t n, cplx h, bool verify = true);
/// Forms alpha on the Cartan (eps coordinates) with residues C_alpha.
FlatConnection build_casimir(const Representation& V, cplx h, bool verify = true);
/// Forms alpha with residues s_alpha from `reflections` (one matrix per positive root) and weights k_alpha.
/// Throws std::invalid_argument when k is not constant on W-orbits.
FlatConnection build_ckz(const RootSystem& rs, const std::vector<QMatrix>& reflections, const std::vector<cplx>& k,
                         bool verify = true);

/// Reflection representation of W on h* (simple-root basis), one matrix per positive root.
std::vector<QMatrix> reflection_rep(const RootSystem& rs);
/// For A_{n-1}: root eps_i - eps_j acts as the transposition of tensor factors i and j.
std::vector<QMatrix> factor_transpositions(const RootSystem& rs, const std::vector<std::size_t>& factor_dims);

/// Restriction to the coordinate subspace `indices` (must be invariant under all residues).
FlatConnection restrict_connection(const FlatConnection& conn, const std::vector<std::size_t>& indices);
/// Replaces residue i by residue i + delta (exact); clears verified_flat.
FlatConnection perturb_residue(const FlatConnection& conn, std::size_t i, const QMatrix& delta);

/// Basis (columns, ambient coordinates) of V[[0]] = {v in V[0] : e_alpha^2 v = 0 for all alpha > 0}.
QMatrix v0_subspace(const Representation& V);

struct V0Report {
  bool pass = true;
  std::size_t zero_weight_dim = 0;
  std::size_t v0_dim = 0;
  bool w_invariant = true;
  std::string failure;
};
/// C_alpha = <alpha,alpha>(1 - s_alpha) on V[[0]] for every positive root, and s~_i V[[0]] = V[[0]].
V0Report check_v0_identity(const Representation& V);

/// Dimension of the joint commutant of the exact residues.
std::size_t commutant_dim(const FlatConnection& conn);

struct ScalarComparison {
  bool equal_mod_scalars = true;
  std::vector<Rational> scalars;  // a_i - b_i = scalars[i] * Id
  std::string failure;
};
ScalarComparison compare_mod_scalars(const std::vector<QMatrix>& a, const std::vector<QMatrix>& b);

}  // namespace holonome
