#pragma once

// Polynomials on k x n matrices with commuting gl_k (row) and gl_n (column)
// actions, highest-weight multiplicity spaces, and the Schur-Weyl zero-weight
// dimension count.

#include "holonome/liecore.hpp"
#include "holonome/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace holonome {

/// Exponent matrix of a monomial in x_ij, row-major (k rows, n columns).
using Monomial = std::vector<int>;
/// Sparse polynomial: monomial -> coefficient.
using Poly = std::map<Monomial, Rational>;

/// Homogeneous polynomials of column degrees mu on k x n matrices, monomial basis.
struct PolySpace {
  std::size_t k = 0, n = 0;
  IntVec mu;
  std::vector<Monomial> basis;
  std::map<Monomial, std::size_t> index;

  std::size_t dim() const { return basis.size(); }
  /// Row sums of a basis monomial (its gl_k weight).
  IntVec row_degrees(std::size_t b) const;
  QMatrix to_column(const Poly& p) const;
  Poly to_poly(const QMatrix& column, std::size_t col = 0) const;
};

/// Throws std::invalid_argument on k, n < 1, wrong mu length or negative entries.
PolySpace poly_space(std::size_t k, std::size_t n, const IntVec& mu);

/// x_{a,col} d/dx_{b,col}: gl_k generator E_ab acting on column `col` only.
Poly row_op_on_column(const Poly& p, std::size_t k, std::size_t n, std::size_t a, std::size_t b, std::size_t col);
/// Diagonal gl_k action sum_col x_{a,col} d/dx_{b,col}.
Poly row_op(const Poly& p, std::size_t k, std::size_t n, std::size_t a, std::size_t b);
/// gl_n generator E'_ij = sum_a x_{a,i} d/dx_{a,j}.
Poly column_op(const Poly& p, std::size_t k, std::size_t n, std::size_t i, std::size_t j);

/// Joint gl_k highest-weight vectors of weight lambda in PolySpace(k, n, mu).
struct HWSpace {
  std::size_t k = 0, n = 0;
  IntVec lambda, mu;
  PolySpace space;
  QMatrix basis;  // columns in the monomial basis of `space`; zero columns when empty
  std::size_t dim() const { return basis.cols(); }
};

/// Requires k >= n, k >= 2, lambda a partition with at most k parts and |lambda| = |mu|.
HWSpace hw_space(std::size_t k, std::size_t n, const IntVec& lambda, const IntVec& mu);
/// max number of raising operators E_{a,a+1} not annihilating the basis (0 when correct).
std::size_t hw_raising_failures(const HWSpace& hw);

/// Semistandard tableaux of shape lambda and content mu.
std::size_t kostka_number(const IntVec& lambda, const IntVec& mu);
/// Dimension of the gl_p irrep with highest weight lambda (hook-content formula).
Rational gl_irrep_dim(const IntVec& lambda, std::size_t p);
/// Number of standard tableaux of shape lambda (hook length formula).
Rational hook_length_dim(const IntVec& lambda);
std::vector<IntVec> partitions(int d, std::size_t max_parts);
IntVec transpose_partition(const IntVec& lambda);
/// Distinct permutations of mu, lexicographically descending.
std::vector<IntVec> weight_orbit(const IntVec& mu);

struct ResidueBlock {
  IntVec nu;
  std::size_t dim = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // 1-based column pairs i < j
  std::vector<Rational> scalars;                           // C_ij - factor * Omega_ij = scalar * Id
  Rational off_scalar = 0;                                 // max |off-scalar entry|
  bool pass = true;
};

struct ResidueMatchReport {
  std::size_t k = 0, n = 0;
  IntVec lambda, mu;
  Rational omega_factor = 2;
  std::vector<ResidueBlock> blocks;
  Rational max_off_scalar = 0;
  /// gl_k Omega on the polynomial model agrees with liecore's Omega on the tensor product
  /// of symmetric powers, after the exact intertwiner between the two models.
  bool omega_cross_check = true;
  bool pass = true;
  std::string failure;
};

/// On each M_lambda^nu, nu in S_n mu, compares the sl_n Casimir residue C_{e_i - e_j} (through the
/// column action) with omega_factor times the gl_k Omega_ij on columns i, j. The identity
/// E'_ij E'_ji = Omega_ij + deg_i gives C = 2 Omega + scalar, so the default factor is 2.
ResidueMatchReport residue_match_check(std::size_t k, std::size_t n, const IntVec& lambda, const IntVec& mu,
                                       const Rational& omega_factor = 2);

struct SchurWeylPair {
  IntVec lambda;
  std::size_t zero_weight_dim = 0;  // dim V_{lambda^t}[0] for sl_n, computed as M_{lambda^t}^{(1,...,1)}
  std::size_t hook_dim = 0;         // dim U_lambda, hook length formula
  bool equal() const { return zero_weight_dim == hook_dim; }
};
/// Throws std::invalid_argument unless lambda is a partition of n.
SchurWeylPair schur_weyl_zero_weight(std::size_t n, const IntVec& lambda);

struct MultiplicityFreeReport {
  std::size_t k = 0, n = 0;
  int degree = 0;
  Rational poly_dim;    // binom(d + kn - 1, kn - 1)
  Rational decomp_dim;  // sum over lambda of dim V_lambda^(k) * sum_mu dim M_lambda^mu
  bool pass() const { return poly_dim == decomp_dim; }
};
/// Counts A^d both ways; the gl_n side is the sum of the highest-weight multiplicity spaces.
MultiplicityFreeReport multiplicity_free_check(std::size_t k, std::size_t n, int degree);

}  // namespace holonome
