#pragma once

// Quantum groups at a numeric parameter q: q-numbers, U_q(sl2) and U_q(sl_n)
// modules, coproduct tensor products, R-matrix braidings and quantum Weyl
// group elements.
//
// Conventions: K_i = q_i^{H_i}, q_i = q^{d_i}, d_i = <alpha_i,alpha_i>/2,
//   Delta(E) = E (x) 1 + K (x) E,  Delta(F) = F (x) K^-1 + 1 (x) F,  Delta(K) = K (x) K.

#include "holonome/cmatrix.hpp"
#include "holonome/liecore.hpp"

#include <string>
#include <vector>

namespace holonome {

/// [n]_q = (q^n - q^-n)/(q - q^-1), with the limit n q^{n-1} when q^2 = 1.
cplx q_int(int n, cplx q);
/// [n]_q! ; q_fact(0) = 1.
cplx q_fact(int n, cplx q);
/// exp_q(X) = sum_n q^{n(n-1)/2} X^n / [n]_q!. Throws std::invalid_argument when X is not
/// nilpotent or some [k]_q vanishes below the nilpotency degree.
CMatrix exp_q(const CMatrix& x, cplx q);

struct QModule {
  cplx log_q = 0.0;  // q = exp(log_q); powers q^x are exp(x log_q)
  std::size_t dim = 0;
  std::vector<CMatrix> E, F;        // per simple root
  std::vector<IntVec> weights;      // mu(h_i) for each basis vector
  std::vector<int> d;               // q_i = q^{d_i}
  std::vector<IntVec> cartan;       // a_ij
  std::string kind;                 // "sl2", "sln_vector" or "tensor"
  std::vector<std::size_t> factor_dims;
  std::vector<std::string> factor_kinds;

  std::size_t rank() const { return E.size(); }
  cplx q() const { return std::exp(log_q); }
  cplx qi(std::size_t i) const { return std::exp(static_cast<double>(d[i]) * log_q); }
  /// Diagonal q_i^{s * H_i}.
  CMatrix q_power_h(std::size_t i, double s) const;
  CMatrix K(std::size_t i) const { return q_power_h(i, 1.0); }
  CMatrix Kinv(std::size_t i) const { return q_power_h(i, -1.0); }
};

/// (m+1)-dimensional irreducible U_q(sl2)-module: K v_k = q^{m-2k} v_k, E v_k = [m-k+1] v_{k-1},
/// F v_k = [k+1] v_{k+1}.
QModule uq_sl2_module(int m, cplx log_q);
/// Vector module C^n of U_q(sl_n): E_i = E_{i,i+1}, F_i = E_{i+1,i}, K_i = diag(q^{delta_{a,i} - delta_{a,i+1}}).
QModule uq_sln_vector(int n, cplx log_q);
/// Coproduct tensor product; throws on mismatched q or root data.
QModule q_tensor(const QModule& a, const QModule& b);
QModule q_tensor_power(const QModule& m, std::size_t n);

/// Largest residual of K E K^-1 = q^a E, K F K^-1 = q^-a F, [E_i,F_j] = delta_ij (K - K^-1)/(q_i - q_i^-1)
/// and nilpotency of E, F.
double qmodule_residual(const QModule& m);

struct RMatrix {
  CMatrix R;       // on M1 (x) M2
  CMatrix Rcheck;  // flip o R : M1 (x) M2 -> M2 (x) M1
  std::string convention;
  /// R-check acts on the top weight vector as q^{top_exponent}.
  double top_exponent = 0.0;
  double intertwining_residual = 0.0;
  std::vector<cplx> coefficients;  // c_n for the sl2 ansatz
};

/// sl2 modules: R = q^{H (x) H / 2} sum_n c_n F^n (x) E^n with c_0 = 1 and c_n fixed by requiring
/// R-check to intertwine the coproducts. Vector modules of sl_n (n >= 2): the standard
/// R = q sum E_ii(x)E_ii + sum_{i != j} E_ii(x)E_jj + (q - q^-1) sum_{i > j} E_ij(x)E_ji.
/// Throws std::runtime_error if the intertwining residual exceeds 1e-8.
RMatrix r_matrix(const QModule& m1, const QModule& m2);
/// R-check_i acting on factors i, i+1 of M^{(x) n}.
std::vector<CMatrix> rmat_rep(const QModule& m, std::size_t n);
/// max over generators X of |R-check Delta_{12}(X) - Delta_{21}(X) R-check|.
double intertwining_residual(const QModule& m1, const QModule& m2, const CMatrix& rcheck);

enum class QWeylNormalization { literal, casimir };
QWeylNormalization parse_qweyl_normalization(const std::string& s);

struct QWeylOp {
  std::vector<CMatrix> S;
  QWeylNormalization normalization = QWeylNormalization::literal;
};
/// literal: S_i = exp_{q_i^-1}(q_i^-1 E_i q_i^-H_i) exp_{q_i^-1}(-F_i) exp_{q_i^-1}(q_i E_i q_i^H_i).
/// casimir: literal S_i times the diagonal q_i^{H_i(H_i+1)/2 + H_i^2/4}.
QWeylOp qweyl_op(const QModule& m, QWeylNormalization norm = QWeylNormalization::literal);
/// max |S_i(a,b)| over pairs whose weights are not related by s_i, relative to max |S_i|.
double qweyl_weight_residual(const QModule& m, const QWeylOp& op);

/// Coxeter orders of the root datum of a quantum module.
std::vector<IntVec> qmodule_coxeter_orders(const QModule& m);

}  // namespace holonome
