#include "holonome/quantum.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace holonome {

namespace {

constexpr double kRootOfUnityGuard = 1e-8;

bool classical(cplx q) { return std::abs(q * q - 1.0) < 1e-12; }

CMatrix flip(std::size_t d1, std::size_t d2) {
  CMatrix p(d1 * d2, d1 * d2);
  for (std::size_t a = 0; a < d1; ++a)
    for (std::size_t b = 0; b < d2; ++b) p(b * d1 + a, a * d2 + b) = 1.0;
  return p;
}

CMatrix embed_adjacent(const CMatrix& x, std::size_t left, std::size_t right) {
  return kron(kron(CMatrix::identity(left), x), CMatrix::identity(right));
}

// Nilpotency degree: smallest n with x^n = 0 (entries below a relative threshold).
std::vector<CMatrix> nilpotent_powers(const CMatrix& x) {
  std::vector<CMatrix> powers{CMatrix::identity(x.rows())};
  const double scale = std::max(1.0, x.max_abs());
  for (std::size_t n = 1; n <= x.rows() + 1; ++n) {
    CMatrix p = powers.back() * x;
    if (p.max_abs() <= 1e-13 * std::pow(scale, static_cast<double>(n))) return powers;
    powers.push_back(std::move(p));
  }
  throw std::invalid_argument("exp_q: matrix is not nilpotent");
}

}  // namespace

cplx q_int(int n, cplx q) {
  if (classical(q)) return static_cast<double>(n) * std::pow(q, n - 1);
  return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
}

cplx q_fact(int n, cplx q) {
  cplx f = 1.0;
  for (int k = 1; k <= n; ++k) f *= q_int(k, q);
  return f;
}

CMatrix exp_q(const CMatrix& x, cplx q) {
  if (!x.is_square()) throw std::invalid_argument("exp_q: matrix not square");
  const std::vector<CMatrix> powers = nilpotent_powers(x);
  const int degree = static_cast<int>(powers.size()) - 1;
  if (!classical(q))
    for (int k = 1; k <= degree; ++k)
      if (std::abs(std::pow(q, 2 * k) - 1.0) < kRootOfUnityGuard)
        throw std::invalid_argument("exp_q: q is a root of unity below the nilpotency degree");
  CMatrix out = CMatrix::identity(x.rows());
  for (int n = 1; n <= degree; ++n)
    out.axpy(std::pow(q, n * (n - 1) / 2) / q_fact(n, q), powers[static_cast<std::size_t>(n)]);
  return out;
}

CMatrix QModule::q_power_h(std::size_t i, double s) const {
  std::vector<cplx> diag(dim);
  for (std::size_t b = 0; b < dim; ++b)
    diag[b] = std::exp(s * static_cast<double>(d[i] * weights[b][i]) * log_q);
  return CMatrix::diagonal(diag);
}

QModule uq_sl2_module(int m, cplx log_q) {
  if (m < 0) throw std::invalid_argument("uq_sl2_module needs m >= 0");
  const cplx q = std::exp(log_q);
  if (!classical(q))
    for (int k = 1; k <= m; ++k)
      if (std::abs(std::pow(q, 2 * k) - 1.0) < kRootOfUnityGuard)
        throw std::invalid_argument("uq_sl2_module: q is a root of unity of small order");
  QModule mod;
  mod.log_q = log_q;
  mod.dim = static_cast<std::size_t>(m + 1);
  mod.kind = "sl2";
  mod.d = {1};
  mod.cartan = {{2}};
  mod.factor_dims = {mod.dim};
  mod.factor_kinds = {"V" + std::to_string(m)};
  CMatrix e(mod.dim, mod.dim), f(mod.dim, mod.dim);
  for (int k = 0; k <= m; ++k) {
    if (k >= 1) e(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(k)) = q_int(m - k + 1, q);
    if (k + 1 <= m) f(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k)) = q_int(k + 1, q);
    mod.weights.push_back({m - 2 * k});
  }
  mod.E = {e};
  mod.F = {f};
  return mod;
}

QModule uq_sln_vector(int n, cplx log_q) {
  if (n < 2) throw std::invalid_argument("uq_sln_vector needs n >= 2");
  QModule mod;
  mod.log_q = log_q;
  mod.dim = static_cast<std::size_t>(n);
  mod.kind = "sln_vector";
  mod.factor_dims = {mod.dim};
  mod.factor_kinds = {"C" + std::to_string(n)};
  const std::size_t r = mod.dim - 1;
  mod.d.assign(r, 1);
  mod.cartan = build_root_system(Series::A, static_cast<int>(r)).cartan_matrix;
  mod.weights.assign(mod.dim, IntVec(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    CMatrix e(mod.dim, mod.dim), f(mod.dim, mod.dim);
    e(i, i + 1) = 1.0;
    f(i + 1, i) = 1.0;
    mod.E.push_back(e);
    mod.F.push_back(f);
    mod.weights[i][i] += 1;
    mod.weights[i + 1][i] -= 1;
  }
  return mod;
}

QModule q_tensor(const QModule& a, const QModule& b) {
  if (std::abs(a.log_q - b.log_q) > 1e-15 || a.d != b.d || a.cartan != b.cartan)
    throw std::invalid_argument("q_tensor: modules over different algebras or different q");
  QModule t;
  t.log_q = a.log_q;
  t.dim = a.dim * b.dim;
  t.d = a.d;
  t.cartan = a.cartan;
  t.kind = "tensor";
  t.factor_dims = a.factor_dims;
  t.factor_dims.insert(t.factor_dims.end(), b.factor_dims.begin(), b.factor_dims.end());
  t.factor_kinds = a.factor_kinds;
  t.factor_kinds.insert(t.factor_kinds.end(), b.factor_kinds.begin(), b.factor_kinds.end());
  const CMatrix ia = CMatrix::identity(a.dim), ib = CMatrix::identity(b.dim);
  for (std::size_t i = 0; i < a.rank(); ++i) {
    t.E.push_back(kron(a.E[i], ib) + kron(a.K(i), b.E[i]));
    t.F.push_back(kron(a.F[i], b.Kinv(i)) + kron(ia, b.F[i]));
  }
  for (std::size_t x = 0; x < a.dim; ++x)
    for (std::size_t y = 0; y < b.dim; ++y) {
      IntVec w(a.rank());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = a.weights[x][i] + b.weights[y][i];
      t.weights.push_back(w);
    }
  return t;
}

QModule q_tensor_power(const QModule& m, std::size_t n) {
  if (n < 1) throw std::invalid_argument("q_tensor_power needs n >= 1");
  QModule acc = m;
  for (std::size_t k = 1; k < n; ++k) acc = q_tensor(acc, m);
  return acc;
}

double qmodule_residual(const QModule& m) {
  double res = 0.0;
  const std::size_t r = m.rank();
  for (std::size_t i = 0; i < r; ++i) {
    const CMatrix k = m.K(i), kinv = m.Kinv(i);
    for (std::size_t j = 0; j < r; ++j) {
      const cplx qa = std::exp(static_cast<double>(m.d[i] * m.cartan[i][j]) * m.log_q);
      res = std::max(res, max_abs_diff(k * m.E[j] * kinv, m.E[j] * qa));
      res = std::max(res, max_abs_diff(k * m.F[j] * kinv, m.F[j] * (1.0 / qa)));
      const CMatrix ef = commutator(m.E[i], m.F[j]);
      if (i == j) {
        const cplx qi = m.qi(i);
        const CMatrix rhs = classical(qi) ? CMatrix::identity(m.dim) : (k - kinv) * (1.0 / (qi - 1.0 / qi));
        if (classical(qi)) {
          // q_i = 1: [E,F] = H.
          std::vector<cplx> h(m.dim);
          for (std::size_t b = 0; b < m.dim; ++b) h[b] = static_cast<double>(m.weights[b][i]);
          res = std::max(res, max_abs_diff(ef, CMatrix::diagonal(h)));
        } else {
          res = std::max(res, max_abs_diff(ef, rhs));
        }
      } else {
        res = std::max(res, ef.max_abs());
      }
    }
    res = std::max(res, power(m.E[i], static_cast<unsigned>(m.dim)).max_abs());
    res = std::max(res, power(m.F[i], static_cast<unsigned>(m.dim)).max_abs());
  }
  return res;
}

double intertwining_residual(const QModule& m1, const QModule& m2, const CMatrix& rcheck) {
  const QModule t12 = q_tensor(m1, m2), t21 = q_tensor(m2, m1);
  double res = 0.0;
  for (std::size_t i = 0; i < m1.rank(); ++i) {
    res = std::max(res, max_abs_diff(rcheck * t12.E[i], t21.E[i] * rcheck));
    res = std::max(res, max_abs_diff(rcheck * t12.F[i], t21.F[i] * rcheck));
    res = std::max(res, max_abs_diff(rcheck * t12.K(i), t21.K(i) * rcheck));
  }
  return res;
}

RMatrix r_matrix(const QModule& m1, const QModule& m2) {
  if (std::abs(m1.log_q - m2.log_q) > 1e-15 || m1.cartan != m2.cartan)
    throw std::invalid_argument("r_matrix: modules over different algebras or different q");
  RMatrix out;
  const std::size_t d1 = m1.dim, d2 = m2.dim;
  const CMatrix p = flip(d1, d2);
  const cplx q = m1.q();
  if (m1.kind == "sln_vector" && m2.kind == "sln_vector") {
    const std::size_t n = d1;
    CMatrix r(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        r(i * n + j, i * n + j) = i == j ? q : cplx(1.0);
        // (q - q^-1) E_ij (x) E_ji for i > j maps e_j (x) e_i to e_i (x) e_j.
        if (i > j) r(i * n + j, j * n + i) += q - 1.0 / q;
      }
    out.R = r;
    out.convention = "standard vector R-matrix, Hecke normalized";
  } else if (m1.rank() == 1) {
    // q^{H (x) H / 2}
    std::vector<cplx> diag(d1 * d2);
    for (std::size_t a = 0; a < d1; ++a)
      for (std::size_t b = 0; b < d2; ++b)
        diag[a * d2 + b] = std::exp(static_cast<double>(m1.weights[a][0] * m2.weights[b][0]) * m1.log_q / 2.0);
    const CMatrix qhh = CMatrix::diagonal(diag);
    std::vector<CMatrix> terms;
    CMatrix fn = CMatrix::identity(d1), en = CMatrix::identity(d2);
    for (std::size_t n = 0; n <= std::min(d1, d2); ++n) {
      CMatrix t = qhh * kron(fn, en);
      if (n > 0 && t.max_abs() < 1e-300) break;
      terms.push_back(std::move(t));
      fn = fn * m1.F[0];
      en = en * m2.E[0];
    }
    // Linear conditions on c_n: flip R Delta12(X) = Delta21(X) flip R for X = E, F.
    const QModule t12 = q_tensor(m1, m2), t21 = q_tensor(m2, m1);
    const std::size_t cells = d1 * d2 * d1 * d2;
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(2 * cells), static_cast<Eigen::Index>(terms.size()));
    for (std::size_t n = 0; n < terms.size(); ++n) {
      const CMatrix pt = p * terms[n];
      const CMatrix ce = pt * t12.E[0] - t21.E[0] * pt;
      const CMatrix cf = pt * t12.F[0] - t21.F[0] * pt;
      for (std::size_t k = 0; k < cells; ++k) {
        a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n)) = ce.data()[k];
        a(static_cast<Eigen::Index>(cells + k), static_cast<Eigen::Index>(n)) = cf.data()[k];
      }
    }
    out.coefficients.assign(terms.size(), 1.0);
    if (terms.size() > 1) {
      const Eigen::VectorXcd rhs = -a.col(0);
      const Eigen::MatrixXcd rest = a.rightCols(a.cols() - 1);
      const Eigen::VectorXcd c = rest.completeOrthogonalDecomposition().solve(rhs);
      for (Eigen::Index k = 0; k < c.size(); ++k) out.coefficients[static_cast<std::size_t>(k + 1)] = c(k);
    }
    out.R = CMatrix(d1 * d2, d1 * d2);
    for (std::size_t n = 0; n < terms.size(); ++n) out.R.axpy(out.coefficients[n], terms[n]);
    out.convention = "q^{H(x)H/2} sum c_n F^n (x) E^n";
  } else {
    throw std::invalid_argument("r_matrix is implemented for U_q(sl2) modules and U_q(sl_n) vector modules");
  }
  out.Rcheck = p * out.R;
  out.intertwining_residual = intertwining_residual(m1, m2, out.Rcheck);
  if (out.intertwining_residual > 1e-8)
    throw std::runtime_error("r_matrix: intertwiner solve failed (residual " + std::to_string(out.intertwining_residual) + ")");
  if (std::abs(m1.log_q) > 0.0) out.top_exponent = (std::log(out.Rcheck(0, 0)) / m1.log_q).real();
  return out;
}

std::vector<CMatrix> rmat_rep(const QModule& m, std::size_t n) {
  if (n < 2) throw std::invalid_argument("rmat_rep needs n >= 2");
  const RMatrix r = r_matrix(m, m);
  std::vector<CMatrix> gens;
  std::size_t left = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t right = 1;
    for (std::size_t k = i + 2; k < n; ++k) right *= m.dim;
    gens.push_back(embed_adjacent(r.Rcheck, left, right));
    left *= m.dim;
  }
  return gens;
}

QWeylNormalization parse_qweyl_normalization(const std::string& s) {
  if (s == "literal") return QWeylNormalization::literal;
  if (s == "casimir") return QWeylNormalization::casimir;
  throw std::invalid_argument("unknown quantum Weyl normalization '" + s + "'");
}

QWeylOp qweyl_op(const QModule& m, QWeylNormalization norm) {
  QWeylOp op;
  op.normalization = norm;
  for (std::size_t i = 0; i < m.rank(); ++i) {
    const cplx qi = m.qi(i);
    const cplx qinv = 1.0 / qi;
    const CMatrix first = exp_q(m.E[i] * m.q_power_h(i, -1.0) * qinv, qinv);
    const CMatrix second = exp_q(-m.F[i], qinv);
    const CMatrix third = exp_q(m.E[i] * m.q_power_h(i, 1.0) * qi, qinv);
    CMatrix s = first * second * third;
    if (norm == QWeylNormalization::casimir) {
      std::vector<cplx> diag(m.dim);
      for (std::size_t b = 0; b < m.dim; ++b) {
        const double hb = m.weights[b][i];
        diag[b] = std::exp((hb * (hb + 1.0) / 2.0 + hb * hb / 4.0) * static_cast<double>(m.d[i]) * m.log_q);
      }
      s = s * CMatrix::diagonal(diag);
    }
    op.S.push_back(std::move(s));
  }
  return op;
}

double qweyl_weight_residual(const QModule& m, const QWeylOp& op) {
  double worst = 0.0;
  for (std::size_t i = 0; i < op.S.size(); ++i) {
    const double scale = std::max(1.0, op.S[i].max_abs());
    for (std::size_t b = 0; b < m.dim; ++b) {
      IntVec target = m.weights[b];
      for (std::size_t j = 0; j < target.size(); ++j) target[j] = m.weights[b][j] - m.weights[b][i] * m.cartan[j][i];
      for (std::size_t a = 0; a < m.dim; ++a)
        if (m.weights[a] != target) worst = std::max(worst, std::abs(op.S[i](a, b)) / scale);
    }
  }
  return worst;
}

std::vector<IntVec> qmodule_coxeter_orders(const QModule& m) {
  const std::size_t r = m.rank();
  std::vector<IntVec> out(r, IntVec(r, 1));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      switch (m.cartan[i][j] * m.cartan[j][i]) {
        case 0: out[i][j] = 2; break;
        case 1: out[i][j] = 3; break;
        case 2: out[i][j] = 4; break;
        default: out[i][j] = 6; break;
      }
    }
  return out;
}

}  // namespace holonome
