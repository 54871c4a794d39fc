#include "holonome/liecore.hpp"

#include <numeric>
#include <stdexcept>

namespace holonome {

namespace {

std::size_t product(const std::vector<std::size_t>& dims, std::size_t from, std::size_t to) {
  std::size_t p = 1;
  for (std::size_t k = from; k < to; ++k) p *= dims[k];
  return p;
}

// x on factor i times y on factor j (i != j) of the tensor product.
QMatrix two_site(const QMatrix& x, std::size_t i, const QMatrix& y, std::size_t j, const std::vector<std::size_t>& dims) {
  if (i > j) return two_site(y, j, x, i, dims);
  QMatrix out = QMatrix::identity(product(dims, 0, i));
  out = kron(out, x);
  out = kron(out, QMatrix::identity(product(dims, i + 1, j)));
  out = kron(out, y);
  return kron(out, QMatrix::identity(product(dims, j + 1, dims.size())));
}

// Inverse of the Gram matrix <h_k, h_l> of the simple coroots.
QMatrix coroot_gram_inverse(const RootSystem& rs) {
  const std::size_t r = static_cast<std::size_t>(rs.rank);
  QMatrix g(r, r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) {
      const auto& ak = rs.positive_roots[rs.simple[k]];
      const auto& al = rs.positive_roots[rs.simple[l]];
      g(k, l) = 4 * rs.inner(ak, al) / (rs.inner(ak, ak) * rs.inner(al, al));
    }
  auto inv = solve(g, QMatrix::identity(r));
  if (!inv) throw std::logic_error("coroot Gram matrix is singular");
  return *inv;
}

}  // namespace

QMatrix casimir_op(const Representation& rep, std::size_t root) {
  if (root >= rep.root_system.num_positive()) throw std::invalid_argument("casimir_op: root index out of range");
  const QMatrix& e = rep.e[root];
  const QMatrix& f = rep.f[root];
  const QMatrix& h = rep.h[root];
  QMatrix c = e * f + f * e + (h * h) * Rational(1, 2);
  return c * (rep.root_system.length2(root) / 2);
}

QMatrix embed(const QMatrix& x, const std::vector<std::size_t>& dims, std::size_t site) {
  if (site >= dims.size() || x.rows() != dims[site]) throw std::invalid_argument("embed: bad site");
  return kron(kron(QMatrix::identity(product(dims, 0, site)), x), QMatrix::identity(product(dims, site + 1, dims.size())));
}

QMatrix omega_on_factors(const std::vector<const Representation*>& factors, std::size_t i, std::size_t j) {
  if (i == j || i >= factors.size() || j >= factors.size()) throw std::invalid_argument("omega: bad factor indices");
  const Representation& a = *factors[i];
  const Representation& b = *factors[j];
  const RootSystem& rs = a.root_system;
  if (rs.name() != b.root_system.name() || rs.trace_scale != b.root_system.trace_scale)
    throw std::invalid_argument("omega: factors belong to different algebras");
  std::vector<std::size_t> dims;
  for (const auto* f : factors) dims.push_back(f->dim);

  const std::size_t total = product(dims, 0, dims.size());
  QMatrix omega(total, total);
  for (std::size_t k = 0; k < rs.num_positive(); ++k) {
    const Rational w = rs.length2(k) / 2;
    omega += (two_site(a.e[k], i, b.f[k], j, dims) + two_site(a.f[k], i, b.e[k], j, dims)) * w;
  }
  const QMatrix ginv = coroot_gram_inverse(rs);
  for (std::size_t k = 0; k < ginv.rows(); ++k)
    for (std::size_t l = 0; l < ginv.cols(); ++l)
      if (sgn(ginv(k, l)) != 0) omega += two_site(a.H(k), i, b.H(l), j, dims) * ginv(k, l);
  if (a.has_center && b.has_center) {
    // <1,1> = trace_scale * N on gl_N.
    const std::size_t n_vec = rs.eps_dim;
    omega += two_site(a.center, i, b.center, j, dims) * (1 / (rs.trace_scale * static_cast<long>(n_vec)));
  }
  return omega;
}

QMatrix omega_pair(const Representation& rep, std::size_t i, std::size_t j, std::size_t n, std::size_t dim_cap) {
  if (!(1 <= i && i < j && j <= n)) throw std::invalid_argument("omega_pair requires 1 <= i < j <= n");
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    total *= rep.dim;
    if (total > dim_cap) throw std::length_error("omega_pair: tensor power exceeds the dimension cap");
  }
  std::vector<const Representation*> factors(n, &rep);
  return omega_on_factors(factors, i - 1, j - 1);
}

QMatrix permutation_op(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& sigma) {
  const std::size_t n = dims.size();
  if (sigma.size() != n) throw std::invalid_argument("permutation_op: size mismatch");
  std::vector<std::size_t> new_dims(n);
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (sigma[k] >= n || seen[sigma[k]]) throw std::invalid_argument("permutation_op: not a permutation");
    seen[sigma[k]] = true;
    new_dims[sigma[k]] = dims[k];
  }
  const std::size_t total = product(dims, 0, n);
  QMatrix p(total, total);
  std::vector<std::size_t> idx(n, 0), moved(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = n; k-- > 0;) {
      idx[k] = rem % dims[k];
      rem /= dims[k];
    }
    for (std::size_t k = 0; k < n; ++k) moved[sigma[k]] = idx[k];
    std::size_t target = 0;
    for (std::size_t k = 0; k < n; ++k) target = target * new_dims[k] + moved[k];
    p(target, flat) = 1;
  }
  return p;
}

QMatrix transposition_op(const std::vector<std::size_t>& dims, std::size_t i, std::size_t j) {
  std::vector<std::size_t> sigma(dims.size());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::swap(sigma.at(i), sigma.at(j));
  return permutation_op(dims, sigma);
}

QMatrix tits_lift_root(const Representation& rep, std::size_t root) {
  const QMatrix ee = exp_nilpotent(rep.e[root]);
  return ee * exp_nilpotent(-rep.f[root]) * ee;
}

TitsLift tits_lift(const Representation& rep) {
  TitsLift lift;
  for (std::size_t i = 0; i < rep.rank(); ++i) lift.matrices.push_back(tits_lift_root(rep, rep.root_system.simple[i]));
  return lift;
}

RelationReport check_tits_lift(const Representation& rep, const TitsLift& lift) {
  RelationReport rr;
  auto fail = [&](const std::string& what) {
    if (rr.ok) {
      rr.ok = false;
      rr.failure = what;
    }
  };
  const RootSystem& rs = rep.root_system;
  for (std::size_t i = 0; i < rep.rank(); ++i) {
    const QMatrix& s = lift.matrices[i];
    const QMatrix s2 = s * s;
    for (std::size_t b = 0; b < rep.dim; ++b) {
      const IntVec target = rs.reflect_weight(rep.weights[b], i);
      const Rational sign = (rep.weights[b][i] % 2 == 0) ? 1 : -1;
      for (std::size_t a = 0; a < rep.dim; ++a) {
        if (sgn(s(a, b)) != 0 && rep.weights[a] != target) fail("s~_" + std::to_string(i + 1) + " breaks weight mapping");
        const Rational expected = a == b ? sign : Rational(0);
        if (s2(a, b) != expected) fail("s~_" + std::to_string(i + 1) + "^2 is not the expected sign");
      }
    }
  }
  for (std::size_t i = 0; i < rep.rank(); ++i)
    for (std::size_t j = i + 1; j < rep.rank(); ++j) {
      const int m = rs.coxeter_orders[i][j];
      QMatrix lhs = QMatrix::identity(rep.dim), rhs = QMatrix::identity(rep.dim);
      for (int k = 0; k < m; ++k) {
        lhs = lhs * lift.matrices[k % 2 == 0 ? i : j];
        rhs = rhs * lift.matrices[k % 2 == 0 ? j : i];
      }
      if (!(lhs == rhs)) fail("braid relation (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  return rr;
}

}  // namespace holonome
