#include "holonome/duality.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace holonome {

namespace {

std::vector<IntVec> compositions(int m, std::size_t parts) {
  std::vector<IntVec> out;
  IntVec cur(parts, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == parts) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  if (parts == 0) {
    if (m == 0) out.push_back({});
    return out;
  }
  rec(0, m);
  return out;
}

bool is_partition(const IntVec& lambda) {
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0) return false;
    if (i > 0 && lambda[i] > lambda[i - 1]) return false;
  }
  return true;
}

int total(const IntVec& v) { return std::accumulate(v.begin(), v.end(), 0); }

IntVec pad(IntVec v, std::size_t len) {
  v.resize(std::max(len, v.size()), 0);
  return v;
}

Poly add_scaled(Poly acc, const Poly& p, const Rational& s) {
  for (const auto& [m, c] : p) {
    Rational& slot = acc[m];
    slot += s * c;
    if (slot == 0) acc.erase(m);
  }
  return acc;
}

// gl_k highest-weight vectors without the k >= n restriction.
HWSpace hw_space_any(std::size_t k, std::size_t n, const IntVec& lambda_in, const IntVec& mu) {
  if (k < 1) throw std::invalid_argument("hw_space needs k >= 1");
  if (!is_partition(lambda_in)) throw std::invalid_argument("lambda must be a partition");
  IntVec lambda = lambda_in;
  while (lambda.size() > k && lambda.back() == 0) lambda.pop_back();
  if (lambda.size() > k) throw std::invalid_argument("lambda has more than k rows");
  lambda = pad(lambda, k);
  if (total(lambda) != total(mu)) throw std::invalid_argument("|lambda| must equal |mu|");
  HWSpace hw;
  hw.k = k;
  hw.n = n;
  hw.lambda = lambda;
  hw.mu = mu;
  hw.space = poly_space(k, n, mu);
  std::vector<std::size_t> cols;
  for (std::size_t b = 0; b < hw.space.dim(); ++b)
    if (hw.space.row_degrees(b) == lambda) cols.push_back(b);
  if (cols.empty()) {
    hw.basis = QMatrix(hw.space.dim(), 0);
    return hw;
  }
  // Rows of the raising-operator matrix restricted to the weight-lambda monomials.
  std::map<std::pair<std::size_t, Monomial>, std::vector<Rational>> rows;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Poly mono{{hw.space.basis[cols[c]], Rational(1)}};
    for (std::size_t a = 0; a + 1 < k; ++a)
      for (const auto& [m, coeff] : row_op(mono, k, n, a, a + 1)) {
        auto& row = rows[{a, m}];
        if (row.empty()) row.assign(cols.size(), Rational(0));
        row[c] += coeff;
      }
  }
  RowReducer rr(cols.size());
  for (auto& [key, row] : rows) rr.add_row(row);
  const QMatrix kernel = rr.nullspace();
  hw.basis = QMatrix(hw.space.dim(), kernel.cols());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t v = 0; v < kernel.cols(); ++v) hw.basis(cols[c], v) = kernel(c, v);
  return hw;
}

using PolyOp = std::function<Poly(const Poly&)>;

QMatrix op_matrix(const PolySpace& sp, const PolyOp& op) {
  QMatrix m(sp.dim(), sp.dim());
  for (std::size_t b = 0; b < sp.dim(); ++b)
    for (const auto& [mono, c] : op(Poly{{sp.basis[b], Rational(1)}})) m(sp.index.at(mono), b) = c;
  return m;
}

// Poly action of a k x k matrix X on column `col`: sum_ab X_ab x_{a,col} d/dx_{b,col}.
Poly matrix_on_column(const Poly& p, const QMatrix& x, std::size_t k, std::size_t n, std::size_t col) {
  Poly acc;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (x(a, b) != 0) acc = add_scaled(std::move(acc), row_op_on_column(p, k, n, a, b, col), x(a, b));
  return acc;
}

Poly omega_columns(const Poly& p, std::size_t k, std::size_t n, std::size_t i, std::size_t j) {
  Poly acc;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      acc = add_scaled(std::move(acc), row_op_on_column(row_op_on_column(p, k, n, b, a, j), k, n, a, b, i), Rational(1));
  return acc;
}

// Invertible T with T P(X) = L(X) T for every generator X; empty matrix if none exists.
QMatrix intertwiner(const std::vector<QMatrix>& poly_side, const std::vector<QMatrix>& lie_side) {
  const std::size_t d = poly_side.front().rows();
  RowReducer rr(d * d);
  for (std::size_t g = 0; g < poly_side.size(); ++g) {
    const QMatrix& p = poly_side[g];
    const QMatrix& l = lie_side[g];
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        std::vector<Rational> row(d * d, Rational(0));
        for (std::size_t s = 0; s < d; ++s) {
          row[r * d + s] += p(s, c);
          row[s * d + c] -= l(r, s);
        }
        rr.add_row(std::move(row));
      }
  }
  const QMatrix kernel = rr.nullspace();
  if (kernel.cols() == 0) return {};
  QMatrix t(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) t(r, c) = kernel(r * d + c, 0);
  if (rank(t) != d) return {};
  return t;
}

// Checks that the poly-model Omega_ij on PolySpace(nu) matches liecore's Omega on the tensor
// product of gl:sym(nu_j) modules, for every pair of columns of positive degree.
bool cross_check_omega(std::size_t k, std::size_t n, const IntVec& nu, std::string& failure) {
  if (k < 2) return true;
  const RootSystem rs = build_root_system(Series::A, static_cast<int>(k) - 1);
  const Representation vec = vector_rep(rs, true);
  std::vector<Representation> reps;
  std::vector<std::size_t> live;
  QMatrix t_total = QMatrix::identity(1);
  for (std::size_t j = 0; j < n; ++j) {
    if (nu[j] == 0) continue;
    RepKind kind;
    kind.type = RepKind::Type::sym;
    kind.k = nu[j];
    kind.gl_center = true;
    reps.push_back(build_rep(rs, kind));
    live.push_back(j);
    const Representation& lie = reps.back();
    const PolySpace col = poly_space(k, 1, {nu[j]});
    std::vector<QMatrix> ps, ls;
    for (std::size_t r = 0; r < rs.positive_roots.size(); ++r) {
      ps.push_back(op_matrix(col, [&](const Poly& p) { return matrix_on_column(p, vec.e[r], k, 1, 0); }));
      ls.push_back(lie.e[r]);
      ps.push_back(op_matrix(col, [&](const Poly& p) { return matrix_on_column(p, vec.f[r], k, 1, 0); }));
      ls.push_back(lie.f[r]);
    }
    ps.push_back(op_matrix(col, [&](const Poly& p) { return matrix_on_column(p, vec.center, k, 1, 0); }));
    ls.push_back(lie.center);
    const QMatrix t = intertwiner(ps, ls);
    if (t.rows() == 0) {
      failure = "no intertwiner between the polynomial and symmetric-power models of column " + std::to_string(j + 1);
      return false;
    }
    t_total = kron(t_total, t);
  }
  if (live.size() < 2) return true;
  std::vector<const Representation*> ptrs;
  for (const auto& r : reps) ptrs.push_back(&r);
  const PolySpace sp = poly_space(k, n, nu);
  for (std::size_t a = 0; a < live.size(); ++a)
    for (std::size_t b = a + 1; b < live.size(); ++b) {
      const QMatrix poly = op_matrix(sp, [&](const Poly& p) { return omega_columns(p, k, n, live[a], live[b]); });
      const QMatrix lie = omega_on_factors(ptrs, a, b);
      if (!(t_total * poly == lie * t_total)) {
        failure = "Omega mismatch on columns " + std::to_string(live[a] + 1) + "," + std::to_string(live[b] + 1);
        return false;
      }
    }
  return true;
}

}  // namespace

IntVec PolySpace::row_degrees(std::size_t b) const {
  IntVec r(k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < n; ++j) r[a] += basis[b][a * n + j];
  return r;
}

QMatrix PolySpace::to_column(const Poly& p) const {
  QMatrix v(dim(), 1);
  for (const auto& [m, c] : p) {
    const auto it = index.find(m);
    if (it == index.end()) throw std::invalid_argument("polynomial is not in this space");
    v(it->second, 0) = c;
  }
  return v;
}

Poly PolySpace::to_poly(const QMatrix& column, std::size_t col) const {
  Poly p;
  for (std::size_t b = 0; b < dim(); ++b)
    if (column(b, col) != 0) p[basis[b]] = column(b, col);
  return p;
}

PolySpace poly_space(std::size_t k, std::size_t n, const IntVec& mu) {
  if (k < 1 || n < 1) throw std::invalid_argument("poly_space needs k, n >= 1");
  if (mu.size() != n) throw std::invalid_argument("mu must have n entries");
  for (int m : mu)
    if (m < 0) throw std::invalid_argument("column degrees must be non-negative");
  PolySpace sp;
  sp.k = k;
  sp.n = n;
  sp.mu = mu;
  std::vector<std::vector<IntVec>> per_col;
  for (int m : mu) per_col.push_back(compositions(m, k));
  // Column 0 varies slowest, so the space is the Kronecker product of the per-column spaces.
  Monomial cur(k * n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      sp.index[cur] = sp.basis.size();
      sp.basis.push_back(cur);
      return;
    }
    for (const auto& comp : per_col[j]) {
      for (std::size_t a = 0; a < k; ++a) cur[a * n + j] = comp[a];
      rec(j + 1);
    }
  };
  rec(0);
  return sp;
}

Poly row_op_on_column(const Poly& p, std::size_t k, std::size_t n, std::size_t a, std::size_t b, std::size_t col) {
  if (a >= k || b >= k || col >= n) throw std::out_of_range("row_op_on_column index");
  Poly out;
  for (const auto& [m, c] : p) {
    const int e = m[b * n + col];
    if (e == 0) continue;
    Monomial t = m;
    t[b * n + col] -= 1;
    t[a * n + col] += 1;
    Rational& slot = out[t];
    slot += c * e;
    if (slot == 0) out.erase(t);
  }
  return out;
}

Poly row_op(const Poly& p, std::size_t k, std::size_t n, std::size_t a, std::size_t b) {
  Poly acc;
  for (std::size_t col = 0; col < n; ++col) acc = add_scaled(std::move(acc), row_op_on_column(p, k, n, a, b, col), 1);
  return acc;
}

Poly column_op(const Poly& p, std::size_t k, std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw std::out_of_range("column_op index");
  Poly out;
  for (const auto& [m, c] : p)
    for (std::size_t a = 0; a < k; ++a) {
      const int e = m[a * n + j];
      if (e == 0) continue;
      Monomial t = m;
      t[a * n + j] -= 1;
      t[a * n + i] += 1;
      Rational& slot = out[t];
      slot += c * e;
      if (slot == 0) out.erase(t);
    }
  return out;
}

HWSpace hw_space(std::size_t k, std::size_t n, const IntVec& lambda, const IntVec& mu) {
  if (k < n) throw std::invalid_argument("hw_space needs k >= n");
  return hw_space_any(k, n, lambda, mu);
}

std::size_t hw_raising_failures(const HWSpace& hw) {
  std::size_t bad = 0;
  for (std::size_t a = 0; a + 1 < hw.k; ++a) {
    bool ok = true;
    for (std::size_t v = 0; v < hw.dim() && ok; ++v)
      ok = row_op(hw.space.to_poly(hw.basis, v), hw.k, hw.n, a, a + 1).empty();
    if (!ok) ++bad;
  }
  return bad;
}

std::size_t kostka_number(const IntVec& lambda_in, const IntVec& mu) {
  if (!is_partition(lambda_in)) throw std::invalid_argument("lambda must be a partition");
  for (int m : mu)
    if (m < 0) throw std::invalid_argument("content must be non-negative");
  IntVec lambda = lambda_in;
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  if (total(lambda) != total(mu)) return 0;
  const std::size_t rows = lambda.size();
  // Fill value j as a horizontal strip of size mu_j.
  std::function<std::size_t(std::size_t, const IntVec&)> rec = [&](std::size_t j, const IntVec& cur) -> std::size_t {
    if (j == mu.size()) return cur == lambda ? 1 : 0;
    std::size_t count = 0;
    IntVec next = cur;
    std::function<void(std::size_t, int)> place = [&](std::size_t row, int left) {
      if (row == rows) {
        if (left == 0) count += rec(j + 1, next);
        return;
      }
      const int upper = std::min(lambda[row], row == 0 ? lambda[0] : cur[row - 1]);
      for (int v = cur[row]; v <= upper && v - cur[row] <= left; ++v) {
        next[row] = v;
        place(row + 1, left - (v - cur[row]));
      }
      next[row] = cur[row];
    };
    place(0, mu[j]);
    return count;
  };
  return rec(0, IntVec(rows, 0));
}

Rational gl_irrep_dim(const IntVec& lambda_in, std::size_t p) {
  if (!is_partition(lambda_in)) throw std::invalid_argument("lambda must be a partition");
  IntVec lambda = lambda_in;
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  if (lambda.size() > p) return 0;
  const IntVec conj = transpose_partition(lambda);
  Rational d = 1;
  for (std::size_t r = 0; r < lambda.size(); ++r)
    for (int c = 0; c < lambda[r]; ++c) {
      const long hook = (lambda[r] - c) + (conj[static_cast<std::size_t>(c)] - static_cast<int>(r)) - 1;
      d *= frac(static_cast<long>(p) + c - static_cast<long>(r), hook);
    }
  return d;
}

Rational hook_length_dim(const IntVec& lambda_in) {
  if (!is_partition(lambda_in)) throw std::invalid_argument("lambda must be a partition");
  IntVec lambda = lambda_in;
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  const IntVec conj = transpose_partition(lambda);
  Rational d = 1;
  long box = 0;
  for (std::size_t r = 0; r < lambda.size(); ++r)
    for (int c = 0; c < lambda[r]; ++c) {
      const long hook = (lambda[r] - c) + (conj[static_cast<std::size_t>(c)] - static_cast<int>(r)) - 1;
      d *= frac(++box, hook);
    }
  return d;
}

std::vector<IntVec> partitions(int d, std::size_t max_parts) {
  std::vector<IntVec> out;
  IntVec cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (cur.size() == max_parts) return;
    for (int v = std::min(left, cap); v >= 1; --v) {
      cur.push_back(v);
      rec(left - v, v);
      cur.pop_back();
    }
  };
  if (d < 0) throw std::invalid_argument("partitions of a negative number");
  rec(d, d);
  return out;
}

IntVec transpose_partition(const IntVec& lambda) {
  IntVec t(lambda.empty() ? 0 : static_cast<std::size_t>(std::max(0, lambda.front())), 0);
  for (int part : lambda)
    for (int c = 0; c < part; ++c) ++t[static_cast<std::size_t>(c)];
  return t;
}

std::vector<IntVec> weight_orbit(const IntVec& mu) {
  IntVec cur = mu;
  std::sort(cur.begin(), cur.end(), std::greater<int>());
  std::vector<IntVec> out;
  do out.push_back(cur);
  while (std::prev_permutation(cur.begin(), cur.end()));
  return out;
}

ResidueMatchReport residue_match_check(std::size_t k, std::size_t n, const IntVec& lambda, const IntVec& mu,
                                       const Rational& omega_factor) {
  ResidueMatchReport rep;
  rep.k = k;
  rep.n = n;
  rep.lambda = lambda;
  rep.mu = mu;
  rep.omega_factor = omega_factor;
  if (n < 2) throw std::invalid_argument("residue_match_check needs n >= 2");
  for (const IntVec& nu : weight_orbit(mu)) {
    const HWSpace hw = hw_space(k, n, lambda, nu);
    ResidueBlock block;
    block.nu = nu;
    block.dim = hw.dim();
    std::string why;
    if (!cross_check_omega(k, n, nu, why)) {
      rep.omega_cross_check = false;
      if (rep.failure.empty()) rep.failure = why;
    }
    if (block.dim > 0) {
      const PolySpace& sp = hw.space;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          QMatrix omega_img(sp.dim(), block.dim), cas_img(sp.dim(), block.dim);
          for (std::size_t v = 0; v < block.dim; ++v) {
            const Poly p = sp.to_poly(hw.basis, v);
            const Poly om = omega_columns(p, k, n, i, j);
            // C = e f + f e + h^2/2 with e = E'_ij, f = E'_ji, h = E'_ii - E'_jj (<alpha,alpha> = 2).
            const auto h = [&](const Poly& x) {
              return add_scaled(column_op(x, k, n, i, i), column_op(x, k, n, j, j), -1);
            };
            Poly cas = column_op(column_op(p, k, n, j, i), k, n, i, j);
            cas = add_scaled(std::move(cas), column_op(column_op(p, k, n, i, j), k, n, j, i), 1);
            cas = add_scaled(std::move(cas), h(h(p)), frac(1, 2));
            const QMatrix oc = sp.to_column(om), cc = sp.to_column(cas);
            for (std::size_t r = 0; r < sp.dim(); ++r) {
              omega_img(r, v) = oc(r, 0);
              cas_img(r, v) = cc(r, 0);
            }
          }
          QMatrix omega, cas;
          try {
            omega = coordinates_in(hw.basis, omega_img);
            cas = coordinates_in(hw.basis, cas_img);
          } catch (const std::runtime_error&) {
            throw std::runtime_error("residue_match_check: operator leaves the highest-weight space (basis bug)");
          }
          const QMatrix diff = cas - omega_factor * omega;
          const Rational c = diff.trace() / static_cast<long>(block.dim);
          const QMatrix off = diff - QMatrix::identity(block.dim) * c;
          Rational worst = 0;
          for (std::size_t r = 0; r < block.dim; ++r)
            for (std::size_t s = 0; s < block.dim; ++s) worst = std::max(worst, Rational(abs(off(r, s))));
          block.pairs.emplace_back(i + 1, j + 1);
          block.scalars.push_back(c);
          block.off_scalar = std::max(block.off_scalar, worst);
        }
      block.pass = block.off_scalar == 0;
    }
    rep.max_off_scalar = std::max(rep.max_off_scalar, block.off_scalar);
    if (!block.pass && rep.failure.empty())
      rep.failure = "non-scalar discrepancy on the block of weight index " + std::to_string(rep.blocks.size());
    rep.blocks.push_back(std::move(block));
  }
  rep.pass = rep.max_off_scalar == 0 && rep.omega_cross_check;
  return rep;
}

SchurWeylPair schur_weyl_zero_weight(std::size_t n, const IntVec& lambda) {
  if (n < 1) throw std::invalid_argument("schur_weyl_zero_weight needs n >= 1");
  if (!is_partition(lambda) || total(lambda) != static_cast<int>(n))
    throw std::invalid_argument("lambda must be a partition of n");
  SchurWeylPair out;
  out.lambda = lambda;
  const IntVec lt = transpose_partition(lambda);
  if (lt.size() <= n) out.zero_weight_dim = hw_space(n, n, lt, IntVec(n, 1)).dim();
  out.hook_dim = static_cast<std::size_t>(hook_length_dim(lambda).get_num().get_ui());
  return out;
}

MultiplicityFreeReport multiplicity_free_check(std::size_t k, std::size_t n, int degree) {
  if (k < 1 || n < 1 || degree < 0) throw std::invalid_argument("multiplicity_free_check needs k, n >= 1, d >= 0");
  MultiplicityFreeReport rep;
  rep.k = k;
  rep.n = n;
  rep.degree = degree;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(degree) + k * n - 1, k * n - 1);
  rep.poly_dim = Rational(b);
  rep.decomp_dim = 0;
  for (const IntVec& lambda : partitions(degree, std::min(k, n))) {
    long mult = 0;
    for (const IntVec& mu : compositions(degree, n)) mult += static_cast<long>(hw_space_any(k, n, lambda, mu).dim());
    rep.decomp_dim += gl_irrep_dim(lambda, k) * mult;
  }
  return rep;
}

}  // namespace holonome
