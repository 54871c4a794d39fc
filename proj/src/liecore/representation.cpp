#include "holonome/liecore.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace holonome {

namespace {

struct VectorData {
  std::size_t N = 0;
  std::vector<IntVec> basis_weights;  // eps coordinates
  QMatrix form;                       // invariant bilinear form J (empty for sl)
};

VectorData vector_data(const RootSystem& rs) {
  VectorData vd;
  const std::size_t r = static_cast<std::size_t>(rs.rank);
  const std::size_t d = rs.eps_dim;
  auto eps = [d](std::size_t i, int c) {
    IntVec v(d, 0);
    v[i] = c;
    return v;
  };
  if (rs.series == Series::A) {
    vd.N = r + 1;
    for (std::size_t a = 0; a < vd.N; ++a) vd.basis_weights.push_back(eps(a, 1));
    return vd;
  }
  // Basis order eps_1..eps_r, [0], -eps_r..-eps_1; the pairing partner of a is N-1-a.
  for (std::size_t a = 0; a < r; ++a) vd.basis_weights.push_back(eps(a, 1));
  if (rs.series == Series::B) vd.basis_weights.push_back(IntVec(d, 0));
  for (std::size_t a = 0; a < r; ++a) vd.basis_weights.push_back(eps(r - 1 - a, -1));
  vd.N = vd.basis_weights.size();
  vd.form = QMatrix(vd.N, vd.N);
  // Symmetric pairing for so; for sp the pairing is +1 from the positive half and -1 back.
  for (std::size_t a = 0; a < vd.N; ++a) vd.form(a, vd.N - 1 - a) = (rs.series == Series::C && a >= r) ? -1 : 1;
  return vd;
}

// Root vector for alpha inside sl_N / so(J) / sp(J): X supported on entries (a,b) with w(a) - w(b) = alpha.
QMatrix root_vector(const VectorData& vd, const IntVec& alpha) {
  std::vector<std::pair<std::size_t, std::size_t>> support;
  for (std::size_t a = 0; a < vd.N; ++a)
    for (std::size_t b = 0; b < vd.N; ++b) {
      IntVec diff(alpha.size());
      for (std::size_t i = 0; i < alpha.size(); ++i) diff[i] = vd.basis_weights[a][i] - vd.basis_weights[b][i];
      if (diff == alpha) support.emplace_back(a, b);
    }
  if (support.empty()) throw std::logic_error("no matrix entries carry the requested root");
  QMatrix x(vd.N, vd.N);
  if (vd.form.rows() == 0) {
    x(support[0].first, support[0].second) = 1;
    return x;
  }
  // Unknowns: the support entries. Equations: X^T J + J X = 0, entry by entry.
  const std::size_t u = support.size();
  QMatrix system(vd.N * vd.N, u);
  for (std::size_t k = 0; k < u; ++k) {
    QMatrix ek(vd.N, vd.N);
    ek(support[k].first, support[k].second) = 1;
    const QMatrix c = ek.transpose() * vd.form + vd.form * ek;
    for (std::size_t i = 0; i < vd.N; ++i)
      for (std::size_t j = 0; j < vd.N; ++j) system(i * vd.N + j, k) = c(i, j);
  }
  const QMatrix ns = nullspace(system);
  if (ns.cols() != 1) throw std::logic_error("root space is not one-dimensional");
  Rational lead = 0;
  for (std::size_t k = 0; k < u; ++k)
    if (sgn(ns(k, 0)) != 0) {
      lead = ns(k, 0);
      break;
    }
  for (std::size_t k = 0; k < u; ++k) x(support[k].first, support[k].second) = ns(k, 0) / lead;
  return x;
}

// Images of the Lie elements of one module, in root order.
struct LieImages {
  std::vector<QMatrix> e, f, h;
  QMatrix z;
  bool has_z = false;
};

LieImages vector_images(const RootSystem& rs, bool gl_center) {
  const VectorData vd = vector_data(rs);
  LieImages im;
  for (const auto& alpha : rs.positive_roots) {
    QMatrix e = root_vector(vd, alpha);
    std::vector<Rational> hd(vd.N);
    long a2 = 0;
    for (int c : alpha) a2 += static_cast<long>(c) * c;
    for (std::size_t a = 0; a < vd.N; ++a) {
      long dot = 0;
      for (std::size_t i = 0; i < alpha.size(); ++i) dot += static_cast<long>(vd.basis_weights[a][i]) * alpha[i];
      hd[a] = frac(2 * dot, a2);
    }
    QMatrix h = QMatrix::diagonal(hd);
    QMatrix et = e.transpose();
    const QMatrix k = commutator(e, et);
    // k must be a nonzero multiple of h.
    Rational ratio = 0;
    for (std::size_t a = 0; a < vd.N; ++a)
      if (sgn(h(a, a)) != 0) {
        ratio = k(a, a) / h(a, a);
        break;
      }
    if (sgn(ratio) == 0 || !(k == h * ratio)) throw std::logic_error("[e, e^T] is not proportional to h_alpha");
    im.e.push_back(std::move(e));
    im.f.push_back(et * (1 / ratio));
    im.h.push_back(std::move(h));
  }
  if (gl_center) {
    if (rs.series != Series::A) throw std::invalid_argument("the gl center exists only for series A");
    im.z = QMatrix::identity(vd.N);
    im.has_z = true;
  }
  return im;
}

LieImages map_images(const LieImages& in, const std::function<QMatrix(const QMatrix&)>& pi) {
  LieImages out;
  for (const auto& x : in.e) out.e.push_back(pi(x));
  for (const auto& x : in.f) out.f.push_back(pi(x));
  for (const auto& x : in.h) out.h.push_back(pi(x));
  if (in.has_z) {
    out.z = pi(in.z);
    out.has_z = true;
  }
  return out;
}

Representation make_rep(const RootSystem& rs, std::string kind, LieImages im, std::vector<std::size_t> factor_dims) {
  Representation rep;
  rep.root_system = rs;
  rep.kind = std::move(kind);
  rep.dim = im.e.empty() ? 0 : im.e.front().rows();
  rep.e = std::move(im.e);
  rep.f = std::move(im.f);
  rep.h = std::move(im.h);
  rep.has_center = im.has_z;
  if (im.has_z) rep.center = std::move(im.z);
  rep.factor_dims = factor_dims.empty() ? std::vector<std::size_t>{rep.dim} : std::move(factor_dims);
  assign_weights(rep);
  return rep;
}

// Multi-indices of total degree k in N variables, lexicographically decreasing exponent order.
std::vector<IntVec> monomials(std::size_t N, int k) {
  std::vector<IntVec> out;
  IntVec cur(N, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == N) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int c = left; c >= 0; --c) {
      cur[pos] = c;
      rec(pos + 1, left - c);
    }
  };
  if (N == 0) return out;
  rec(0, k);
  return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t N, int k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t a = start; a < N; ++a) {
      cur.push_back(a);
      rec(a + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Action of a gl_N matrix as a derivation of the degree-k polynomials.
QMatrix sym_action(const QMatrix& x, const std::vector<IntVec>& basis, const std::map<IntVec, std::size_t>& index) {
  QMatrix out(basis.size(), basis.size());
  const std::size_t N = x.rows();
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const IntVec& m = basis[col];
    for (std::size_t b = 0; b < N; ++b) {
      if (m[b] == 0) continue;
      for (std::size_t a = 0; a < N; ++a) {
        if (sgn(x(a, b)) == 0) continue;
        IntVec img = m;
        img[b] -= 1;
        img[a] += 1;
        out(index.at(img), col) += x(a, b) * m[b];
      }
    }
  }
  return out;
}

QMatrix ext_action(const QMatrix& x, const std::vector<std::vector<std::size_t>>& basis,
                   const std::map<std::vector<std::size_t>, std::size_t>& index) {
  QMatrix out(basis.size(), basis.size());
  const std::size_t N = x.rows();
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto& s = basis[col];
    for (std::size_t pos = 0; pos < s.size(); ++pos) {
      const std::size_t b = s[pos];
      for (std::size_t a = 0; a < N; ++a) {
        if (sgn(x(a, b)) == 0) continue;
        auto img = s;
        img[pos] = a;
        // Sort with sign; repeated index means the wedge vanishes.
        int sign = 1;
        for (std::size_t i = 0; i < img.size(); ++i)
          for (std::size_t j = 0; j + 1 < img.size() - i; ++j)
            if (img[j] > img[j + 1]) {
              std::swap(img[j], img[j + 1]);
              sign = -sign;
            }
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) continue;
        out(index.at(img), col) += x(a, b) * sign;
      }
    }
  }
  return out;
}

QMatrix flatten_column(const QMatrix& m) {
  QMatrix v(m.rows() * m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i * m.cols() + j, 0) = m(i, j);
  return v;
}

LieImages adjoint_images(const RootSystem& rs, const LieImages& vec) {
  // Basis: e_alpha (positive roots), simple coroots, f_alpha.
  std::vector<QMatrix> basis;
  for (const auto& x : vec.e) basis.push_back(x);
  for (std::size_t i = 0; i < rs.simple.size(); ++i) basis.push_back(vec.h[rs.simple[i]]);
  for (const auto& x : vec.f) basis.push_back(x);
  const std::size_t dim = basis.size();
  const std::size_t N2 = basis.front().rows() * basis.front().cols();
  QMatrix bmat(N2, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    const QMatrix col = flatten_column(basis[c]);
    for (std::size_t r = 0; r < N2; ++r) bmat(r, c) = col(r, 0);
  }
  auto ad = [&](const QMatrix& x) {
    QMatrix images(N2, dim);
    for (std::size_t c = 0; c < dim; ++c) {
      const QMatrix col = flatten_column(commutator(x, basis[c]));
      for (std::size_t r = 0; r < N2; ++r) images(r, c) = col(r, 0);
    }
    return coordinates_in(bmat, images);
  };
  LieImages out = map_images(vec, ad);
  return out;
}

LieImages tensor_images(const LieImages& a, const LieImages& b) {
  const std::size_t da = a.e.front().rows();
  const std::size_t db = b.e.front().rows();
  const QMatrix ia = QMatrix::identity(da);
  const QMatrix ib = QMatrix::identity(db);
  auto co = [&](const QMatrix& x, const QMatrix& y) { return kron(x, ib) + kron(ia, y); };
  LieImages out;
  for (std::size_t k = 0; k < a.e.size(); ++k) {
    out.e.push_back(co(a.e[k], b.e[k]));
    out.f.push_back(co(a.f[k], b.f[k]));
    out.h.push_back(co(a.h[k], b.h[k]));
  }
  if (a.has_z && b.has_z) {
    out.z = co(a.z, b.z);
    out.has_z = true;
  }
  return out;
}

LieImages images_of(const Representation& rep) {
  LieImages im;
  im.e = rep.e;
  im.f = rep.f;
  im.h = rep.h;
  im.has_z = rep.has_center;
  if (rep.has_center) im.z = rep.center;
  return im;
}

void check_cap(std::size_t dim, std::size_t cap) {
  if (dim > cap)
    throw std::length_error("representation dimension " + std::to_string(dim) + " exceeds the cap " +
                            std::to_string(cap));
}

}  // namespace

std::string RepKind::describe() const {
  std::string base;
  switch (type) {
    case Type::vector: base = "vector"; break;
    case Type::adjoint: base = "adjoint"; break;
    case Type::sym: base = "sym(" + std::to_string(k) + ")"; break;
    case Type::ext: base = "ext(" + std::to_string(k) + ")"; break;
    case Type::tensor_power: base = "tensor_power(" + std::to_string(k) + ")"; break;
    case Type::irrep: base = "irrep(" + std::to_string(k) + ")"; break;
  }
  return gl_center ? "gl:" + base : base;
}

RepKind parse_rep_kind(const std::string& text_in) {
  RepKind kind;
  std::string text = text_in;
  if (text.rfind("gl:", 0) == 0) {
    kind.gl_center = true;
    text = text.substr(3);
  }
  auto arg = [&](const std::string& prefix) -> int {
    const std::string inner = text.substr(prefix.size() + 1, text.size() - prefix.size() - 2);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(inner, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad representation '" + text_in + "'");
    }
    if (used != inner.size() || v < 0) throw std::invalid_argument("bad representation '" + text_in + "'");
    return v;
  };
  auto is_call = [&](const std::string& prefix) {
    return text.size() > prefix.size() + 2 && text.rfind(prefix + "(", 0) == 0 && text.back() == ')';
  };
  if (text == "vector") {
    kind.type = RepKind::Type::vector;
  } else if (text == "adjoint") {
    kind.type = RepKind::Type::adjoint;
  } else if (is_call("sym")) {
    kind.type = RepKind::Type::sym;
    kind.k = arg("sym");
  } else if (is_call("ext")) {
    kind.type = RepKind::Type::ext;
    kind.k = arg("ext");
  } else if (is_call("tensor_power")) {
    kind.type = RepKind::Type::tensor_power;
    kind.k = arg("tensor_power");
    if (kind.k < 1) throw std::invalid_argument("tensor_power needs at least one factor");
  } else if (is_call("irrep")) {
    kind.type = RepKind::Type::irrep;
    kind.k = arg("irrep");
  } else {
    throw std::invalid_argument("unknown representation '" + text_in + "'");
  }
  return kind;
}

std::vector<std::size_t> Representation::weight_space(const IntVec& labels) const {
  auto it = weight_decomp.find(labels);
  return it == weight_decomp.end() ? std::vector<std::size_t>{} : it->second;
}

std::vector<std::size_t> Representation::zero_weight_space() const { return weight_space(IntVec(rank(), 0)); }

void assign_weights(Representation& rep) {
  const std::size_t r = rep.rank();
  rep.weights.assign(rep.dim, IntVec(r, 0));
  rep.weight_decomp.clear();
  for (std::size_t i = 0; i < r; ++i) {
    const QMatrix& hi = rep.H(i);
    if (!hi.is_diagonal()) throw std::logic_error("H_" + std::to_string(i + 1) + " is not diagonal");
    for (std::size_t a = 0; a < rep.dim; ++a) {
      const Rational& v = hi(a, a);
      if (v.get_den() != 1) throw std::logic_error("non-integral weight");
      rep.weights[a][i] = static_cast<int>(v.get_num().get_si());
    }
  }
  for (std::size_t a = 0; a < rep.dim; ++a) rep.weight_decomp[rep.weights[a]].push_back(a);
}

Representation vector_rep(const RootSystem& rs, bool gl_center) {
  return make_rep(rs, gl_center ? "gl:vector" : "vector", vector_images(rs, gl_center), {});
}

Representation build_rep(const RootSystem& rs, const RepKind& kind, std::size_t dim_cap) {
  const LieImages vec = vector_images(rs, kind.gl_center);
  const std::size_t N = vec.e.front().rows();
  switch (kind.type) {
    case RepKind::Type::vector:
      check_cap(N, dim_cap);
      return make_rep(rs, kind.describe(), vec, {});
    case RepKind::Type::adjoint: {
      const std::size_t dim = 2 * rs.num_positive() + static_cast<std::size_t>(rs.rank);
      check_cap(dim, dim_cap);
      return make_rep(rs, kind.describe(), adjoint_images(rs, vec), {});
    }
    case RepKind::Type::sym: {
      if (kind.k < 1) throw std::invalid_argument("sym(k) needs k >= 1");
      check_cap(binomial(N + static_cast<std::size_t>(kind.k) - 1, static_cast<std::size_t>(kind.k)), dim_cap);
      const auto basis = monomials(N, kind.k);
      std::map<IntVec, std::size_t> index;
      for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
      return make_rep(rs, kind.describe(), map_images(vec, [&](const QMatrix& x) { return sym_action(x, basis, index); }),
                      {});
    }
    case RepKind::Type::ext: {
      if (kind.k < 1 || static_cast<std::size_t>(kind.k) > N) throw std::invalid_argument("ext(k) needs 1 <= k <= N");
      check_cap(binomial(N, static_cast<std::size_t>(kind.k)), dim_cap);
      const auto basis = subsets(N, kind.k);
      std::map<std::vector<std::size_t>, std::size_t> index;
      for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
      return make_rep(rs, kind.describe(), map_images(vec, [&](const QMatrix& x) { return ext_action(x, basis, index); }),
                      {});
    }
    case RepKind::Type::tensor_power: {
      std::size_t dim = 1;
      for (int i = 0; i < kind.k; ++i) {
        dim *= N;
        check_cap(dim, dim_cap);
      }
      LieImages acc = vec;
      for (int i = 1; i < kind.k; ++i) acc = tensor_images(acc, vec);
      return make_rep(rs, kind.describe(), std::move(acc), std::vector<std::size_t>(static_cast<std::size_t>(kind.k), N));
    }
    case RepKind::Type::irrep: {
      if (rs.series != Series::A || rs.rank != 1) throw std::invalid_argument("irrep(m) is implemented for A1 only");
      if (kind.gl_center) throw std::invalid_argument("irrep(m) does not carry the gl center");
      const std::size_t m = static_cast<std::size_t>(kind.k);
      check_cap(m + 1, dim_cap);
      // Basis v_0..v_m: e v_k = (m-k+1) v_{k-1}, f v_k = (k+1) v_{k+1}, h v_k = (m-2k) v_k.
      LieImages im;
      QMatrix e(m + 1, m + 1), f(m + 1, m + 1), h(m + 1, m + 1);
      for (std::size_t k = 0; k <= m; ++k) {
        if (k >= 1) e(k - 1, k) = static_cast<long>(m - k + 1);
        if (k + 1 <= m) f(k + 1, k) = static_cast<long>(k + 1);
        h(k, k) = static_cast<long>(m) - 2 * static_cast<long>(k);
      }
      im.e.push_back(e);
      im.f.push_back(f);
      im.h.push_back(h);
      return make_rep(rs, kind.describe(), std::move(im), {});
    }
  }
  throw std::logic_error("unhandled representation kind");
}

Representation tensor_product(const Representation& a, const Representation& b, std::size_t dim_cap) {
  if (a.root_system.name() != b.root_system.name()) throw std::invalid_argument("tensor_product: different algebras");
  check_cap(a.dim * b.dim, dim_cap);
  std::vector<std::size_t> dims = a.factor_dims;
  dims.insert(dims.end(), b.factor_dims.begin(), b.factor_dims.end());
  return make_rep(a.root_system, a.kind + "*" + b.kind, tensor_images(images_of(a), images_of(b)), dims);
}

RelationReport check_relations(const Representation& rep) {
  RelationReport rr;
  auto fail = [&](const std::string& what) {
    if (rr.ok) {
      rr.ok = false;
      rr.failure = what;
    }
  };
  const std::size_t r = rep.rank();
  const auto& a = rep.root_system.cartan_matrix;
  for (std::size_t i = 0; i < r; ++i) {
    if (!rep.H(i).is_diagonal()) fail("H_" + std::to_string(i + 1) + " not diagonal");
    for (std::size_t j = 0; j < r; ++j) {
      const std::string tag = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (!(commutator(rep.H(i), rep.E(j)) == rep.E(j) * Rational(a[i][j]))) fail("[H_i,E_j] " + tag);
      if (!(commutator(rep.H(i), rep.F(j)) == rep.F(j) * Rational(-a[i][j]))) fail("[H_i,F_j] " + tag);
      const QMatrix ef = commutator(rep.E(i), rep.F(j));
      if (i == j ? !(ef == rep.H(i)) : !ef.is_zero()) fail("[E_i,F_j] " + tag);
    }
  }
  for (std::size_t k = 0; k < rep.root_system.num_positive(); ++k)
    if (!(commutator(rep.e[k], rep.f[k]) == rep.h[k])) fail("[e_a,f_a] for root " + std::to_string(k));
  if (rep.has_center) {
    for (std::size_t k = 0; k < rep.root_system.num_positive(); ++k)
      if (!commutator(rep.center, rep.e[k]).is_zero()) fail("center does not commute");
  }
  return rr;
}

}  // namespace holonome
