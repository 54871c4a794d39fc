#include "holonome/connections.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace holonome {

void Arrangement::validate() const {
  if (forms.empty()) throw std::invalid_argument("arrangement has no hyperplanes");
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].size() != base_dim) throw std::invalid_argument("form " + std::to_string(i) + " has the wrong length");
    if (std::all_of(forms[i].begin(), forms[i].end(), [](const Rational& x) { return sgn(x) == 0; }))
      throw std::invalid_argument("form " + std::to_string(i) + " is zero");
  }
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      QMatrix m(2, base_dim);
      for (std::size_t k = 0; k < base_dim; ++k) {
        m(0, k) = forms[i][k];
        m(1, k) = forms[j][k];
      }
      if (rank(m) < 2)
        throw std::invalid_argument("forms " + std::to_string(i) + " and " + std::to_string(j) + " are proportional");
    }
}

cplx Arrangement::evaluate(std::size_t i, const std::vector<cplx>& x) const {
  cplx s = 0.0;
  for (std::size_t k = 0; k < base_dim; ++k)
    if (sgn(forms[i][k]) != 0) s += forms[i][k].get_d() * x[k];
  return s;
}

std::vector<CMatrix> FlatConnection::numeric_residues() const {
  if (!numeric_override.empty()) return numeric_override;
  std::vector<CMatrix> out;
  out.reserve(exact_residues.size());
  for (std::size_t i = 0; i < exact_residues.size(); ++i)
    out.push_back(exact_residues[i].to_complex() * class_coupling[weight_class[i]]);
  return out;
}

bool FlatConnection::is_zero() const {
  if (!numeric_override.empty())
    return std::all_of(numeric_override.begin(), numeric_override.end(), [](const CMatrix& m) { return m.max_abs() == 0.0; });
  for (std::size_t i = 0; i < exact_residues.size(); ++i)
    if (class_coupling[weight_class[i]] != cplx(0.0) && !exact_residues[i].is_zero()) return false;
  return true;
}

void FlatConnection::validate() const {
  arrangement.validate();
  const std::size_t n = arrangement.forms.size();
  if (numeric_override.empty()) {
    if (exact_residues.size() != n) throw std::invalid_argument("number of residues differs from number of forms");
    if (weight_class.size() != n) throw std::invalid_argument("weight classes missing");
    for (std::size_t i = 0; i < n; ++i) {
      if (exact_residues[i].rows() != fiber_dim || exact_residues[i].cols() != fiber_dim)
        throw std::invalid_argument("residue " + std::to_string(i) + " has the wrong shape");
      if (weight_class[i] >= class_coupling.size()) throw std::invalid_argument("weight class out of range");
    }
  } else {
    if (numeric_override.size() != n) throw std::invalid_argument("number of residues differs from number of forms");
    for (const auto& r : numeric_override)
      if (r.rows() != fiber_dim || r.cols() != fiber_dim) throw std::invalid_argument("residue has the wrong shape");
  }
}

std::vector<std::vector<std::size_t>> coplanar_families(const Arrangement& arr) {
  const std::size_t n = arr.forms.size();
  std::set<std::vector<std::size_t>> families;
  std::vector<std::vector<bool>> covered(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (covered[a][b]) continue;
      std::vector<std::size_t> family{a, b};
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        QMatrix m(3, arr.base_dim);
        for (std::size_t k = 0; k < arr.base_dim; ++k) {
          m(0, k) = arr.forms[a][k];
          m(1, k) = arr.forms[b][k];
          m(2, k) = arr.forms[c][k];
        }
        if (rank(m) == 2) family.push_back(c);
      }
      std::sort(family.begin(), family.end());
      for (std::size_t x : family)
        for (std::size_t y : family) covered[x][y] = true;
      families.insert(family);
    }
  return {families.begin(), families.end()};
}

FlatnessReport kohno_flatness_check(const FlatConnection& conn, bool exact, double tol) {
  conn.validate();
  if (exact && !conn.numeric_override.empty()) throw std::invalid_argument("exact flatness check needs exact residues");
  FlatnessReport rep;
  rep.exact = exact;
  const auto families = coplanar_families(conn.arrangement);
  rep.families = families.size();
  std::vector<CMatrix> numeric;
  if (!exact) numeric = conn.numeric_residues();
  for (const auto& family : families) {
    if (exact) {
      std::set<std::size_t> classes;
      for (std::size_t j : family) classes.insert(conn.weight_class[j]);
      for (std::size_t c : classes) {
        QMatrix sum(conn.fiber_dim, conn.fiber_dim);
        for (std::size_t j : family)
          if (conn.weight_class[j] == c) sum += conn.exact_residues[j];
        for (std::size_t j : family) {
          const QMatrix comm = commutator(conn.exact_residues[j], sum);
          ++rep.commutators_checked;
          if (!comm.is_zero()) {
            rep.max_norm = std::max(rep.max_norm, comm.max_abs());
            if (rep.pass) {
              rep.pass = false;
              rep.offending_family = family;
              rep.offending_index = j;
              rep.detail = "nonzero commutator for residue " + std::to_string(j);
            }
          }
        }
      }
    } else {
      CMatrix sum(conn.fiber_dim, conn.fiber_dim);
      for (std::size_t j : family) sum += numeric[j];
      for (std::size_t j : family) {
        const double norm = commutator(numeric[j], sum).max_abs();
        ++rep.commutators_checked;
        rep.max_norm = std::max(rep.max_norm, norm);
        if (norm > tol && rep.pass) {
          rep.pass = false;
          rep.offending_family = family;
          rep.offending_index = j;
          rep.detail = "commutator norm " + std::to_string(norm) + " for residue " + std::to_string(j);
        }
      }
    }
  }
  return rep;
}

namespace {

std::vector<Rational> to_rational_form(const IntVec& v) { return {v.begin(), v.end()}; }

void finish(FlatConnection& conn, bool verify) {
  conn.validate();
  if (verify) conn.verified_flat = kohno_flatness_check(conn, true).pass;
}

}  // namespace

FlatConnection build_kz(const Representation& V, std::size_t n, cplx h, bool verify) {
  if (n < 2) throw std::invalid_argument("build_kz needs n >= 2");
  FlatConnection conn;
  conn.label = "kz:" + V.root_system.name() + ":" + V.kind + ":n=" + std::to_string(n);
  conn.arrangement.base_dim = n;
  std::vector<const Representation*> factors(n, &V);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Rational> form(n, 0);
      form[i] = 1;
      form[j] = -1;
      conn.arrangement.forms.push_back(form);
      conn.exact_residues.push_back(omega_on_factors(factors, i, j));
      conn.weight_class.push_back(0);
    }
  conn.class_coupling = {h};
  conn.fiber_dim = conn.exact_residues.front().rows();
  finish(conn, verify);
  return conn;
}

FlatConnection build_casimir(const Representation& V, cplx h, bool verify) {
  const RootSystem& rs = V.root_system;
  FlatConnection conn;
  conn.label = "casimir:" + rs.name() + ":" + V.kind;
  conn.arrangement.base_dim = rs.eps_dim;
  for (std::size_t k = 0; k < rs.num_positive(); ++k) {
    conn.arrangement.forms.push_back(to_rational_form(rs.positive_roots[k]));
    conn.exact_residues.push_back(casimir_op(V, k));
    conn.weight_class.push_back(0);
  }
  conn.class_coupling = {h};
  conn.fiber_dim = V.dim;
  finish(conn, verify);
  return conn;
}

FlatConnection build_ckz(const RootSystem& rs, const std::vector<QMatrix>& reflections, const std::vector<cplx>& k,
                         bool verify) {
  if (reflections.size() != rs.num_positive() || k.size() != rs.num_positive())
    throw std::invalid_argument("build_ckz needs one reflection and one weight per positive root");
  const auto orbits = rs.root_orbits();
  FlatConnection conn;
  conn.label = "ckz:" + rs.name();
  conn.arrangement.base_dim = rs.eps_dim;
  conn.weight_class.assign(rs.num_positive(), 0);
  for (std::size_t c = 0; c < orbits.size(); ++c) {
    const cplx kc = k[orbits[c].front()];
    for (std::size_t root : orbits[c]) {
      if (k[root] != kc) throw std::invalid_argument("weights k_alpha are not constant on W-orbits");
      conn.weight_class[root] = c;
    }
    conn.class_coupling.push_back(kc);
  }
  for (std::size_t r = 0; r < rs.num_positive(); ++r) {
    conn.arrangement.forms.push_back(to_rational_form(rs.positive_roots[r]));
    conn.exact_residues.push_back(reflections[r]);
  }
  conn.fiber_dim = reflections.front().rows();
  finish(conn, verify);
  return conn;
}

std::vector<QMatrix> reflection_rep(const RootSystem& rs) {
  std::vector<QMatrix> out;
  for (std::size_t k = 0; k < rs.num_positive(); ++k) out.push_back(rs.reflection_matrix(k));
  return out;
}

std::vector<QMatrix> factor_transpositions(const RootSystem& rs, const std::vector<std::size_t>& factor_dims) {
  if (rs.series != Series::A || factor_dims.size() != rs.eps_dim)
    throw std::invalid_argument("factor transpositions need A_{n-1} acting on n tensor factors");
  std::vector<QMatrix> out;
  for (const auto& root : rs.positive_roots) {
    std::size_t i = 0, j = 0;
    for (std::size_t k = 0; k < root.size(); ++k) {
      if (root[k] == 1) i = k;
      if (root[k] == -1) j = k;
    }
    out.push_back(transposition_op(factor_dims, i, j));
  }
  return out;
}

FlatConnection restrict_connection(const FlatConnection& conn, const std::vector<std::size_t>& indices) {
  FlatConnection out = conn;
  out.fiber_dim = indices.size();
  std::vector<bool> inside(conn.fiber_dim, false);
  for (std::size_t i : indices) inside.at(i) = true;
  auto check_invariant = [&](auto entry_nonzero) {
    for (std::size_t r = 0; r < conn.size(); ++r)
      for (std::size_t a = 0; a < conn.fiber_dim; ++a)
        for (std::size_t b : indices)
          if (!inside[a] && entry_nonzero(r, a, b)) throw std::invalid_argument("subspace is not invariant under the residues");
  };
  if (conn.numeric_override.empty()) {
    check_invariant([&](std::size_t r, std::size_t a, std::size_t b) { return sgn(conn.exact_residues[r](a, b)) != 0; });
    for (auto& r : out.exact_residues) r = r.block(indices, indices);
  } else {
    check_invariant([&](std::size_t r, std::size_t a, std::size_t b) { return conn.numeric_override[r](a, b) != cplx(0.0); });
    for (auto& r : out.numeric_override) r = r.block(indices, indices);
  }
  out.label += ":block";
  return out;
}

FlatConnection perturb_residue(const FlatConnection& conn, std::size_t i, const QMatrix& delta) {
  FlatConnection out = conn;
  out.exact_residues.at(i) += delta;
  out.verified_flat = false;
  out.label += ":perturbed";
  return out;
}

QMatrix v0_subspace(const Representation& V) {
  const auto zero = V.zero_weight_space();
  if (zero.empty()) return QMatrix(V.dim, 0);
  // Stack e_alpha^2 restricted to the zero weight columns; V[[0]] is its kernel there.
  std::vector<QMatrix> squares;
  for (const auto& e : V.e) squares.push_back(e * e);
  RowReducer red(zero.size());
  for (const auto& sq : squares)
    for (std::size_t a = 0; a < V.dim; ++a) {
      std::vector<Rational> row(zero.size());
      bool any = false;
      for (std::size_t c = 0; c < zero.size(); ++c) {
        row[c] = sq(a, zero[c]);
        any = any || sgn(row[c]) != 0;
      }
      if (any) red.add_row(std::move(row));
    }
  const QMatrix coords = red.nullspace();
  QMatrix basis(V.dim, coords.cols());
  for (std::size_t c = 0; c < zero.size(); ++c)
    for (std::size_t k = 0; k < coords.cols(); ++k) basis(zero[c], k) = coords(c, k);
  return basis;
}

V0Report check_v0_identity(const Representation& V) {
  V0Report rep;
  rep.zero_weight_dim = V.zero_weight_space().size();
  const QMatrix b = v0_subspace(V);
  rep.v0_dim = b.cols();
  if (rep.v0_dim == 0) {
    rep.pass = false;
    rep.failure = "V[[0]] is zero";
    return rep;
  }
  const RootSystem& rs = V.root_system;
  for (std::size_t k = 0; k < rs.num_positive() && rep.pass; ++k) {
    const QMatrix lhs = casimir_op(V, k) * b;
    const QMatrix s = tits_lift_root(V, k);
    const QMatrix rhs = (b - s * b) * rs.length2(k);
    if (!(lhs == rhs)) {
      rep.pass = false;
      rep.failure = "C_alpha != <alpha,alpha>(1 - s_alpha) for root " + std::to_string(k);
    }
  }
  const TitsLift lift = tits_lift(V);
  for (std::size_t i = 0; i < lift.matrices.size(); ++i) {
    if (!solve(b, lift.matrices[i] * b)) {
      rep.w_invariant = false;
      rep.pass = false;
      if (rep.failure.empty()) rep.failure = "V[[0]] not invariant under s~_" + std::to_string(i + 1);
    }
  }
  return rep;
}

std::size_t commutant_dim(const FlatConnection& conn) {
  if (!conn.numeric_override.empty()) throw std::invalid_argument("commutant_dim needs exact residues");
  const std::size_t d = conn.fiber_dim;
  RowReducer red(d * d);
  // Unknown X with entries x_{ab} at position a*d + b; equation (X R - R X)_{ab} = 0.
  for (const auto& r : conn.exact_residues) {
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        std::vector<Rational> row(d * d);
        bool any = false;
        for (std::size_t c = 0; c < d; ++c) {
          if (sgn(r(c, b)) != 0) {
            row[a * d + c] += r(c, b);
            any = true;
          }
          if (sgn(r(a, c)) != 0) {
            row[c * d + b] -= r(a, c);
            any = true;
          }
        }
        if (any) red.add_row(std::move(row));
      }
  }
  return d * d - red.rank();
}

ScalarComparison compare_mod_scalars(const std::vector<QMatrix>& a, const std::vector<QMatrix>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compare_mod_scalars: list sizes differ");
  ScalarComparison cmp;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const QMatrix diff = a[i] - b[i];
    if (!diff.is_square()) throw std::invalid_argument("compare_mod_scalars: non-square matrices");
    const Rational c = diff.rows() == 0 ? Rational(0) : Rational(diff.trace() / static_cast<long>(diff.rows()));
    cmp.scalars.push_back(c);
    if (!(diff - QMatrix::identity(diff.rows()) * c).is_zero() && cmp.equal_mod_scalars) {
      cmp.equal_mod_scalars = false;
      cmp.failure = "difference " + std::to_string(i) + " is not scalar";
    }
  }
  return cmp;
}

}  // namespace holonome
