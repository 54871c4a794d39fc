#include "holonome/liecore.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace holonome {

namespace {

long std_dot(const IntVec& a, const IntVec& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long>(a[i]) * b[i];
  return s;
}

IntVec unit(std::size_t d, std::size_t i, int c = 1) {
  IntVec v(d, 0);
  v[i] = c;
  return v;
}

IntVec combo(std::size_t d, std::size_t i, int ci, std::size_t j, int cj) {
  IntVec v(d, 0);
  v[i] += ci;
  v[j] += cj;
  return v;
}

// Integer coordinates of v in the basis `cols` (given as rows), exact.
IntVec integer_coords(const std::vector<IntVec>& basis, const IntVec& v) {
  const std::size_t d = v.size();
  QMatrix b(d, basis.size());
  QMatrix rhs(d, 1);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) b(i, j) = basis[j][i];
  for (std::size_t i = 0; i < d; ++i) rhs(i, 0) = v[i];
  const QMatrix x = coordinates_in(b, rhs);
  IntVec out(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (x(j, 0).get_den() != 1) throw std::logic_error("root coordinates are not integral");
    out[j] = static_cast<int>(x(j, 0).get_num().get_si());
  }
  return out;
}

}  // namespace

std::string to_string(Series s) {
  switch (s) {
    case Series::A: return "A";
    case Series::B: return "B";
    case Series::C: return "C";
    case Series::D: return "D";
  }
  return "?";
}

std::string RootSystem::name() const { return to_string(series) + std::to_string(rank); }

Rational RootSystem::inner(const IntVec& a, const IntVec& b) const { return eps_scale * Rational(std_dot(a, b)); }

std::size_t RootSystem::highest_root() const {
  std::size_t best = 0;
  int best_height = -1;
  for (std::size_t k = 0; k < positive_roots.size(); ++k) {
    const int height = std::accumulate(simple_coords[k].begin(), simple_coords[k].end(), 0);
    if (height > best_height) {
      best_height = height;
      best = k;
    }
  }
  return best;
}

IntVec RootSystem::dynkin_labels(const IntVec& mu) const {
  IntVec out(static_cast<std::size_t>(rank));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const IntVec& a = positive_roots[simple[i]];
    const long num = 2 * std_dot(mu, a);
    const long den = std_dot(a, a);
    if (num % den != 0) throw std::invalid_argument("weight is not integral");
    out[i] = static_cast<int>(num / den);
  }
  return out;
}

IntVec RootSystem::reflect_weight(const IntVec& labels, std::size_t i) const {
  IntVec out = labels;
  for (std::size_t j = 0; j < labels.size(); ++j) out[j] = labels[j] - labels[i] * cartan_matrix[j][i];
  return out;
}

IntVec RootSystem::reflect_eps(const IntVec& v, std::size_t root) const {
  const IntVec& a = positive_roots[root];
  const long num = 2 * std_dot(v, a);
  const long den = std_dot(a, a);
  if (num % den != 0) throw std::invalid_argument("reflect_eps: non-integral pairing");
  const long c = num / den;
  IntVec out = v;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] -= static_cast<int>(c * a[i]);
  return out;
}

std::size_t RootSystem::find_root(const IntVec& v) const {
  IntVec neg(v.size());
  std::transform(v.begin(), v.end(), neg.begin(), [](int x) { return -x; });
  for (std::size_t k = 0; k < positive_roots.size(); ++k)
    if (positive_roots[k] == v || positive_roots[k] == neg) return k;
  return npos;
}

std::vector<std::vector<std::size_t>> RootSystem::root_orbits() const {
  const std::size_t n = positive_roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t s : simple) {
      const std::size_t img = find_root(reflect_eps(positive_roots[k], s));
      parent[find(k)] = find(img);
    }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < n; ++k) groups[find(k)].push_back(k);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  std::sort(out.begin(), out.end());
  return out;
}

QMatrix RootSystem::reflection_matrix(std::size_t root) const {
  // s(alpha_j) = alpha_j - <alpha_j, root^vee> root, columns in simple-root coordinates.
  const std::size_t r = static_cast<std::size_t>(rank);
  QMatrix m = QMatrix::identity(r);
  const IntVec& a = positive_roots[root];
  for (std::size_t j = 0; j < r; ++j) {
    const IntVec& aj = positive_roots[simple[j]];
    const Rational pairing = frac(2 * std_dot(aj, a), std_dot(a, a));
    for (std::size_t i = 0; i < r; ++i) m(i, j) -= pairing * simple_coords[root][i];
  }
  return m;
}

RootSystem build_root_system(Series series, int rank, Normalization norm) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  if (series == Series::D && rank < 3) throw std::invalid_argument("D_r requires rank >= 3");
  if (rank > 12) throw std::invalid_argument("rank above 12 is not supported");
  RootSystem rs;
  rs.series = series;
  rs.rank = rank;
  rs.normalization = norm;
  const std::size_t r = static_cast<std::size_t>(rank);
  const std::size_t d = series == Series::A ? r + 1 : r;
  rs.eps_dim = d;

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) rs.positive_roots.push_back(combo(d, i, 1, j, -1));
  if (series != Series::A) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) rs.positive_roots.push_back(combo(d, i, 1, j, 1));
  }
  if (series == Series::B)
    for (std::size_t i = 0; i < d; ++i) rs.positive_roots.push_back(unit(d, i, 1));
  if (series == Series::C)
    for (std::size_t i = 0; i < d; ++i) rs.positive_roots.push_back(unit(d, i, 2));

  std::vector<IntVec> simple_roots;
  for (std::size_t i = 0; i + 1 < d; ++i) simple_roots.push_back(combo(d, i, 1, i + 1, -1));
  if (series == Series::B) simple_roots.push_back(unit(d, r - 1, 1));
  if (series == Series::C) simple_roots.push_back(unit(d, r - 1, 2));
  if (series == Series::D) simple_roots.push_back(combo(d, r - 2, 1, r - 1, 1));
  for (const auto& s : simple_roots) rs.simple.push_back(rs.find_root(s));

  // Coroots 2a/(a,a) are scaled so that they stay integral in eps coordinates: long and
  // short roots differ by a factor 2 in squared length at most.
  std::vector<IntVec> simple_coroots;
  auto coroot_eps = [](const IntVec& a) {
    const long n2 = std_dot(a, a);
    IntVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = static_cast<int>(2 * a[i] * 2 / n2);  // 2 * (2a/(a,a))
    return c;
  };
  for (const auto& s : simple_roots) simple_coroots.push_back(coroot_eps(s));
  for (const auto& a : rs.positive_roots) {
    rs.simple_coords.push_back(integer_coords(simple_roots, a));
    rs.coroots.push_back(integer_coords(simple_coroots, coroot_eps(a)));
  }

  rs.cartan_matrix.assign(r, IntVec(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const long num = 2 * std_dot(simple_roots[j], simple_roots[i]);
      rs.cartan_matrix[i][j] = static_cast<int>(num / std_dot(simple_roots[i], simple_roots[i]));
    }
  rs.coxeter_orders.assign(r, IntVec(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) {
        rs.coxeter_orders[i][j] = 1;
        continue;
      }
      switch (rs.cartan_matrix[i][j] * rs.cartan_matrix[j][i]) {
        case 0: rs.coxeter_orders[i][j] = 2; break;
        case 1: rs.coxeter_orders[i][j] = 3; break;
        case 2: rs.coxeter_orders[i][j] = 4; break;
        case 3: rs.coxeter_orders[i][j] = 6; break;
        default: throw std::logic_error("unexpected Cartan product");
      }
    }

  switch (series) {
    case Series::A: rs.trace_scale = 1; break;
    case Series::B:
      rs.trace_scale = norm == Normalization::trace ? Rational(1, 2) : (rank == 1 ? Rational(1, 4) : Rational(1, 2));
      break;
    case Series::C: rs.trace_scale = norm == Normalization::trace ? Rational(1, 2) : Rational(1); break;
    case Series::D: rs.trace_scale = Rational(1, 2); break;
  }
  rs.eps_scale = series == Series::A ? Rational(1 / rs.trace_scale) : Rational(1 / (2 * rs.trace_scale));
  return rs;
}

RootSystem parse_root_system(const std::string& name, Normalization norm) {
  if (name.size() < 2) throw std::invalid_argument("bad algebra name '" + name + "'");
  Series s;
  switch (name[0]) {
    case 'A': case 'a': s = Series::A; break;
    case 'B': case 'b': s = Series::B; break;
    case 'C': case 'c': s = Series::C; break;
    case 'D': case 'd': s = Series::D; break;
    default: throw std::invalid_argument("bad algebra name '" + name + "'");
  }
  int rank = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') throw std::invalid_argument("bad algebra name '" + name + "'");
    rank = rank * 10 + (name[i] - '0');
    if (rank > 1000) throw std::invalid_argument("bad algebra name '" + name + "'");
  }
  return build_root_system(s, rank, norm);
}

Normalization parse_normalization(const std::string& name) {
  if (name == "basic") return Normalization::basic;
  if (name == "trace") return Normalization::trace;
  throw std::invalid_argument("unknown normalization '" + name + "'");
}

}  // namespace holonome
