#include "holonome/transport.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace holonome {

void ResidualReport::add(const std::string& label, double value) {
  labels.push_back(label);
  residuals.push_back(value);
  max_residual = std::max(max_residual, value);
}

ResidualReport verify_braid_relations(const std::vector<CMatrix>& gens, const std::vector<IntVec>& m) {
  ResidualReport rep;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const int mij = m.at(i).at(j);
      CMatrix lhs = CMatrix::identity(gens[i].rows()), rhs = lhs;
      for (int k = 0; k < mij; ++k) {
        lhs = lhs * gens[k % 2 == 0 ? i : j];
        rhs = rhs * gens[k % 2 == 0 ? j : i];
      }
      rep.add("braid(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ";m=" + std::to_string(mij) + ")",
              max_abs_diff(lhs, rhs));
    }
  return rep;
}

ResidualReport verify_braid_relations(const MonodromyRep& rep) { return verify_braid_relations(rep.generators, rep.coxeter_orders); }

ResidualReport hecke_check(const std::vector<CMatrix>& gens, const std::vector<cplx>& q) {
  if (q.size() != gens.size()) throw std::invalid_argument("hecke_check needs one q per generator");
  ResidualReport rep;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const CMatrix id = CMatrix::identity(gens[i].rows());
    const CMatrix prod = (gens[i] - id * q[i]) * (gens[i] + id * (1.0 / q[i]));
    rep.add("hecke(" + std::to_string(i + 1) + ")", prod.max_abs());
  }
  return rep;
}

CMatrix bmw_idempotent(const CMatrix& t, cplx q) {
  const cplx denom = q - 1.0 / q;
  if (std::abs(denom) < 1e-6) throw std::invalid_argument("q is too close to +-1 for E = 1 - (T - T^-1)/(q - q^-1)");
  return CMatrix::identity(t.rows()) - (t - inverse(t)) * (1.0 / denom);
}

BmwReport bmw_check(const std::vector<CMatrix>& gens, cplx q, cplx r) {
  BmwReport rep;
  std::vector<CMatrix> e, tinv;
  for (const auto& t : gens) {
    e.push_back(bmw_idempotent(t, q));
    tinv.push_back(inverse(t));
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const CMatrix id = CMatrix::identity(gens[i].rows());
    const CMatrix cubic = (gens[i] - id * q) * (gens[i] + id * (1.0 / q)) * (gens[i] - id * (1.0 / r));
    rep.cubic.add("cubic(" + std::to_string(i + 1) + ")", cubic.max_abs());
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i + 1 != j && j + 1 != i) continue;
      const std::string tag = std::to_string(i + 1) + "," + std::to_string(j + 1);
      rep.tangle.add("E" + tag + "+", max_abs_diff(e[i] * gens[j] * e[i], e[i] * r));
      rep.tangle.add("E" + tag + "-", max_abs_diff(e[i] * tinv[j] * e[i], e[i] * (1.0 / r)));
    }
  return rep;
}

std::vector<cplx> spectrum(const CMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("spectrum: matrix not square");
  if (!m.all_finite()) throw std::invalid_argument("spectrum: non-finite input");
  using EigenC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Index n = static_cast<Eigen::Index>(m.rows());
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(EigenC(Eigen::Map<const EigenC>(m.data(), n, n)), false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectrum: eigenvalue solver did not converge");
  std::vector<cplx> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

namespace {

// Kuhn's augmenting-path matching restricted to pairs within `limit`.
bool perfect_matching(const std::vector<std::vector<double>>& cost, double limit) {
  const std::size_t n = cost.size();
  std::vector<std::size_t> match(n, n);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (cost[u][v] > limit || seen[v]) continue;
      seen[v] = 1;
      if (match[v] == n || augment(match[v])) {
        match[v] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < n; ++u) {
    seen.assign(n, 0);
    if (!augment(u)) return false;
  }
  return true;
}

}  // namespace

double spectral_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("spectral_distance: multisets of different size");
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  std::vector<double> values;
  values.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = std::abs(a[i] - b[j]);
      values.push_back(cost[i][j]);
    }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching(cost, values[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return values[lo];
}

std::vector<Word> default_words(std::size_t generators, std::size_t max_len) {
  std::vector<Word> words;
  std::vector<Word> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (std::size_t g = 0; g < generators; ++g) {
        Word x = w;
        x.push_back(g);
        next.push_back(x);
      }
    words.insert(words.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return words;
}

CMatrix evaluate_word(const std::vector<CMatrix>& gens, const Word& w) {
  if (gens.empty()) throw std::invalid_argument("evaluate_word: no generators");
  CMatrix m = CMatrix::identity(gens.front().rows());
  for (std::size_t g : w) m = m * gens.at(g);
  return m;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (std::size_t g : w) s += (s.empty() ? "" : "*") + std::string("g") + std::to_string(g + 1);
  return s.empty() ? "1" : s;
}

KdReport kd_compare(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b, const std::vector<Word>& words,
                    double tol) {
  if (a.size() != b.size()) throw std::invalid_argument("kd_compare: different numbers of generators");
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].rows() != b[k].rows() || !a[k].is_square() || !b[k].is_square())
      throw std::invalid_argument("kd_compare: mismatched shapes");
  KdReport rep;
  for (const auto& w : words) {
    const CMatrix ma = evaluate_word(a, w), mb = evaluate_word(b, w);
    const double sd = spectral_distance(spectrum(ma), spectrum(mb));
    const double td = std::abs(ma.trace() - mb.trace());
    rep.words.push_back(word_to_string(w));
    rep.spectral_dev.push_back(sd);
    rep.trace_dev.push_back(td);
    rep.max_spectral_dev = std::max(rep.max_spectral_dev, sd);
    rep.max_trace_dev = std::max(rep.max_trace_dev, td);
  }
  rep.pass = rep.max_spectral_dev <= tol && rep.max_trace_dev <= tol;
  return rep;
}

cplx q_from_h(cplx h, double kappa, double length2) {
  const cplx hbar = cplx(0.0, 2.0 * std::numbers::pi) * h;
  return std::exp(kappa * hbar * length2 / 2.0);
}

}  // namespace holonome
