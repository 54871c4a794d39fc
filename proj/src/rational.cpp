#include "holonome/rational.hpp"

#include "holonome/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace holonome {

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational frac(long n, long d) {
  if (d == 0) throw std::invalid_argument("frac: zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::diagonal(std::span<const Rational> entries) {
  QMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool QMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && sgn((*this)(i, j)) != 0) return false;
  return true;
}

std::size_t QMatrix::nonzeros() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) != 0; }));
}

Rational QMatrix::trace() const {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double QMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x.get_d()));
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMatrix QMatrix::block(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  QMatrix b(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j) b(i, j) = (*this)(row_idx[i], col_idx[j]);
  return b;
}

QMatrix QMatrix::column(std::size_t j) const {
  QMatrix c(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

CMatrix QMatrix::to_complex() const {
  CMatrix c(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j).get_d();
  return c;
}

QMatrix& QMatrix::operator+=(const QMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("QMatrix +: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (sgn(other.data_[k]) != 0) data_[k] += other.data_[k];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("QMatrix -: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (sgn(other.data_[k]) != 0) data_[k] -= other.data_[k];
  return *this;
}

QMatrix& QMatrix::operator*=(const Rational& scalar) {
  if (sgn(scalar) == 0) {
    for (auto& x : data_) x = 0;
    return *this;
  }
  for (auto& x : data_)
    if (sgn(x) != 0) x *= scalar;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("QMatrix *: shape mismatch");
  QMatrix c(a.rows_, b.cols_);
  // Sparse row lists of b, so each nonzero of a touches only nonzeros of b.
  std::vector<std::vector<std::size_t>> b_nz(b.rows_);
  for (std::size_t k = 0; k < b.rows_; ++k)
    for (std::size_t j = 0; j < b.cols_; ++j)
      if (sgn(b(k, j)) != 0) b_nz[k].push_back(j);
  Rational tmp;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j : b_nz[k]) {
        mpq_mul(tmp.get_mpq_t(), aik.get_mpq_t(), b(k, j).get_mpq_t());
        c(i, j) += tmp;
      }
    }
  }
  return c;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          if (sgn(b(p, q)) != 0) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

QMatrix hcat(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row mismatch");
  QMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

void RowReducer::reduce(std::vector<Rational>& row) const {
  Rational tmp;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (sgn(row[p]) == 0) continue;
    const Rational factor = row[p];
    const auto& basis_row = rows_[r];
    for (std::size_t j = p; j < cols_; ++j) {
      if (sgn(basis_row[j]) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), basis_row[j].get_mpq_t());
      row[j] -= tmp;
    }
  }
}

bool RowReducer::add_row(std::vector<Rational> row) {
  if (row.size() != cols_) throw std::invalid_argument("RowReducer: row length mismatch");
  reduce(row);
  auto it = std::find_if(row.begin(), row.end(), [](const Rational& x) { return sgn(x) != 0; });
  if (it == row.end()) return false;
  const std::size_t p = static_cast<std::size_t>(it - row.begin());
  const Rational inv = 1 / row[p];
  for (std::size_t j = p; j < cols_; ++j)
    if (sgn(row[j]) != 0) row[j] *= inv;
  // Keep the basis fully reduced: clear the new pivot column from earlier rows.
  Rational tmp;
  for (auto& other : rows_) {
    if (sgn(other[p]) == 0) continue;
    const Rational factor = other[p];
    for (std::size_t j = p; j < cols_; ++j) {
      if (sgn(row[j]) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), row[j].get_mpq_t());
      other[j] -= tmp;
    }
  }
  rows_.push_back(std::move(row));
  pivots_.push_back(p);
  return true;
}

QMatrix RowReducer::nullspace() const {
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t p : pivots_) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < cols_; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  QMatrix basis(cols_, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    const std::size_t fc = free_cols[f];
    basis(fc, f) = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (sgn(rows_[r][fc]) != 0) basis(pivots_[r], f) = -rows_[r][fc];
  }
  return basis;
}

namespace {
RowReducer reduce_rows(const QMatrix& m) {
  RowReducer red(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Rational> row(m.cols());
    bool any = false;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row[j] = m(i, j);
      any = any || sgn(row[j]) != 0;
    }
    if (any) red.add_row(std::move(row));
  }
  return red;
}
}  // namespace

std::size_t rank(const QMatrix& m) { return reduce_rows(m).rank(); }

QMatrix nullspace(const QMatrix& m) { return reduce_rows(m).nullspace(); }

std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const std::size_t n = a.cols();
  const QMatrix aug = hcat(a, b);
  std::vector<std::size_t> piv;
  std::vector<std::vector<Rational>> mat(aug.rows(), std::vector<Rational>(aug.cols()));
  for (std::size_t i = 0; i < aug.rows(); ++i)
    for (std::size_t j = 0; j < aug.cols(); ++j) mat[i][j] = aug(i, j);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < mat.size(); ++c) {
    std::size_t p = r;
    while (p < mat.size() && sgn(mat[p][c]) == 0) ++p;
    if (p == mat.size()) continue;
    std::swap(mat[p], mat[r]);
    const Rational inv = 1 / mat[r][c];
    for (auto& x : mat[r])
      if (sgn(x) != 0) x *= inv;
    for (std::size_t i = 0; i < mat.size(); ++i) {
      if (i == r || sgn(mat[i][c]) == 0) continue;
      const Rational f = mat[i][c];
      for (std::size_t j = c; j < aug.cols(); ++j)
        if (sgn(mat[r][j]) != 0) mat[i][j] -= f * mat[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < mat.size(); ++i)
    for (std::size_t j = n; j < aug.cols(); ++j)
      if (sgn(mat[i][j]) != 0) return std::nullopt;
  QMatrix x(n, b.cols());
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[k], j) = mat[k][n + j];
  return x;
}

QMatrix exp_nilpotent(const QMatrix& x) {
  if (!x.is_square()) throw std::invalid_argument("exp_nilpotent: matrix not square");
  const std::size_t n = x.rows();
  QMatrix result = QMatrix::identity(n);
  QMatrix power = QMatrix::identity(n);
  Rational inv_factorial = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * x;
    if (power.is_zero()) return result;
    inv_factorial /= static_cast<long>(k);
    result += power * inv_factorial;
  }
  // x^n != 0 for an n x n matrix means x is not nilpotent.
  throw std::invalid_argument("exp_nilpotent: matrix is not nilpotent");
}

QMatrix coordinates_in(const QMatrix& basis, const QMatrix& vectors) {
  auto x = solve(basis, vectors);
  if (!x) throw std::runtime_error("coordinates_in: vector not in the span of the basis");
  return *x;
}

}  // namespace holonome
