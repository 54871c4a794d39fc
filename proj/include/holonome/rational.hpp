#pragma once

// Exact rational scalars and dense rational matrices.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace holonome {

using Rational = mpq_class;

/// Parses "p", "p/q" or a plain decimal integer. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& value);
/// n/d in canonical form (the two-argument mpq_class constructor does not reduce).
Rational frac(long n, long d);

class CMatrix;

/// Dense row-major matrix of exact rationals.
///
/// Products skip zero entries, so the cost tracks the number of nonzeros of
/// the left operand; most Lie-theoretic operators built here are very sparse.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(std::span<const Rational> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_diagonal() const;
  std::size_t nonzeros() const;
  Rational trace() const;
  /// Largest absolute entry, as a double (used only for reporting).
  double max_abs() const;

  QMatrix transpose() const;
  QMatrix block(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  QMatrix column(std::size_t j) const;
  CMatrix to_complex() const;

  QMatrix& operator+=(const QMatrix& other);
  QMatrix& operator-=(const QMatrix& other);
  QMatrix& operator*=(const Rational& scalar);

  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(QMatrix a, const Rational& s) { return a *= s; }
  friend QMatrix operator*(const Rational& s, QMatrix a) { return a *= s; }
  friend QMatrix operator-(QMatrix a) { return a *= Rational(-1); }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix kron(const QMatrix& a, const QMatrix& b);
QMatrix commutator(const QMatrix& a, const QMatrix& b);
/// Horizontal concatenation [a | b].
QMatrix hcat(const QMatrix& a, const QMatrix& b);

/// Incremental exact row reduction. Rows are reduced against the pivots kept
/// so far; independent rows extend the echelon basis.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols) : cols_(cols) {}

  /// Returns true when the row was independent of the rows added before.
  bool add_row(std::vector<Rational> row);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  /// Basis of {x : row . x = 0 for every added row}, as columns.
  QMatrix nullspace() const;

 private:
  void reduce(std::vector<Rational>& row) const;

  std::size_t cols_;
  std::vector<std::vector<Rational>> rows_;  // fully reduced, pivot entry = 1
  std::vector<std::size_t> pivots_;
};

std::size_t rank(const QMatrix& m);
/// Right nullspace of m as a matrix whose columns form a basis.
QMatrix nullspace(const QMatrix& m);
/// Solves a * x = b exactly. Returns nullopt when the system is inconsistent.
/// When a has a nontrivial kernel the solution with free variables set to zero is returned.
std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b);
/// exp(x) for nilpotent x as a finite sum; throws std::invalid_argument if x is not nilpotent.
QMatrix exp_nilpotent(const QMatrix& x);
/// Coordinates of the columns of `vectors` in the basis given by the columns of `basis`.
/// Throws std::runtime_error if a column is not in the span.
QMatrix coordinates_in(const QMatrix& basis, const QMatrix& vectors);

}  // namespace holonome
