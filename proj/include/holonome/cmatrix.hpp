#pragma once

// Dense row-major complex matrices for the numeric side (transport, quantum).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace holonome {

using cplx = std::complex<double>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  cplx trace() const;
  double max_abs() const;
  bool all_finite() const;
  CMatrix transpose() const;
  CMatrix block(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx scalar);
  /// this += alpha * x
  CMatrix& axpy(cplx alpha, const CMatrix& x);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator-(CMatrix a) { return a *= cplx(-1.0); }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
/// Throws std::runtime_error when the matrix is numerically singular.
CMatrix inverse(const CMatrix& m);
/// a^k for k >= 0.
CMatrix power(const CMatrix& a, unsigned k);
/// Singular values in decreasing order.
std::vector<double> singular_values(const CMatrix& m);

}  // namespace holonome
