#include "holonome/cmatrix.hpp"

#include "holonome/simd/kernels.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace holonome {

namespace {
using EigenC = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenC to_eigen(const CMatrix& m) {
  return Eigen::Map<const EigenC>(m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
}

CMatrix from_eigen(const EigenC& e) {
  CMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}
}  // namespace

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> entries) {
  CMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const { return simd::active_kernels().max_abs(data_.size(), data_.data()); }

bool CMatrix::all_finite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

CMatrix CMatrix::transpose() const {
  CMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CMatrix CMatrix::block(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  CMatrix b(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j) b(i, j) = (*this)(row_idx[i], col_idx[j]);
  return b;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) { return axpy(1.0, other); }
CMatrix& CMatrix::operator-=(const CMatrix& other) { return axpy(-1.0, other); }

CMatrix& CMatrix::operator*=(cplx scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

CMatrix& CMatrix::axpy(cplx alpha, const CMatrix& x) {
  if (rows_ != x.rows_ || cols_ != x.cols_) throw std::invalid_argument("CMatrix: shape mismatch");
  simd::active_kernels().axpy(data_.size(), alpha, x.data_.data(), data_.data());
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("CMatrix *: shape mismatch");
  CMatrix c(a.rows_, b.cols_);
  simd::active_kernels().gemm(a.rows_, a.cols_, b.cols_, a.data(), b.data(), c.data());
  return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  return simd::active_kernels().max_abs_diff(a.size(), a.data(), b.data());
}

CMatrix inverse(const CMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: matrix not square");
  Eigen::FullPivLU<EigenC> lu(to_eigen(m));
  if (!lu.isInvertible()) throw std::runtime_error("inverse: matrix is singular");
  return from_eigen(lu.inverse());
}

CMatrix power(const CMatrix& a, unsigned k) {
  CMatrix result = CMatrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) result = result * a;
  return result;
}

std::vector<double> singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<EigenC> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

}  // namespace holonome
