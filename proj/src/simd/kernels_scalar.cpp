#include "holonome/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace holonome::simd {
namespace {

void gemm_scalar(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  std::fill(c, c + m * n, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip == cplx(0.0, 0.0)) continue;
      const cplx* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double max_abs_scalar(std::size_t n, const cplx* x) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

double max_abs_diff_scalar(std::size_t n, const cplx* x, const cplx* y) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", gemm_scalar, axpy_scalar, max_abs_scalar, max_abs_diff_scalar};
  return table;
}

}  // namespace holonome::simd
