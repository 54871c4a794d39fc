#include "holonome/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace holonome::simd {
namespace {

// A __m256d holds two complex numbers as [re0, im0, re1, im1].

inline __m256d cmul_bcast(__m256d re, __m256d im, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(re, v, _mm256_mul_pd(im, swapped));
}

void axpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const __m256d re = _mm256_set1_pd(alpha.real());
  const __m256d im = _mm256_set1_pd(alpha.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul_bcast(re, im, xv)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void gemm_avx2(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  std::fill(c, c + m * n, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip == cplx(0.0, 0.0)) continue;
      axpy_avx2(n, aip, b + p * n, crow);
    }
  }
}

inline double hmax(__m256d v) {
  alignas(32) double buf[4];
  _mm256_store_pd(buf, v);
  return std::max(std::max(buf[0], buf[1]), std::max(buf[2], buf[3]));
}

// Squared moduli land pairwise in both lanes of each complex slot.
inline __m256d sq_modulus(__m256d v) {
  const __m256d sq = _mm256_mul_pd(v, v);
  return _mm256_add_pd(sq, _mm256_permute_pd(sq, 0b0101));
}

double max_abs_avx2(std::size_t n, const cplx* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = _mm256_max_pd(acc, sq_modulus(_mm256_loadu_pd(xd + 2 * i)));
  double m = std::sqrt(hmax(acc));
  for (; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

double max_abs_diff_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xd + 2 * i), _mm256_loadu_pd(yd + 2 * i));
    acc = _mm256_max_pd(acc, sq_modulus(d));
  }
  double m = std::sqrt(hmax(acc));
  for (; i < n; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", gemm_avx2, axpy_avx2, max_abs_avx2, max_abs_diff_avx2};
  return table;
}

}  // namespace holonome::simd
