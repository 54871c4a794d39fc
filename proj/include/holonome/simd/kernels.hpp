#pragma once

// Complex double kernels used by the numeric transport core.
//
// Every kernel has a scalar reference implementation; vectorized variants
// are registered when compiled in and selected at runtime.

#include <complex>
#include <cstddef>
#include <vector>

namespace holonome::simd {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;
  /// c (m x n) = a (m x k) * b (k x n), all row-major, c overwritten.
  void (*gemm)(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c);
  /// y += alpha * x
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// max_i |x_i|
  double (*max_abs)(std::size_t n, const cplx* x);
  /// max_i |x_i - y_i|
  double (*max_abs_diff)(std::size_t n, const cplx* x, const cplx* y);
};

const KernelTable& scalar_kernels();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// Kernels in use. Picks the widest supported variant unless HOLONOME_SIMD
/// is set to "scalar" or "avx2".
const KernelTable& active_kernels();
std::vector<const KernelTable*> available_kernels();

}  // namespace holonome::simd
