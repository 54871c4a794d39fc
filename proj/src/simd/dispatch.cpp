#include "holonome/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace holonome::simd {

#if defined(HOLONOME_HAVE_AVX2)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(HOLONOME_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const KernelTable* t = avx2_kernels()) out.push_back(t);
  return out;
}

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("HOLONOME_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
    if (const KernelTable* t = avx2_kernels()) return t;
    return &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace holonome::simd
