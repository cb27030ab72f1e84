#include <cstdlib>
#include <cstring>

#include "zlab/simd.hpp"

namespace zlab::simd {

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Kernels& active() {
  static const Kernels& chosen = []() -> const Kernels& {
    const char* env = std::getenv("ZLAB_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_kernels();
    if (cpu_has_avx2() && avx2_kernels() != nullptr) return *avx2_kernels();
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace zlab::simd
