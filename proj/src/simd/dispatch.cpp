#include <cstdlib>
#include <string_view>

#include "subflow/log.hpp"
#include "subflow/simd/kernels.hpp"

namespace subflow::simd {

#ifdef SUBFLOW_HAVE_AVX2
namespace avx2 {
const KernelTable& table();
}
#endif

const KernelTable* avx2_kernels() {
#ifdef SUBFLOW_HAVE_AVX2
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  if (supported) return &avx2::table();
#endif
  return nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* env = std::getenv("SUBFLOW_KERNELS");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar_kernels();
    if (const KernelTable* v = avx2_kernels()) return *v;
    if (want == "avx2") log_warning("SUBFLOW_KERNELS=avx2 requested but unavailable; using scalar");
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace subflow::simd
