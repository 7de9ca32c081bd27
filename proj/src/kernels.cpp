#include "qtrace/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qtrace::kernels {

void twisted_axpy_scalar(cd* dst, const cd* src, const cd* tw, cd w, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) dst[j] += w * (tw[j] * src[j]);
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {
bool use_avx2() {
  const char* env = std::getenv("QTRACE_KERNEL");
  if (env && std::strcmp(env, "scalar") == 0) return false;
  return avx2_supported();
}
}  // namespace

TwistedAxpy select_twisted_axpy() { return use_avx2() ? twisted_axpy_avx2 : twisted_axpy_scalar; }

const char* selected_kernel_name() { return use_avx2() ? "avx2" : "scalar"; }

}  // namespace qtrace::kernels
