#include <immintrin.h>

#include "qtrace/kernels.hpp"

namespace qtrace::kernels {

namespace {

// Two complex products per register: (xr*yr - xi*yi, xi*yr + xr*yi).
inline __m256d cmul(__m256d x, __m256d y) {
  __m256d yr = _mm256_movedup_pd(y);
  __m256d yi = _mm256_permute_pd(y, 0xF);
  __m256d xs = _mm256_permute_pd(x, 0x5);
  return _mm256_fmaddsub_pd(x, yr, _mm256_mul_pd(xs, yi));
}

}  // namespace

void twisted_axpy_avx2(cd* dst, const cd* src, const cd* tw, cd w, std::size_t n) {
  auto* d = reinterpret_cast<double*>(dst);
  const auto* s = reinterpret_cast<const double*>(src);
  const auto* t = reinterpret_cast<const double*>(tw);
  __m256d wv = _mm256_setr_pd(w.real(), w.imag(), w.real(), w.imag());
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    __m256d prod = cmul(_mm256_loadu_pd(t + 2 * j), _mm256_loadu_pd(s + 2 * j));
    __m256d acc = _mm256_add_pd(_mm256_loadu_pd(d + 2 * j), cmul(wv, prod));
    _mm256_storeu_pd(d + 2 * j, acc);
  }
  for (; j < n; ++j) dst[j] += w * (tw[j] * src[j]);
}

}  // namespace qtrace::kernels
