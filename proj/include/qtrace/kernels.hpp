#pragma once

#include <complex>
#include <cstddef>

namespace qtrace::kernels {

using cd = std::complex<double>;

// dst[j] += w * tw[j] * src[j] for j < n.
using TwistedAxpy = void (*)(cd* dst, const cd* src, const cd* tw, cd w, std::size_t n);

void twisted_axpy_scalar(cd* dst, const cd* src, const cd* tw, cd w, std::size_t n);
void twisted_axpy_avx2(cd* dst, const cd* src, const cd* tw, cd w, std::size_t n);

bool avx2_supported();
// AVX2 when the CPU has it, unless QTRACE_KERNEL=scalar.
TwistedAxpy select_twisted_axpy();
const char* selected_kernel_name();

}  // namespace qtrace::kernels
