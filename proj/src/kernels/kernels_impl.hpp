#pragma once

#include "bos/kernels.hpp"

namespace bos::kernels {

#define BOS_KERNEL_DECLS                                                              \
    void mul_real(double* out, const double* a, const double* b, std::size_t n);       \
    void mul_complex_real(cplx* out, const cplx* a, const double* m, std::size_t n);   \
    void mul_complex(cplx* out, const cplx* a, const cplx* b, std::size_t n);          \
    void abs2(double* out, const cplx* a, std::size_t n);                              \
    void axpy(double* y, double s, const double* x, std::size_t n);                    \
    void axpy_complex(cplx* y, double s, const cplx* x, std::size_t n);                \
    double sum(const double* a, std::size_t n);                                        \
    double dot(const double* a, const double* b, std::size_t n);

namespace scalar {
BOS_KERNEL_DECLS
}
#if defined(__x86_64__)
namespace avx2 {
BOS_KERNEL_DECLS
}
#endif

#undef BOS_KERNEL_DECLS

}  // namespace bos::kernels
