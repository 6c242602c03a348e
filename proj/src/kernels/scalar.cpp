#include "kernels_impl.hpp"

namespace bos::kernels::scalar {

void mul_real(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_complex_real(cplx* out, const cplx* a, const double* m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = {a[i].real() * m[i], a[i].imag() * m[i]};
}

// Written out so the compiler does not route through the NaN-recovering libgcc helper.
void mul_complex(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br - ai * bi, ai * br + ar * bi};
    }
}

void abs2(double* out, const cplx* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

void axpy(double* y, double s, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += s * x[i];
}

void axpy_complex(cplx* y, double s, const cplx* x, std::size_t n) {
    axpy(reinterpret_cast<double*>(y), s, reinterpret_cast<const double*>(x), 2 * n);
}

// Four interleaved partial sums, combined as (l0 + l1) + (l2 + l3): the same
// association the vector body uses, so both paths round identically.
double sum(const double* a, std::size_t n) {
    double l[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (int j = 0; j < 4; ++j) l[j] += a[i + j];
    double s = (l[0] + l[1]) + (l[2] + l[3]);
    for (; i < n; ++i) s += a[i];
    return s;
}

double dot(const double* a, const double* b, std::size_t n) {
    double l[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (int j = 0; j < 4; ++j) l[j] += a[i + j] * b[i + j];
    double s = (l[0] + l[1]) + (l[2] + l[3]);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace bos::kernels::scalar
