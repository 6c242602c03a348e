#if defined(__x86_64__)

#include <immintrin.h>

#include "kernels_impl.hpp"

// FMA is deliberately not enabled: products and sums must round exactly like
// the scalar bodies.
#define BOS_AVX2 __attribute__((target("avx2")))

namespace bos::kernels::avx2 {

BOS_AVX2 void mul_real(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

BOS_AVX2 void mul_complex_real(cplx* out, const cplx* a, const double* m, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* x = reinterpret_cast<const double*>(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // [m0 m0 m1 m1]
        const __m128d mm = _mm_loadu_pd(m + i);
        const __m256d mv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(mm), 0x50);
        _mm256_storeu_pd(o + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(x + 2 * i), mv));
    }
    for (; i < n; ++i) out[i] = {a[i].real() * m[i], a[i].imag() * m[i]};
}

BOS_AVX2 void mul_complex(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* x = reinterpret_cast<const double*>(a);
    const auto* y = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = _mm256_loadu_pd(x + 2 * i);
        const __m256d bv = _mm256_loadu_pd(y + 2 * i);
        const __m256d br = _mm256_movedup_pd(bv);         // br br
        const __m256d bi = _mm256_permute_pd(bv, 0xF);    // bi bi
        const __m256d as = _mm256_permute_pd(av, 0x5);    // ai ar
        // even lanes: ar*br - ai*bi, odd lanes: ai*br + ar*bi
        _mm256_storeu_pd(o + 2 * i, _mm256_addsub_pd(_mm256_mul_pd(av, br), _mm256_mul_pd(as, bi)));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br - ai * bi, ai * br + ar * bi};
    }
}

BOS_AVX2 void abs2(double* out, const cplx* a, std::size_t n) {
    const auto* x = reinterpret_cast<const double*>(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d u = _mm256_loadu_pd(x + 2 * i);      // r0 i0 r1 i1
        const __m256d v = _mm256_loadu_pd(x + 2 * i + 4);  // r2 i2 r3 i3
        const __m256d hs = _mm256_hadd_pd(_mm256_mul_pd(u, u), _mm256_mul_pd(v, v));  // s0 s2 s1 s3
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(hs, 0xD8));
    }
    for (; i < n; ++i) out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

BOS_AVX2 void axpy(double* y, double s, const double* x, std::size_t n) {
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(sv, _mm256_loadu_pd(x + i))));
    for (; i < n; ++i) y[i] += s * x[i];
}

BOS_AVX2 void axpy_complex(cplx* y, double s, const cplx* x, std::size_t n) {
    axpy(reinterpret_cast<double*>(y), s, reinterpret_cast<const double*>(x), 2 * n);
}

namespace {
BOS_AVX2 inline double fold(__m256d acc) {
    alignas(32) double l[4];
    _mm256_store_pd(l, acc);
    return (l[0] + l[1]) + (l[2] + l[3]);
}
}  // namespace

BOS_AVX2 double sum(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double s = fold(acc);
    for (; i < n; ++i) s += a[i];
    return s;
}

BOS_AVX2 double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double s = fold(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace bos::kernels::avx2

#endif
