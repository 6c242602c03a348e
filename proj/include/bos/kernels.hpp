#pragma once

#include <cstddef>

#include "bos/common.hpp"

// Hot pointwise loops behind the spectral operators. Each routine has a scalar
// and an AVX2 body; the active one is picked once at startup from CPUID and can
// be pinned with BOS_ISA=scalar|avx2 or force_isa().
namespace bos::kernels {

enum class Isa { scalar, avx2 };

struct Table {
    // out[i] = a[i] * b[i]
    void (*mul_real)(double* out, const double* a, const double* b, std::size_t n);
    // out[i] = a[i] * m[i], m real
    void (*mul_complex_real)(cplx* out, const cplx* a, const double* m, std::size_t n);
    // out[i] = a[i] * b[i]
    void (*mul_complex)(cplx* out, const cplx* a, const cplx* b, std::size_t n);
    // out[i] = |a[i]|^2
    void (*abs2)(double* out, const cplx* a, std::size_t n);
    // y[i] += s * x[i]
    void (*axpy)(double* y, double s, const double* x, std::size_t n);
    // y[i] += s * x[i], complex vectors, real s
    void (*axpy_complex)(cplx* y, double s, const cplx* x, std::size_t n);
    double (*sum)(const double* a, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
};

const Table& table(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
// Throws Error if the requested ISA is not supported by this CPU.
void force_isa(Isa isa);
const char* isa_name(Isa isa);

inline const Table& active() { return table(active_isa()); }

}  // namespace bos::kernels
