#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace bos::kernels {
namespace {

#define BOS_TABLE(ns)                                                                      \
    Table {                                                                                \
        ns::mul_real, ns::mul_complex_real, ns::mul_complex, ns::abs2, ns::axpy,           \
            ns::axpy_complex, ns::sum, ns::dot                                             \
    }

const Table scalar_table = BOS_TABLE(scalar);
#if defined(__x86_64__)
const Table avx2_table = BOS_TABLE(avx2);
#endif

Isa detect() {
    if (const char* env = std::getenv("BOS_ISA")) {
        const std::string_view v(env);
        if (v == "scalar") return Isa::scalar;
        if (v == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

bool isa_available(Isa isa) {
    if (isa == Isa::scalar) return true;
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Table& table(Isa isa) {
#if defined(__x86_64__)
    if (isa == Isa::avx2) return avx2_table;
#endif
    (void)isa;
    return scalar_table;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (!isa_available(isa)) throw Error(std::string("ISA not available: ") + isa_name(isa));
    current().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace bos::kernels
