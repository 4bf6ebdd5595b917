#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "mantel/simd/kernels.hpp"

namespace mantel::simd {

#ifdef MANTEL_HAVE_AVX2_TU
const KernelTable& avx2_kernel_table();
#endif

bool avx2_supported() {
#if defined(MANTEL_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
    return supported;
#else
    return false;
#endif
}

const KernelTable* avx2_kernels() {
#ifdef MANTEL_HAVE_AVX2_TU
    if (avx2_supported()) return &avx2_kernel_table();
#endif
    return nullptr;
}

namespace {

const KernelTable* initial_table() {
    const char* env = std::getenv("MANTEL_ISA");
    const std::string choice = env ? env : "auto";
    if (choice == "scalar") return &scalar_kernels();
    if (const KernelTable* t = avx2_kernels(); t && choice != "scalar") return t;
    return &scalar_kernels();
}

std::atomic<const KernelTable*>& active() {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

void select_isa(Isa isa) {
    if (isa == Isa::Scalar) {
        active().store(&scalar_kernels(), std::memory_order_release);
        return;
    }
    const KernelTable* t = avx2_kernels();
    if (!t) throw std::runtime_error("AVX2 kernels are not available on this machine");
    active().store(t, std::memory_order_release);
}

Isa active_isa() { return kernels().isa; }

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace mantel::simd
