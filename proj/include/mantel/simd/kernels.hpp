#pragma once

// Data-parallel inner loops used by the degree and cut computations.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant compiled in a separate translation unit. The active table is chosen
// once at startup (CPUID, overridable through MANTEL_ISA=scalar|avx2|auto) and
// can be switched explicitly with select_isa(). The variants are required to
// return bit-identical results; tests/test_simd.cpp checks this.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mantel::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
    Isa isa;
    /// Population count of words[0..n).
    std::uint64_t (*popcount)(const std::uint64_t* words, std::size_t n);
    /// Population count of a[i] & b[i] over i < n.
    std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    /// Number of packed edge keys (k 16-bit vertex fields, most significant
    /// first) whose k vertex labels are exactly {0, ..., k-1}. Labels must lie
    /// in [0, 31].
    std::size_t (*count_rainbow)(const std::uint64_t* keys, std::size_t m, int k,
                                 const std::int32_t* labels);
};

const KernelTable& scalar_kernels();
/// nullptr when the AVX2 translation unit is absent or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

bool avx2_supported();

/// The table selected at startup or by the last select_isa() call.
const KernelTable& kernels();
/// Throws std::runtime_error when the requested ISA is unavailable.
void select_isa(Isa isa);
Isa active_isa();
std::string_view isa_name(Isa isa);

}  // namespace mantel::simd
