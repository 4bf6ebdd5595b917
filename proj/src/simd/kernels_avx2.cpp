// Compiled with -mavx2 -mpopcnt; only reached after a CPUID check.

#include <immintrin.h>

#include <bit>

#include "mantel/simd/kernels.hpp"

namespace mantel::simd {
namespace {

// Nibble-lookup popcount (Mula, Kurz, Lemire), accumulated with SAD.
inline __m256i popcount_bytes(__m256i v) {
    const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::uint64_t horizontal_sum(__m256i acc) {
    return static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
           static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
}

std::uint64_t popcount_avx2(const std::uint64_t* words, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), _mm256_setzero_si256()));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
    return total;
}

std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const __m256i v = _mm256_and_si256(va, vb);
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), _mm256_setzero_si256()));
    }
    std::uint64_t total = horizontal_sum(acc);
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

std::size_t count_rainbow_avx2(const std::uint64_t* keys, std::size_t m, int k,
                               const std::int32_t* labels) {
    const __m128i full = _mm_set1_epi32(static_cast<int>((1u << k) - 1u));
    const __m128i one = _mm_set1_epi32(1);
    const __m256i field = _mm256_set1_epi64x(0xFFFF);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(keys + i));
        __m128i mask = _mm_setzero_si128();
        for (int j = 0; j < k; ++j) {
            const __m256i idx = _mm256_and_si256(v, field);
            const __m128i lab = _mm256_i64gather_epi32(labels, idx, 4);
            mask = _mm_or_si128(mask, _mm_sllv_epi32(one, lab));
            v = _mm256_srli_epi64(v, 16);
        }
        const int hits = _mm_movemask_ps(_mm_castsi128_ps(_mm_cmpeq_epi32(mask, full)));
        count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(hits)));
    }
    const std::uint32_t full_scalar = (1u << k) - 1u;
    for (; i < m; ++i) {
        std::uint32_t mask = 0;
        std::uint64_t key = keys[i];
        for (int j = 0; j < k; ++j) {
            mask |= 1u << labels[key & 0xFFFFu];
            key >>= 16;
        }
        count += mask == full_scalar;
    }
    return count;
}

}  // namespace

const KernelTable& avx2_kernel_table() {
    static const KernelTable table{Isa::Avx2, popcount_avx2, and_popcount_avx2, count_rainbow_avx2};
    return table;
}

}  // namespace mantel::simd
