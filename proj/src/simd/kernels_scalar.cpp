#include <bit>

#include "mantel/simd/kernels.hpp"

namespace mantel::simd {
namespace {

std::uint64_t popcount_scalar(const std::uint64_t* words, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(words[i]));
    return total;
}

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

std::size_t count_rainbow_scalar(const std::uint64_t* keys, std::size_t m, int k,
                                 const std::int32_t* labels) {
    const std::uint32_t full = (1u << k) - 1u;
    std::size_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t mask = 0;
        std::uint64_t key = keys[i];
        for (int j = 0; j < k; ++j) {
            mask |= 1u << labels[key & 0xFFFFu];
            key >>= 16;
        }
        count += mask == full;
    }
    return count;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{Isa::Scalar, popcount_scalar, and_popcount_scalar,
                                   count_rainbow_scalar};
    return table;
}

}  // namespace mantel::simd
