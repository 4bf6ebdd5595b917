#pragma once

#include <cstdint>
#include <span>

#include "mantel/types.hpp"

namespace mantel {

/// C(n, k); throws std::overflow_error past 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Floating-point C(n, k) for formula evaluation (no overflow).
double binomial_real(double n, int k);

// Colexicographic ranking of k-subsets of {0, 1, ...}: the subset
// c_0 < c_1 < ... < c_{k-1} has rank sum_i C(c_i, i + 1). This order is the
// normative enumeration of C([n], k) used by the random generators.
std::uint64_t colex_rank(std::span<const Vertex> sorted_subset);
inline std::uint64_t colex_rank(const Edge& e) {
    return colex_rank(std::span<const Vertex>(e.begin(), static_cast<std::size_t>(e.size())));
}
Edge colex_unrank(std::uint64_t rank, int k);

/// Advances a sorted k-subset to its colex successor within [n]; false when exhausted.
bool colex_next(std::span<Vertex> subset, std::size_t n);

}  // namespace mantel
