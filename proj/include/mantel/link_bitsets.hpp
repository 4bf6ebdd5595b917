#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mantel/hypergraph.hpp"

namespace mantel {

/// Fixed-width bit rows sharing one buffer; pairwise intersections go through
/// the active SIMD kernel table.
class BitRows {
public:
    BitRows() = default;
    BitRows(std::size_t rows, std::size_t bits);

    std::size_t rows() const { return rows_; }
    std::size_t bits() const { return bits_; }
    std::size_t words_per_row() const { return words_; }

    void set(std::size_t row, std::size_t bit) { data_[row * words_ + bit / 64] |= std::uint64_t{1} << (bit % 64); }
    bool test(std::size_t row, std::size_t bit) const {
        return (data_[row * words_ + bit / 64] >> (bit % 64)) & 1u;
    }
    std::span<const std::uint64_t> row(std::size_t r) const { return {data_.data() + r * words_, words_}; }

    std::uint64_t count(std::size_t r) const;
    /// |row(a) & row(b)|
    std::uint64_t intersection(std::size_t a, std::size_t b) const;

private:
    std::size_t rows_ = 0, bits_ = 0, words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Row v holds L(v) as a bitset over colex ranks of the (k-1)-subsets of [n],
/// so intersection(u, v) = d(u, v).
BitRows link_rows(const Hypergraph& g);

/// Crossing links of one class: for v in A_c, the row holds L_Pi(v) indexed by
/// the product of the remaining classes (in class order), so intersection of
/// two rows is d_Pi(u, v). Requires r == k.
struct CrossingLinkRows {
    int source_class = 0;
    std::vector<Vertex> members;      // row i belongs to members[i]
    std::vector<std::int64_t> row_of;  // vertex -> row, -1 outside the class
    BitRows rows;
};

CrossingLinkRows crossing_link_rows(const Hypergraph& g, const VertexPartition& partition, int source_class);

}  // namespace mantel
