#include "mantel/link_bitsets.hpp"

#include "mantel/combinatorics.hpp"
#include "mantel/simd/kernels.hpp"

namespace mantel {

BitRows::BitRows(std::size_t rows, std::size_t bits)
    : rows_(rows), bits_(bits), words_((bits + 63) / 64), data_(rows * words_, 0) {}

std::uint64_t BitRows::count(std::size_t r) const {
    return simd::kernels().popcount(data_.data() + r * words_, words_);
}

std::uint64_t BitRows::intersection(std::size_t a, std::size_t b) const {
    return simd::kernels().and_popcount(data_.data() + a * words_, data_.data() + b * words_, words_);
}

BitRows link_rows(const Hypergraph& g) {
    const int k = g.uniformity();
    BitRows rows(g.num_vertices(), binomial(g.num_vertices(), static_cast<std::uint64_t>(k - 1)));
    for (EdgeId id = 0; id < g.size(); ++id) {
        const Edge e = g.edge(id);
        for (Vertex v : e) rows.set(v, colex_rank(e.without(v)));
    }
    return rows;
}

CrossingLinkRows crossing_link_rows(const Hypergraph& g, const VertexPartition& partition, int source_class) {
    const int r = partition.num_classes();
    if (r != g.uniformity() || partition.num_vertices() != g.num_vertices())
        throw InputError("crossing links need an r = k partition of the same vertex set");
    if (source_class < 0 || source_class >= r) throw InputError("source class out of range");

    CrossingLinkRows out;
    out.source_class = source_class;
    out.members = partition.members(source_class);
    out.row_of.assign(g.num_vertices(), -1);
    for (std::size_t i = 0; i < out.members.size(); ++i) out.row_of[out.members[i]] = static_cast<std::int64_t>(i);

    // position of each vertex inside its own class
    std::vector<std::size_t> pos(g.num_vertices());
    std::vector<std::size_t> filled(static_cast<std::size_t>(r), 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) pos[v] = filled[partition.class_of(v)]++;

    std::size_t width = 1;
    for (int c = 0; c < r; ++c)
        if (c != source_class) width *= partition.class_size(c);
    out.rows = BitRows(out.members.size(), width);

    for (Vertex v : out.members) {
        for (EdgeId id : g.incident(v)) {
            const Edge e = g.edge(id);
            if (!is_crossing(e, partition)) continue;
            std::array<std::size_t, kMaxUniformity> slot{};
            for (Vertex x : e) slot[partition.class_of(x)] = pos[x];
            std::size_t index = 0;
            for (int c = 0; c < r; ++c)
                if (c != source_class) index = index * partition.class_size(c) + slot[c];
            out.rows.set(static_cast<std::size_t>(out.row_of[v]), index);
        }
    }
    return out;
}

}  // namespace mantel
