#include "mantel/motifs.hpp"

#include <algorithm>
#include <string>

namespace mantel {

std::array<EdgeId, 3> TCopy::sorted_edges() const {
    std::array<EdgeId, 3> out{e1, e2, e3};
    std::sort(out.begin(), out.end());
    return out;
}

Hypergraph generalized_triangle(int k) {
    if (k < 2 || k > kMaxUniformity)
        throw InputError("generalized triangle needs 2 <= k <= " + std::to_string(kMaxUniformity));
    std::vector<std::vector<Vertex>> edges(3);
    for (int i = 0; i < k; ++i) edges[0].push_back(static_cast<Vertex>(i));
    for (int i = 0; i < k - 1; ++i) edges[1].push_back(static_cast<Vertex>(i));
    edges[1].push_back(static_cast<Vertex>(k));
    for (int i = k - 1; i <= 2 * k - 2; ++i) edges[2].push_back(static_cast<Vertex>(i));
    return build_hypergraph(static_cast<std::size_t>(2 * k - 1), k, edges);
}

namespace detail {

void require_supported(const Hypergraph& h) {
    if (h.uniformity() < 2 || h.uniformity() > 4)
        throw InputError("motif kernels support k in {2, 3, 4}, got k = " + std::to_string(h.uniformity()));
}

void require_that_shape(const Hypergraph& g, const VertexPartition& partition, const EdgeSet& b1) {
    if (g.uniformity() != 4 || partition.num_classes() != 4)
        throw InputError("the gadget count is defined for 4-uniform hosts and 4-partitions");
    if (partition.num_vertices() != g.num_vertices() || b1.universe().num_vertices() != g.num_vertices())
        throw InputError("host, partition and B1 must share the vertex set");
}

std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> anchor_pairs(const VertexPartition& partition,
                                                                      const EdgeSet& b1) {
    std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> out;
    for (std::size_t i = 0; i < b1.size(); ++i) {
        const Edge w = b1.edge_at(i);
        std::vector<Vertex> in_first;
        for (Vertex x : w)
            if (partition.class_of(x) == 0) in_first.push_back(x);
        if (in_first.size() < 2)
            throw InputError("B1 edge " + w.to_string() + " has fewer than two vertices in A_1", i);
        for (std::size_t a = 0; a < in_first.size(); ++a)
            for (std::size_t b = a + 1; b < in_first.size(); ++b)
                out[{in_first[a], in_first[b]}].push_back(b1.ids()[i]);
    }
    return out;
}

}  // namespace detail

MotifIndex::MotifIndex(const Hypergraph& h) : host_(&h), cores_(h), pairs_(h) { detail::require_supported(h); }

std::optional<TCopy> find_T(const Hypergraph& h) {
    const MotifIndex index(h);
    std::optional<TCopy> found;
    index.for_each_copy([&](const TCopy& c) {
        found = c;
        return false;
    });
    return found;
}

std::uint64_t count_T(const Hypergraph& h) {
    const MotifIndex index(h);
    std::uint64_t count = 0;
    index.for_each_triple([&](EdgeId, EdgeId, EdgeId) {
        ++count;
        return true;
    });
    return count;
}

std::uint64_t t_through_edges(const Hypergraph& h, const EdgeSet& b) {
    if (&b.universe() != &h && !(b.universe() == h))
        throw InputError("edge set is not a subset of the host hypergraph");
    const std::vector<bool> in_b = b.mask();
    const MotifIndex index(h);
    std::uint64_t count = 0;
    index.for_each_triple([&](EdgeId e1, EdgeId e2, EdgeId e3) {
        count += in_b[e1] || in_b[e2] || in_b[e3];
        return true;
    });
    return count;
}

bool forms_T(const Edge& x, const Edge& y, const Edge& z) {
    const int k = x.size();
    if (y.size() != k || z.size() != k) return false;
    auto shaped = [k](const Edge& e1, const Edge& e2, const Edge& e3) {
        if (e1.intersection_size(e2) != k - 1) return false;
        Vertex a = 0, b = 0;
        for (Vertex v : e1)
            if (!e2.contains(v)) a = v;
        for (Vertex v : e2)
            if (!e1.contains(v)) b = v;
        if (!e3.contains(a) || !e3.contains(b)) return false;
        return e3.disjoint_from(e1.without(a));
    };
    return shaped(x, y, z) || shaped(y, z, x) || shaped(z, x, y);
}

std::map<std::pair<Vertex, Vertex>, std::uint64_t> count_that(const Hypergraph& g, const VertexPartition& partition,
                                                              const EdgeSet& b1) {
    std::map<std::pair<Vertex, Vertex>, std::uint64_t> out;
    detail::require_that_shape(g, partition, b1);
    for (const auto& [pair, certifiers] : detail::anchor_pairs(partition, b1)) out[pair] = 0;
    for_each_that(g, partition, b1, [&](const HatCopy& hat) {
        ++out[{hat.w1, hat.w2}];
        return true;
    });
    return out;
}

}  // namespace mantel
