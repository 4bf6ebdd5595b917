#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "mantel/core_index.hpp"
#include "mantel/hypergraph.hpp"

namespace mantel {

/// An embedded copy of the generalized triangle T_k:
/// e1 = core + apex_a, e2 = core + apex_b, e3 ⊇ {apex_a, apex_b}, e3 ∩ core = ∅.
/// Identity is the unordered edge triple; apex_a < apex_b.
struct TCopy {
    EdgeId e1 = 0, e2 = 0, e3 = 0;
    Edge core;
    Vertex apex_a = 0, apex_b = 0;

    std::array<EdgeId, 3> sorted_edges() const;
};

/// The two-crossing-edge gadget: w1·xyz and w2·xyz crossing in G, with a
/// certifying edge W of B1 containing w1, w2 (both in A_1) and avoiding x, y, z.
struct HatCopy {
    Vertex w1 = 0, w2 = 0;
    Edge triple;
    EdgeId certifier = 0;  // id in the universe of the B1 edge set
};

using MotifWitness = std::variant<TCopy, HatCopy>;

/// T_k on vertices 0..2k-2 with edges {0..k-1}, {0..k-2, k}, {k-1, ..., 2k-2}.
Hypergraph generalized_triangle(int k);

/// Enumerates T_k copies by scanning every core with >= 2 completions and
/// asking the pair index for edges through the two apexes that avoid the core.
/// Each copy is reported exactly once (for k = 2 only with the core vertex
/// smallest, since a triangle admits three role assignments).
class MotifIndex {
public:
    explicit MotifIndex(const Hypergraph& h);

    const Hypergraph& host() const { return *host_; }

    /// Calls visit(const TCopy&) for every copy; stops early when visit returns false.
    template <class Visit>
    void for_each_copy(Visit&& visit) const;

    /// Copies containing edge `through` whose other two edges have alive[id]
    /// set; the state of `through` itself is ignored.
    template <class Visit>
    void for_each_copy_through(EdgeId through, const std::vector<char>& alive, Visit&& visit) const;

    /// Calls visit(EdgeId e1, EdgeId e2, EdgeId e3) per copy, without building the TCopy.
    template <class Visit>
    void for_each_triple(Visit&& visit) const;

private:
    const Hypergraph* host_;
    CoreIndex cores_;
    PairIndex pairs_;
};

std::optional<TCopy> find_T(const Hypergraph& h);
std::uint64_t count_T(const Hypergraph& h);
/// Copies whose edge triple meets B; B must be an edge set of h.
std::uint64_t t_through_edges(const Hypergraph& h, const EdgeSet& b);

/// Checks the T_k shape of three edges under any role assignment.
bool forms_T(const Edge& x, const Edge& y, const Edge& z);

/// Per anchor pair (w1 < w2), the number of triples x, y, z such that w1·xyz
/// and w2·xyz are crossing edges of G and at least one edge W of B1 with
/// w1, w2 in W avoids x, y, z. Pairs without certifying edges are absent.
std::map<std::pair<Vertex, Vertex>, std::uint64_t> count_that(const Hypergraph& g, const VertexPartition& partition,
                                                              const EdgeSet& b1);

/// The gadgets counted by count_that, each with its lowest-id certifier.
/// Calls visit(const HatCopy&); stops when it returns false.
template <class Visit>
void for_each_that(const Hypergraph& g, const VertexPartition& partition, const EdgeSet& b1, Visit&& visit);

// ---- implementation ----------------------------------------------------------

namespace detail {
void require_supported(const Hypergraph& h);
/// Certifier lists per anchor pair; validates the B1 edges (>= 2 vertices in A_1).
std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> anchor_pairs(const VertexPartition& partition,
                                                                      const EdgeSet& b1);
void require_that_shape(const Hypergraph& g, const VertexPartition& partition, const EdgeSet& b1);
}  // namespace detail

template <class Visit>
void MotifIndex::for_each_triple(Visit&& visit) const {
    const Hypergraph& h = *host_;
    const int k = h.uniformity();
    for (std::size_t i = 0; i < cores_.num_cores(); ++i) {
        const auto comp = cores_.completions(i);
        if (comp.size() < 2) continue;
        const Edge core = cores_.core(i);
        for (std::size_t x = 0; x < comp.size(); ++x) {
            const Vertex a = comp[x];
            if (k == 2 && core.front() > a) continue;
            const EdgeId e1 = *h.find(core.with(a));
            for (std::size_t y = x + 1; y < comp.size(); ++y) {
                const Vertex b = comp[y];
                EdgeId e2 = 0;
                bool have_e2 = false;
                for (EdgeId e3 : pairs_.edges_with(a, b)) {
                    if (k > 2 && !h.edge(e3).disjoint_from(core)) continue;
                    if (!have_e2) {
                        e2 = *h.find(core.with(b));
                        have_e2 = true;
                    }
                    if (!visit(e1, e2, e3)) return;
                }
            }
        }
    }
}

template <class Visit>
void MotifIndex::for_each_copy(Visit&& visit) const {
    const Hypergraph& h = *host_;
    for_each_triple([&](EdgeId e1, EdgeId e2, EdgeId e3) {
        const Edge x = h.edge(e1), y = h.edge(e2);
        TCopy c;
        c.e1 = e1;
        c.e2 = e2;
        c.e3 = e3;
        for (Vertex v : x)
            if (!y.contains(v)) c.apex_a = v;
        for (Vertex v : y)
            if (!x.contains(v)) c.apex_b = v;
        c.core = x.without(c.apex_a);
        return visit(static_cast<const TCopy&>(c));
    });
}

template <class Visit>
void MotifIndex::for_each_copy_through(EdgeId through, const std::vector<char>& alive, Visit&& visit) const {
    const Hypergraph& h = *host_;
    const int k = h.uniformity();
    const Edge e = h.edge(through);
    auto emit = [&](EdgeId e1, EdgeId e2, EdgeId e3, const Edge& core, Vertex a, Vertex b) {
        TCopy c;
        c.core = core;
        if (a < b) {
            c.e1 = e1, c.e2 = e2, c.apex_a = a, c.apex_b = b;
        } else {
            c.e1 = e2, c.e2 = e1, c.apex_a = b, c.apex_b = a;
        }
        c.e3 = e3;
        return visit(static_cast<const TCopy&>(c));
    };

    // `through` as one of the two edges sharing the core.
    for (Vertex a : e) {
        const Edge core = e.without(a);
        for (Vertex b : cores_.completions(core)) {
            if (b == a) continue;
            if (k == 2 && (core.front() > a || core.front() > b)) continue;
            const EdgeId other = *h.find(core.with(b));
            if (!alive[other]) continue;
            for (EdgeId e3 : pairs_.edges_with(a, b)) {
                if (!alive[e3] || e3 == through) continue;
                if (k > 2 && !h.edge(e3).disjoint_from(core)) continue;
                if (!emit(through, other, e3, core, a, b)) return;
            }
        }
    }
    // `through` as the edge holding both apexes.
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const Vertex a = e[i], b = e[j];
            for (EdgeId e1 : h.incident(a)) {
                if (!alive[e1] || e1 == through) continue;
                const Edge first = h.edge(e1);
                const Edge core = first.without(a);
                if (k > 2 && !core.disjoint_from(e)) continue;
                if (k == 2 && (core.front() > a || first.contains(b))) continue;
                const auto e2 = h.find(core.with(b));
                if (!e2 || !alive[*e2]) continue;
                if (!emit(e1, *e2, through, core, a, b)) return;
            }
        }
    }
}

template <class Visit>
void for_each_that(const Hypergraph& g, const VertexPartition& partition, const EdgeSet& b1, Visit&& visit) {
    detail::require_that_shape(g, partition, b1);
    const auto anchors = detail::anchor_pairs(partition, b1);
    const Hypergraph& f = b1.universe();
    for (const auto& [pair, certifiers] : anchors) {
        const auto [w1, w2] = pair;
        for (EdgeId id : g.incident(w1)) {
            const Edge e = g.edge(id);
            if (e.contains(w2) || !is_crossing(e, partition)) continue;
            const Edge triple = e.without(w1);
            if (!g.contains(triple.with(w2))) continue;
            for (EdgeId w : certifiers) {
                if (f.edge(w).disjoint_from(triple)) {
                    HatCopy hat{w1, w2, triple, w};
                    if (!visit(static_cast<const HatCopy&>(hat))) return;
                    break;
                }
            }
        }
    }
}

}  // namespace mantel
