#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mantel/types.hpp"

namespace mantel {

/// An n-vertex k-uniform hypergraph with canonical (lexicographically sorted,
/// deduplicated) edges. Edge ids are positions in that order. Immutable.
class Hypergraph {
public:
    Hypergraph() = default;
    /// Empty hypergraph.
    Hypergraph(std::size_t n, int k);
    /// Takes ownership of packed keys; they are sorted and deduplicated here.
    static Hypergraph from_keys(std::size_t n, int k, std::vector<std::uint64_t> keys);
    static Hypergraph complete(std::size_t n, int k);

    std::size_t num_vertices() const { return n_; }
    int uniformity() const { return k_; }
    /// |H|
    std::size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }

    Edge edge(EdgeId id) const { return Edge::from_key(keys_[id], k_); }
    std::uint64_t key(EdgeId id) const { return keys_[id]; }
    std::span<const std::uint64_t> keys() const { return keys_; }

    std::optional<EdgeId> find(const Edge& e) const;
    std::optional<EdgeId> find_key(std::uint64_t key) const;
    bool contains(const Edge& e) const { return find(e).has_value(); }

    /// Ids of edges through v, ascending.
    std::span<const EdgeId> incident(Vertex v) const;
    /// d(v)
    std::size_t degree(Vertex v) const { return incident(v).size(); }

    std::vector<Edge> edges() const;

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.keys_ == b.keys_;
    }

private:
    void build_incidence();

    std::size_t n_ = 0;
    int k_ = 2;
    std::vector<std::uint64_t> keys_;
    std::vector<std::uint32_t> inc_offsets_;
    std::vector<EdgeId> inc_edges_;
};

/// A subset of the edges of a parent hypergraph (G[Pi], B_i, M, ...).
/// Holds a non-owning pointer: the parent must outlive the set.
class EdgeSet {
public:
    explicit EdgeSet(const Hypergraph& universe) : universe_(&universe) {}
    /// Ids are sorted and deduplicated; out-of-range ids are rejected.
    EdgeSet(const Hypergraph& universe, std::vector<EdgeId> ids);
    static EdgeSet all(const Hypergraph& universe);

    const Hypergraph& universe() const { return *universe_; }
    std::span<const EdgeId> ids() const { return ids_; }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    bool contains(EdgeId id) const;
    Edge edge_at(std::size_t i) const { return universe_->edge(ids_[i]); }

    /// Materialises the subset as a standalone hypergraph on the same vertex set.
    Hypergraph to_hypergraph() const;
    std::vector<bool> mask() const;

private:
    const Hypergraph* universe_;
    std::vector<EdgeId> ids_;
};

/// Assignment of the vertices 0..n-1 to r classes. Class order is semantic:
/// class 0 plays the role of A_1.
class VertexPartition {
public:
    VertexPartition() = default;
    VertexPartition(int r, std::vector<std::uint8_t> assignment);
    static VertexPartition from_classes(std::size_t n, const std::vector<std::vector<Vertex>>& classes);

    int num_classes() const { return r_; }
    std::size_t num_vertices() const { return assignment_.size(); }
    int class_of(Vertex v) const { return assignment_[v]; }
    std::span<const std::uint8_t> assignment() const { return assignment_; }
    std::size_t class_size(int c) const { return sizes_[static_cast<std::size_t>(c)]; }
    const std::vector<std::size_t>& class_sizes() const { return sizes_; }
    std::vector<Vertex> members(int c) const;

    /// Class c of the result is class perm[c] of this partition.
    VertexPartition relabeled(std::span<const int> perm) const;

    friend bool operator==(const VertexPartition& a, const VertexPartition& b) {
        return a.r_ == b.r_ && a.assignment_ == b.assignment_;
    }

private:
    int r_ = 0;
    std::vector<std::uint8_t> assignment_;
    std::vector<std::size_t> sizes_;
};

/// Simple graph on 0..n-1; pairs stored with u < v, sorted, deduplicated.
class PairGraph {
public:
    using Pair = std::pair<Vertex, Vertex>;

    PairGraph() = default;
    PairGraph(std::size_t n, std::vector<Pair> pairs);

    std::size_t num_vertices() const { return n_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }
    std::span<const Pair> pairs() const { return pairs_; }
    bool contains(Vertex u, Vertex v) const;
    std::span<const Vertex> neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    /// Subgraph induced on the vertices with keep[v] true.
    PairGraph induced(const std::vector<bool>& keep) const;

    friend bool operator==(const PairGraph& a, const PairGraph& b) {
        return a.n_ == b.n_ && a.pairs_ == b.pairs_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Pair> pairs_;
    std::vector<std::uint32_t> adj_offsets_;
    std::vector<Vertex> adj_;
};

// ---- hypercore operations --------------------------------------------------

/// Validates and canonicalises; throws InputError naming the offending edge index.
Hypergraph build_hypergraph(std::size_t n, int k, const std::vector<std::vector<Vertex>>& edges);

/// L(v): the (k-1)-uniform hypergraph {e \ v : v in e}.
Hypergraph link(const Hypergraph& g, Vertex v);

/// True when e meets every class; for r == k this means one vertex per class.
bool is_crossing(const Edge& e, const VertexPartition& partition);

/// G[Pi]. Requires r == k.
EdgeSet crossing_edges(const Hypergraph& g, const VertexPartition& partition);
/// |G[Pi]| through the vectorised counting kernel.
std::size_t count_crossing(const Hypergraph& g, const VertexPartition& partition);

/// L_Pi(v); its size is d_Pi(v).
Hypergraph crossing_link(const Hypergraph& g, Vertex v, const VertexPartition& partition);

/// d(u, v) = |L(u) ∩ L(v)|.
std::size_t common_degree(const Hypergraph& g, Vertex u, Vertex v);
/// d_Pi(u, v) = |L_Pi(u) ∩ L_Pi(v)|.
std::size_t common_crossing_degree(const Hypergraph& g, Vertex u, Vertex v,
                                   const VertexPartition& partition);

/// Members of N(S): the remainders r with S ∪ r in G, for |S| in {k-1, k-2}.
/// For |S| = k-1 every member is a single vertex, for |S| = k-2 a pair.
std::vector<Edge> co_neighborhood(const Hypergraph& g, const Edge& s);

/// F_S: every pair covered by some edge.
PairGraph shadow_graph(const Hypergraph& h);

/// G[A, B] = G ∩ {a ∪ b : a in A, b in B}; non-disjoint unions are skipped.
EdgeSet restrict_bracket(const Hypergraph& g, const std::vector<Edge>& a, const std::vector<Edge>& b);

/// |A_i| = (1 ± 1e-10) n / 4 for every class. At n < 4e10 this forces all classes to be exactly n/4.
bool is_balanced(const VertexPartition& partition, std::size_t n);

/// Part sizes of T_r(n): the first n mod r parts get ceil(n/r), vertices assigned in contiguous blocks.
VertexPartition turan_partition(std::size_t n, int r);
/// T_r(n): all transversals of turan_partition(n, r).
Hypergraph turan_hypergraph(std::size_t n, int r);

}  // namespace mantel
