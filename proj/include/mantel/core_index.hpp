#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mantel/hypergraph.hpp"

namespace mantel {

/// Maps every (k-1)-subset that lies in some edge (a "core") to its completing
/// vertices, i.e. the exact co-neighborhood N(core). Built once, read-only.
class CoreIndex {
public:
    explicit CoreIndex(const Hypergraph& g);

    std::size_t num_cores() const { return core_keys_.size(); }
    Edge core(std::size_t i) const { return Edge::from_key(core_keys_[i], k_ - 1); }
    /// Completions of the i-th core, ascending.
    std::span<const Vertex> completions(std::size_t i) const {
        return {completions_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    /// N(S) for |S| = k-1; empty when S lies in no edge.
    std::span<const Vertex> completions(const Edge& s) const;

private:
    int k_;
    std::vector<std::uint64_t> core_keys_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Vertex> completions_;
};

/// For every vertex pair covered by some edge, the ids of the edges covering it.
class PairIndex {
public:
    explicit PairIndex(const Hypergraph& g);
    /// Ids of edges containing both u and v, ascending.
    std::span<const EdgeId> edges_with(Vertex u, Vertex v) const;

private:
    std::vector<std::uint64_t> pair_keys_;
    std::vector<std::uint32_t> offsets_;
    std::vector<EdgeId> edges_;
};

}  // namespace mantel
