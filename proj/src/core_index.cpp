#include "mantel/core_index.hpp"

#include <algorithm>

namespace mantel {

CoreIndex::CoreIndex(const Hypergraph& g) : k_(g.uniformity()) {
    std::vector<std::pair<std::uint64_t, Vertex>> entries;
    entries.reserve(g.size() * static_cast<std::size_t>(k_));
    for (EdgeId id = 0; id < g.size(); ++id) {
        const Edge e = g.edge(id);
        for (Vertex v : e) entries.emplace_back(e.without(v).key(), v);
    }
    std::sort(entries.begin(), entries.end());
    offsets_.push_back(0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i == 0 || entries[i].first != entries[i - 1].first) {
            if (i != 0) offsets_.push_back(static_cast<std::uint32_t>(completions_.size()));
            core_keys_.push_back(entries[i].first);
        }
        completions_.push_back(entries[i].second);
    }
    if (!entries.empty()) offsets_.push_back(static_cast<std::uint32_t>(completions_.size()));
}

std::span<const Vertex> CoreIndex::completions(const Edge& s) const {
    if (s.size() != k_ - 1) return {};
    auto it = std::lower_bound(core_keys_.begin(), core_keys_.end(), s.key());
    if (it == core_keys_.end() || *it != s.key()) return {};
    return completions(static_cast<std::size_t>(it - core_keys_.begin()));
}

namespace {
std::uint64_t pair_key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (std::uint64_t{u} << 32) | v;
}
}  // namespace

PairIndex::PairIndex(const Hypergraph& g) {
    std::vector<std::pair<std::uint64_t, EdgeId>> entries;
    const int k = g.uniformity();
    entries.reserve(g.size() * static_cast<std::size_t>(k * (k - 1) / 2));
    for (EdgeId id = 0; id < g.size(); ++id) {
        const Edge e = g.edge(id);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) entries.emplace_back(pair_key(e[i], e[j]), id);
    }
    std::sort(entries.begin(), entries.end());
    offsets_.push_back(0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i == 0 || entries[i].first != entries[i - 1].first) {
            if (i != 0) offsets_.push_back(static_cast<std::uint32_t>(edges_.size()));
            pair_keys_.push_back(entries[i].first);
        }
        edges_.push_back(entries[i].second);
    }
    if (!entries.empty()) offsets_.push_back(static_cast<std::uint32_t>(edges_.size()));
}

std::span<const EdgeId> PairIndex::edges_with(Vertex u, Vertex v) const {
    const std::uint64_t key = pair_key(u, v);
    auto it = std::lower_bound(pair_keys_.begin(), pair_keys_.end(), key);
    if (it == pair_keys_.end() || *it != key) return {};
    const auto i = static_cast<std::size_t>(it - pair_keys_.begin());
    return {edges_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

}  // namespace mantel
