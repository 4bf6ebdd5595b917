#include "mantel/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mantel/combinatorics.hpp"
#include "mantel/simd/kernels.hpp"

namespace mantel {
namespace {

void check_shape(std::size_t n, int k) {
    if (k < 1 || k > kMaxUniformity)
        throw InputError("uniformity " + std::to_string(k) + " outside [1, " +
                         std::to_string(kMaxUniformity) + "]");
    if (n > kMaxVertices) throw InputError("at most 65536 vertices are supported");
}

void require_crossing_shape(const Hypergraph& g, const VertexPartition& partition) {
    if (partition.num_vertices() != g.num_vertices())
        throw InputError("partition covers " + std::to_string(partition.num_vertices()) +
                         " vertices, hypergraph has " + std::to_string(g.num_vertices()));
    if (partition.num_classes() != g.uniformity())
        throw InputError("crossing edges are defined only for r == k (r = " +
                         std::to_string(partition.num_classes()) +
                         ", k = " + std::to_string(g.uniformity()) + ")");
}

void require_vertex(const Hypergraph& g, Vertex v) {
    if (v >= g.num_vertices())
        throw InputError("vertex " + std::to_string(v) + " out of range for n = " +
                         std::to_string(g.num_vertices()));
}

}  // namespace

// ---- Hypergraph -----------------------------------------------------------

Hypergraph::Hypergraph(std::size_t n, int k) : n_(n), k_(k) {
    check_shape(n, k);
    build_incidence();
}

Hypergraph Hypergraph::from_keys(std::size_t n, int k, std::vector<std::uint64_t> keys) {
    check_shape(n, k);
    Hypergraph h;
    h.n_ = n;
    h.k_ = k;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    h.keys_ = std::move(keys);
    h.build_incidence();
    return h;
}

Hypergraph Hypergraph::complete(std::size_t n, int k) {
    check_shape(n, k);
    std::vector<std::uint64_t> keys;
    if (n >= static_cast<std::size_t>(k)) {
        keys.reserve(binomial(n, static_cast<std::uint64_t>(k)));
        std::array<Vertex, kMaxUniformity> sub{};
        std::iota(sub.begin(), sub.begin() + k, Vertex{0});
        const std::span<Vertex> s(sub.data(), static_cast<std::size_t>(k));
        do {
            keys.push_back(Edge::of(s).key());
        } while (colex_next(s, n));
    }
    return from_keys(n, k, std::move(keys));
}

void Hypergraph::build_incidence() {
    inc_offsets_.assign(n_ + 1, 0);
    for (std::uint64_t key : keys_) {
        const Edge e = Edge::from_key(key, k_);
        for (Vertex v : e) ++inc_offsets_[v + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) inc_offsets_[v + 1] += inc_offsets_[v];
    inc_edges_.assign(inc_offsets_[n_], 0);
    std::vector<std::uint32_t> fill(inc_offsets_.begin(), inc_offsets_.end() - 1);
    for (EdgeId id = 0; id < keys_.size(); ++id) {
        const Edge e = Edge::from_key(keys_[id], k_);
        for (Vertex v : e) inc_edges_[fill[v]++] = id;
    }
}

std::optional<EdgeId> Hypergraph::find_key(std::uint64_t key) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return std::nullopt;
    return static_cast<EdgeId>(it - keys_.begin());
}

std::optional<EdgeId> Hypergraph::find(const Edge& e) const {
    if (e.size() != k_) return std::nullopt;
    return find_key(e.key());
}

std::span<const EdgeId> Hypergraph::incident(Vertex v) const {
    if (v >= n_) return {};
    return std::span<const EdgeId>(inc_edges_.data() + inc_offsets_[v],
                                   inc_offsets_[v + 1] - inc_offsets_[v]);
}

std::vector<Edge> Hypergraph::edges() const {
    std::vector<Edge> out;
    out.reserve(keys_.size());
    for (std::uint64_t key : keys_) out.push_back(Edge::from_key(key, k_));
    return out;
}

// ---- EdgeSet ---------------------------------------------------------------

EdgeSet::EdgeSet(const Hypergraph& universe, std::vector<EdgeId> ids)
    : universe_(&universe), ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    if (!ids_.empty() && ids_.back() >= universe.size())
        throw InputError("edge id " + std::to_string(ids_.back()) + " outside the parent hypergraph",
                         ids_.back());
}

EdgeSet EdgeSet::all(const Hypergraph& universe) {
    std::vector<EdgeId> ids(universe.size());
    std::iota(ids.begin(), ids.end(), EdgeId{0});
    return EdgeSet(universe, std::move(ids));
}

bool EdgeSet::contains(EdgeId id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

Hypergraph EdgeSet::to_hypergraph() const {
    std::vector<std::uint64_t> keys;
    keys.reserve(ids_.size());
    for (EdgeId id : ids_) keys.push_back(universe_->key(id));
    return Hypergraph::from_keys(universe_->num_vertices(), universe_->uniformity(), std::move(keys));
}

std::vector<bool> EdgeSet::mask() const {
    std::vector<bool> m(universe_->size(), false);
    for (EdgeId id : ids_) m[id] = true;
    return m;
}

// ---- VertexPartition ---------------------------------------------------------

VertexPartition::VertexPartition(int r, std::vector<std::uint8_t> assignment)
    : r_(r), assignment_(std::move(assignment)), sizes_(static_cast<std::size_t>(std::max(r, 0)), 0) {
    if (r < 1 || r > 31) throw InputError("number of classes must lie in [1, 31]");
    for (std::size_t v = 0; v < assignment_.size(); ++v) {
        if (assignment_[v] >= r)
            throw InputError("vertex " + std::to_string(v) + " assigned to class " +
                                 std::to_string(assignment_[v]) + " of " + std::to_string(r),
                             v);
        ++sizes_[assignment_[v]];
    }
}

VertexPartition VertexPartition::from_classes(std::size_t n, const std::vector<std::vector<Vertex>>& classes) {
    std::vector<int> seen(n, -1);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (Vertex v : classes[c]) {
            if (v >= n) throw InputError("vertex " + std::to_string(v) + " out of range", v);
            if (seen[v] >= 0) throw InputError("vertex " + std::to_string(v) + " assigned twice", v);
            seen[v] = static_cast<int>(c);
        }
    }
    std::vector<std::uint8_t> assignment(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (seen[v] < 0) throw InputError("vertex " + std::to_string(v) + " not assigned", v);
        assignment[v] = static_cast<std::uint8_t>(seen[v]);
    }
    return VertexPartition(static_cast<int>(classes.size()), std::move(assignment));
}

std::vector<Vertex> VertexPartition::members(int c) const {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < assignment_.size(); ++v)
        if (assignment_[v] == c) out.push_back(static_cast<Vertex>(v));
    return out;
}

VertexPartition VertexPartition::relabeled(std::span<const int> perm) const {
    if (perm.size() != static_cast<std::size_t>(r_)) throw InputError("permutation has wrong length");
    std::vector<int> inverse(static_cast<std::size_t>(r_), -1);
    for (int c = 0; c < r_; ++c) {
        const int from = perm[static_cast<std::size_t>(c)];
        if (from < 0 || from >= r_ || inverse[static_cast<std::size_t>(from)] >= 0)
            throw InputError("not a permutation of the classes");
        inverse[static_cast<std::size_t>(from)] = c;
    }
    std::vector<std::uint8_t> out(assignment_.size());
    for (std::size_t v = 0; v < out.size(); ++v)
        out[v] = static_cast<std::uint8_t>(inverse[assignment_[v]]);
    return VertexPartition(r_, std::move(out));
}

// ---- PairGraph ---------------------------------------------------------------

PairGraph::PairGraph(std::size_t n, std::vector<Pair> pairs) : n_(n) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto& [u, v] = pairs[i];
        if (u == v) throw InputError("loop at vertex " + std::to_string(u), i);
        if (u >= n || v >= n) throw InputError("pair endpoint out of range", i);
        if (u > v) std::swap(u, v);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    pairs_ = std::move(pairs);

    adj_offsets_.assign(n_ + 1, 0);
    for (const auto& [u, v] : pairs_) {
        ++adj_offsets_[u + 1];
        ++adj_offsets_[v + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) adj_offsets_[v + 1] += adj_offsets_[v];
    adj_.assign(adj_offsets_[n_], 0);
    std::vector<std::uint32_t> fill(adj_offsets_.begin(), adj_offsets_.end() - 1);
    for (const auto& [u, v] : pairs_) {
        adj_[fill[u]++] = v;
        adj_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < n_; ++v)
        std::sort(adj_.begin() + adj_offsets_[v], adj_.begin() + adj_offsets_[v + 1]);
}

bool PairGraph::contains(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(pairs_.begin(), pairs_.end(), Pair{u, v});
}

std::span<const Vertex> PairGraph::neighbors(Vertex v) const {
    if (v >= n_) return {};
    return std::span<const Vertex>(adj_.data() + adj_offsets_[v], adj_offsets_[v + 1] - adj_offsets_[v]);
}

PairGraph PairGraph::induced(const std::vector<bool>& keep) const {
    std::vector<Pair> out;
    for (const auto& [u, v] : pairs_)
        if (keep[u] && keep[v]) out.emplace_back(u, v);
    return PairGraph(n_, std::move(out));
}

// ---- operations ----------------------------------------------------------------

Hypergraph build_hypergraph(std::size_t n, int k, const std::vector<std::vector<Vertex>>& edges) {
    if (k < 2 || n < static_cast<std::size_t>(k))
        throw InputError("need n >= k >= 2 (n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")");
    check_shape(n, k);
    std::vector<std::uint64_t> keys;
    keys.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& raw = edges[i];
        if (raw.size() != static_cast<std::size_t>(k))
            throw InputError("edge " + std::to_string(i) + " has " + std::to_string(raw.size()) +
                                 " vertices, expected " + std::to_string(k),
                             i);
        for (Vertex v : raw)
            if (v >= n)
                throw InputError("edge " + std::to_string(i) + ": vertex " + std::to_string(v) +
                                     " out of range for n = " + std::to_string(n),
                                 i);
        const Edge e = Edge::of(raw);
        if (!e.is_proper())
            throw InputError("edge " + std::to_string(i) + " repeats a vertex", i);
        keys.push_back(e.key());
    }
    return Hypergraph::from_keys(n, k, std::move(keys));
}

Hypergraph link(const Hypergraph& g, Vertex v) {
    require_vertex(g, v);
    if (g.uniformity() < 2) throw InputError("link of a 1-uniform hypergraph is undefined");
    std::vector<std::uint64_t> keys;
    keys.reserve(g.degree(v));
    for (EdgeId id : g.incident(v)) keys.push_back(g.edge(id).without(v).key());
    return Hypergraph::from_keys(g.num_vertices(), g.uniformity() - 1, std::move(keys));
}

bool is_crossing(const Edge& e, const VertexPartition& partition) {
    std::uint32_t mask = 0;
    for (Vertex v : e) mask |= 1u << partition.class_of(v);
    return mask == (1u << partition.num_classes()) - 1u;
}

EdgeSet crossing_edges(const Hypergraph& g, const VertexPartition& partition) {
    require_crossing_shape(g, partition);
    std::vector<EdgeId> ids;
    for (EdgeId id = 0; id < g.size(); ++id)
        if (is_crossing(g.edge(id), partition)) ids.push_back(id);
    return EdgeSet(g, std::move(ids));
}

std::size_t count_crossing(const Hypergraph& g, const VertexPartition& partition) {
    require_crossing_shape(g, partition);
    std::vector<std::int32_t> labels(partition.assignment().begin(), partition.assignment().end());
    return simd::kernels().count_rainbow(g.keys().data(), g.size(), g.uniformity(), labels.data());
}

Hypergraph crossing_link(const Hypergraph& g, Vertex v, const VertexPartition& partition) {
    require_crossing_shape(g, partition);
    require_vertex(g, v);
    std::vector<std::uint64_t> keys;
    for (EdgeId id : g.incident(v)) {
        const Edge e = g.edge(id);
        if (is_crossing(e, partition)) keys.push_back(e.without(v).key());
    }
    return Hypergraph::from_keys(g.num_vertices(), g.uniformity() - 1, std::move(keys));
}

namespace {

template <class Accept>
std::size_t common_degree_impl(const Hypergraph& g, Vertex u, Vertex v, Accept accept) {
    require_vertex(g, u);
    require_vertex(g, v);
    if (u == v) throw InputError("common degree needs two distinct vertices");
    if (g.degree(u) > g.degree(v)) std::swap(u, v);
    std::size_t count = 0;
    for (EdgeId id : g.incident(u)) {
        const Edge e = g.edge(id);
        if (e.contains(v)) continue;
        const Edge rest = e.without(u);
        const auto other = g.find(rest.with(v));
        if (other && accept(e, g.edge(*other))) ++count;
    }
    return count;
}

}  // namespace

std::size_t common_degree(const Hypergraph& g, Vertex u, Vertex v) {
    return common_degree_impl(g, u, v, [](const Edge&, const Edge&) { return true; });
}

std::size_t common_crossing_degree(const Hypergraph& g, Vertex u, Vertex v, const VertexPartition& partition) {
    require_crossing_shape(g, partition);
    return common_degree_impl(g, u, v, [&](const Edge& a, const Edge& b) {
        return is_crossing(a, partition) && is_crossing(b, partition);
    });
}

std::vector<Edge> co_neighborhood(const Hypergraph& g, const Edge& s) {
    const int k = g.uniformity();
    if (s.size() != k - 1 && s.size() != k - 2)
        throw InputError("co-neighborhood needs |S| = k-1 or k-2, got |S| = " + std::to_string(s.size()));
    if (!s.is_proper()) throw InputError("co-neighborhood set repeats a vertex");
    for (Vertex x : s) require_vertex(g, x);
    std::vector<Edge> out;
    if (s.empty()) {
        for (EdgeId id = 0; id < g.size(); ++id) out.push_back(g.edge(id));
        return out;
    }
    Vertex pivot = s.front();
    for (Vertex x : s)
        if (g.degree(x) < g.degree(pivot)) pivot = x;
    for (EdgeId id : g.incident(pivot)) {
        const Edge e = g.edge(id);
        if (e.intersection_size(s) != s.size()) continue;
        Edge rest = e;
        for (Vertex x : s) rest = rest.without(x);
        out.push_back(rest);
    }
    std::sort(out.begin(), out.end());
    return out;
}

PairGraph shadow_graph(const Hypergraph& h) {
    std::vector<PairGraph::Pair> pairs;
    pairs.reserve(h.size() * static_cast<std::size_t>(h.uniformity() * (h.uniformity() - 1) / 2));
    for (EdgeId id = 0; id < h.size(); ++id) {
        const Edge e = h.edge(id);
        for (int i = 0; i < e.size(); ++i)
            for (int j = i + 1; j < e.size(); ++j) pairs.emplace_back(e[i], e[j]);
    }
    return PairGraph(h.num_vertices(), std::move(pairs));
}

EdgeSet restrict_bracket(const Hypergraph& g, const std::vector<Edge>& a, const std::vector<Edge>& b) {
    std::vector<EdgeId> ids;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (a[i].size() + b[j].size() != g.uniformity())
                throw InputError("bracket arity mismatch: " + std::to_string(a[i].size()) + " + " +
                                     std::to_string(b[j].size()) + " != " + std::to_string(g.uniformity()),
                                 i);
            if (!a[i].disjoint_from(b[j])) continue;
            if (auto id = g.find(a[i].united(b[j]))) ids.push_back(*id);
        }
    }
    return EdgeSet(g, std::move(ids));
}

bool is_balanced(const VertexPartition& partition, std::size_t n) {
    if (partition.num_classes() != 4) throw InputError("balancedness is defined for 4-partitions");
    const double quarter = static_cast<double>(n) / 4.0;
    const double lo = (1.0 - 1e-10) * quarter, hi = (1.0 + 1e-10) * quarter;
    for (std::size_t size : partition.class_sizes()) {
        const double s = static_cast<double>(size);
        if (s < lo || s > hi) return false;
    }
    return true;
}

VertexPartition turan_partition(std::size_t n, int r) {
    if (r < 2 || n < static_cast<std::size_t>(r))
        throw InputError("Turan partition needs n >= r >= 2");
    std::vector<std::uint8_t> assignment(n);
    const std::size_t base = n / static_cast<std::size_t>(r), extra = n % static_cast<std::size_t>(r);
    std::size_t v = 0;
    for (int c = 0; c < r; ++c) {
        const std::size_t size = base + (static_cast<std::size_t>(c) < extra ? 1 : 0);
        for (std::size_t i = 0; i < size; ++i) assignment[v++] = static_cast<std::uint8_t>(c);
    }
    return VertexPartition(r, std::move(assignment));
}

Hypergraph turan_hypergraph(std::size_t n, int r) {
    const VertexPartition parts = turan_partition(n, r);
    check_shape(n, r);
    std::vector<std::vector<Vertex>> classes(static_cast<std::size_t>(r));
    for (int c = 0; c < r; ++c) classes[static_cast<std::size_t>(c)] = parts.members(c);
    std::vector<std::uint64_t> keys;
    std::vector<Vertex> pick(static_cast<std::size_t>(r));
    // odometer over the product of the parts
    std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
    while (true) {
        for (int c = 0; c < r; ++c) pick[static_cast<std::size_t>(c)] = classes[static_cast<std::size_t>(c)][idx[static_cast<std::size_t>(c)]];
        keys.push_back(Edge::of(pick).key());
        int c = r - 1;
        while (c >= 0 && ++idx[static_cast<std::size_t>(c)] == classes[static_cast<std::size_t>(c)].size()) {
            idx[static_cast<std::size_t>(c)] = 0;
            --c;
        }
        if (c < 0) break;
    }
    return Hypergraph::from_keys(n, r, std::move(keys));
}

}  // namespace mantel
