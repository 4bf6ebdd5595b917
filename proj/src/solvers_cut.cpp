#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <string>

#include "mantel/solvers.hpp"
#include "search_clock.hpp"

namespace mantel {
namespace {

void require_cut_shape(const Hypergraph& h) {
    if (h.uniformity() < 2 || h.uniformity() > kMaxUniformity)
        throw InputError("cut solvers need 2 <= k <= 4");
}

/// Assigns vertices 0..n-1 in order. An edge dies once two of its assigned
/// vertices share a class; a full assignment's value is |H| - dead. The bound
/// additionally charges each unassigned vertex the fewest edges it must kill,
/// over the edges it is the first unassigned vertex of.
class CutSearch {
public:
    CutSearch(const Hypergraph& h, const Budget& budget, bool symmetry_breaking)
        : h_(h), n_(h.num_vertices()), r_(h.uniformity()), symmetry_(symmetry_breaking), clock_(budget),
          assign_(n_, -1), dead_(h.size(), 0), edges_(h.edges()) {}

    SolveResult run(std::size_t threshold) {
        threshold_ = threshold;
        if (n_ == 0 || h_.empty()) {
            best_assign_.assign(n_, 0);
            best_ = 0;
            have_ = true;
        } else {
            dfs(0, -1);
        }
        SolveResult result;
        result.optimal = !clock_.exhausted() || best_ == h_.size();
        result.value = best_;
        if (have_) {
            std::vector<std::uint8_t> a(best_assign_.begin(), best_assign_.end());
            result.partition = VertexPartition(r_, std::move(a));
        }
        result.stats = clock_.stats();
        return result;
    }

private:
    bool worth(std::size_t bound) const {
        if (!have_ || best_ < threshold_) return bound >= threshold_;
        return bound > best_;
    }

    std::size_t lookahead(Vertex next) const {
        // kills[u][c]: edges attributed to u that die if u joins class c
        std::size_t total = 0;
        std::vector<std::array<std::uint32_t, kMaxUniformity>> kills(n_ - next);
        for (EdgeId id = 0; id < edges_.size(); ++id) {
            if (dead_[id]) continue;
            const Edge& e = edges_[id];
            std::uint32_t mask = 0;
            Vertex first = 0;
            bool found = false;
            for (Vertex v : e) {
                if (assign_[v] >= 0) {
                    mask |= 1u << assign_[v];
                } else if (!found) {
                    first = v;
                    found = true;
                }
            }
            if (!found || mask == 0) continue;
            for (int c = 0; c < r_; ++c)
                if (mask >> c & 1u) ++kills[first - next][c];
        }
        for (const auto& row : kills) total += *std::min_element(row.begin(), row.begin() + r_);
        return total;
    }

    void dfs(Vertex v, int max_used) {
        if (clock_.tick()) return;
        if (v == n_) {
            const std::size_t value = h_.size() - dead_count_;
            if (!have_ || value > best_) {
                if (value >= threshold_ || !have_) {
                    best_ = value;
                    best_assign_ = assign_;
                    have_ = true;
                }
            }
            return;
        }
        const std::size_t upper = h_.size() - dead_count_;
        if (!worth(upper)) return;
        if (have_ && best_ == h_.size()) return;
        if (!worth(upper - lookahead(v))) return;

        const int last = symmetry_ ? std::min(max_used + 1, r_ - 1) : r_ - 1;
        for (int c = 0; c <= last; ++c) {
            assign_[v] = c;
            std::vector<EdgeId> killed;
            for (EdgeId id : h_.incident(v)) {
                if (dead_[id]) continue;
                for (Vertex x : edges_[id]) {
                    if (x != v && assign_[x] == c) {
                        dead_[id] = 1;
                        killed.push_back(id);
                        break;
                    }
                }
            }
            dead_count_ += killed.size();
            dfs(v + 1, std::max(max_used, c));
            dead_count_ -= killed.size();
            for (EdgeId id : killed) dead_[id] = 0;
            assign_[v] = -1;
            if (clock_.exhausted() || (have_ && best_ == h_.size())) return;
        }
    }

    const Hypergraph& h_;
    std::size_t n_;
    int r_;
    bool symmetry_;
    detail::SearchClock clock_;
    std::vector<int> assign_;
    std::vector<std::uint8_t> dead_;
    std::vector<Edge> edges_;
    std::size_t dead_count_ = 0;
    std::size_t threshold_ = 0;
    std::size_t best_ = 0;
    bool have_ = false;
    std::vector<int> best_assign_;
};

/// Crossing edges through v if v were in class c, for every c.
std::array<std::size_t, kMaxUniformity> crossing_through(const Hypergraph& h, const std::vector<std::uint8_t>& a,
                                                        Vertex v, int r) {
    std::array<std::size_t, kMaxUniformity> out{};
    const std::uint32_t full = (1u << r) - 1u;
    for (EdgeId id : h.incident(v)) {
        std::uint32_t mask = 0;
        int distinct = 0;
        for (Vertex x : h.edge(id)) {
            if (x == v) continue;
            const std::uint32_t bit = 1u << a[x];
            if (!(mask & bit)) ++distinct;
            mask |= bit;
        }
        if (distinct != r - 1) continue;
        const std::uint32_t missing = full & ~mask;
        ++out[static_cast<std::size_t>(std::countr_zero(missing))];
    }
    return out;
}

}  // namespace

SolveResult max_cut_exact(const Hypergraph& h, const Budget& budget, bool symmetry_breaking) {
    require_cut_shape(h);
    // A local-search value lets the search prune early without losing the
    // lexicographically least optimum: until a solution of at least that value
    // is found, only subtrees that cannot reach it are cut.
    std::size_t threshold = 0;
    if (!h.empty()) threshold = max_cut_local(h, direct_seed(0), 4).value;
    return CutSearch(h, budget, symmetry_breaking).run(threshold);
}

SolveResult max_cut4_exact(const Hypergraph& h, const Budget& budget, bool symmetry_breaking) {
    if (h.uniformity() != 4) throw InputError("max_cut4_exact needs a 4-uniform hypergraph");
    return max_cut_exact(h, budget, symmetry_breaking);
}

SolveResult max_cut_local(const Hypergraph& h, const TrialSeed& seed, int restarts) {
    require_cut_shape(h);
    detail::SearchClock clock({});
    const int r = h.uniformity();
    const std::size_t n = h.num_vertices();
    SolveResult best;
    bool have = false;
    for (int restart = 0; restart < std::max(restarts, 1); ++restart) {
        SplitMix64 rng(derive_seed(seed.derived, static_cast<std::uint64_t>(restart)).derived);
        std::vector<std::uint8_t> a(n);
        for (auto& c : a) c = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(r)));
        bool moved = true;
        while (moved) {
            moved = false;
            for (Vertex v = 0; v < n; ++v) {
                clock.tick();
                const auto through = crossing_through(h, a, v, r);
                int target = a[v];
                for (int c = 0; c < r; ++c)
                    if (through[c] > through[target]) target = c;
                if (target != a[v]) {
                    a[v] = static_cast<std::uint8_t>(target);
                    moved = true;
                }
            }
        }
        VertexPartition partition(r, std::move(a));
        const std::size_t value = count_crossing(h, partition);
        if (!have || value > best.value) {
            best.value = value;
            best.partition = std::move(partition);
            have = true;
        }
    }
    best.optimal = false;
    best.stats = clock.stats();
    return best;
}

SolveResult max_cut4_local(const Hypergraph& h, const TrialSeed& seed, int restarts) {
    if (h.uniformity() != 4) throw InputError("max_cut4_local needs a 4-uniform hypergraph");
    return max_cut_local(h, seed, restarts);
}

SolveResult best_partition_for(const Hypergraph& f, CutMethod method, const TrialSeed& seed, const Budget& budget,
                               int restarts) {
    return method == CutMethod::Exact ? max_cut_exact(f, budget) : max_cut_local(f, seed, restarts);
}

Tri is_kpartite(const Hypergraph& f, const Budget& budget) {
    const SolveResult cut = max_cut_exact(f, budget);
    if (cut.value == f.size()) return Tri::True;
    return cut.optimal ? Tri::False : Tri::Indeterminate;
}

Tri is_4partite(const Hypergraph& f, const Budget& budget) {
    if (f.uniformity() != 4) throw InputError("is_4partite needs a 4-uniform hypergraph");
    return is_kpartite(f, budget);
}

BipartiteHalf bipartite_half(const PairGraph& p) {
    const std::size_t n = p.num_vertices();
    std::vector<std::uint8_t> side(n, 0);
    bool moved = true;
    while (moved) {
        moved = false;
        for (Vertex v = 0; v < n; ++v) {
            std::size_t same = 0, cross = 0;
            for (Vertex u : p.neighbors(v)) (side[u] == side[v] ? same : cross) += 1;
            if (cross < same) {
                side[v] ^= 1u;
                moved = true;
            }
        }
    }
    std::vector<PairGraph::Pair> r;
    for (const auto& [u, v] : p.pairs())
        if (side[u] != side[v]) r.emplace_back(u, v);
    return {std::move(side), PairGraph(n, std::move(r))};
}

}  // namespace mantel
