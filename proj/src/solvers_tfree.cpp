#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "mantel/motifs.hpp"
#include "mantel/solvers.hpp"
#include "search_clock.hpp"

namespace mantel {

std::string_view tri_name(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        default: return "indeterminate";
    }
}

namespace {

struct Conflict {
    EdgeId x, y;  // the other two edges of a copy
};

/// Maximum independent set in the 3-uniform conflict hypergraph whose vertices
/// are host edges and whose hyperedges are T copies (Russian-doll search).
class TFreeSearch {
public:
    TFreeSearch(std::size_t m, std::vector<std::vector<Conflict>> conflicts, const Budget& budget)
        : m_(m), conflicts_(std::move(conflicts)), clock_(budget), kept_(m, 0), blocked_(m, 0), best_(m + 1, 0),
          mark_(m, 0) {}

    SolveResult run() {
        std::vector<EdgeId> best_set;
        std::size_t i = m_;
        while (i-- > 0) {
            record_ = best_[i + 1];
            found_ = false;
            // Candidates for a solution starting at edge i.
            keep(static_cast<EdgeId>(i));
            std::vector<EdgeId> cands;
            for (std::size_t j = i + 1; j < m_; ++j)
                if (!blocked_[j]) cands.push_back(static_cast<EdgeId>(j));
            expand(cands, 1);
            release(static_cast<EdgeId>(i));
            if (clock_.exhausted()) break;
            if (found_) {
                best_[i] = record_ + 1;
                best_set = witness_;
            } else {
                best_[i] = best_[i + 1];
            }
        }
        SolveResult result;
        result.optimal = !clock_.exhausted();
        result.value = result.optimal ? best_[0] : best_[i + 1];
        std::sort(best_set.begin(), best_set.end());
        result.edges = std::move(best_set);
        result.stats = clock_.stats();
        return result;
    }

private:
    void keep(EdgeId e) {
        kept_[e] = 1;
        path_.push_back(e);
        for (const Conflict& c : conflicts_[e]) {
            if (kept_[c.x]) ++blocked_[c.y];
            if (kept_[c.y]) ++blocked_[c.x];
        }
    }

    void release(EdgeId e) {
        for (const Conflict& c : conflicts_[e]) {
            if (kept_[c.x]) --blocked_[c.y];
            if (kept_[c.y]) --blocked_[c.x];
        }
        kept_[e] = 0;
        path_.pop_back();
    }

    // Lower bound on how many candidates must be dropped: a greedy packing of
    // candidate-disjoint live conflicts, pairs (one edge already kept) first.
    std::size_t packing(const std::vector<EdgeId>& cands) {
        if (stamp_ > 0xFFFFFFF0u) {
            std::fill(mark_.begin(), mark_.end(), 0u);
            stamp_ = 0;
        }
        const std::uint32_t free_mark = ++stamp_;
        const std::uint32_t used_mark = ++stamp_;
        for (EdgeId c : cands) mark_[c] = free_mark;
        std::size_t pack = 0;
        for (int pass = 0; pass < 2; ++pass) {
            for (EdgeId c : cands) {
                if (mark_[c] != free_mark) continue;
                for (const Conflict& cf : conflicts_[c]) {
                    const bool x_free = mark_[cf.x] == free_mark, y_free = mark_[cf.y] == free_mark;
                    if (pass == 0 && kept_[cf.x] && y_free) {
                        mark_[cf.y] = used_mark;
                    } else if (pass == 0 && kept_[cf.y] && x_free) {
                        mark_[cf.x] = used_mark;
                    } else if (pass == 1 && x_free && y_free) {
                        mark_[cf.x] = used_mark;
                        mark_[cf.y] = used_mark;
                    } else {
                        continue;
                    }
                    mark_[c] = used_mark;
                    ++pack;
                    break;
                }
            }
        }
        return pack;
    }

    void expand(std::vector<EdgeId>& cands, std::size_t size) {
        if (clock_.tick()) return;
        if (cands.empty()) {
            if (size > record_) {
                found_ = true;
                witness_ = path_;
            }
            return;
        }
        if (size + cands.size() <= record_) return;
        if (size + cands.size() - packing(cands) <= record_) return;

        std::size_t pos = 0;
        while (pos < cands.size()) {
            if (size + (cands.size() - pos) <= record_) return;
            const EdgeId j = cands[pos++];
            if (size + best_[j] <= record_) return;
            keep(j);
            std::vector<EdgeId> next;
            next.reserve(cands.size() - pos);
            for (std::size_t t = pos; t < cands.size(); ++t)
                if (!blocked_[cands[t]]) next.push_back(cands[t]);
            expand(next, size + 1);
            release(j);
            if (found_ || clock_.exhausted()) return;
        }
    }

    std::size_t m_;
    std::vector<std::vector<Conflict>> conflicts_;
    detail::SearchClock clock_;
    std::vector<std::uint8_t> kept_;
    std::vector<std::uint32_t> blocked_;
    std::vector<std::size_t> best_;  // best_[i]: optimum on edges i..m-1
    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
    std::vector<EdgeId> path_, witness_;
    std::size_t record_ = 0;
    bool found_ = false;
};

}  // namespace

SolveResult max_tfree_exact(const Hypergraph& h, const Budget& budget, std::uint64_t copy_limit) {
    const MotifIndex index(h);
    std::vector<std::vector<Conflict>> conflicts(h.size());
    std::uint64_t copies = 0;
    bool over = false;
    index.for_each_triple([&](EdgeId a, EdgeId b, EdgeId c) {
        if (++copies > copy_limit) {
            over = true;
            return false;
        }
        conflicts[a].push_back({b, c});
        conflicts[b].push_back({a, c});
        conflicts[c].push_back({a, b});
        return true;
    });
    if (over)
        throw SolverLimitError("instance has more than " + std::to_string(copy_limit) +
                               " T copies; refusing exact search");
    return TFreeSearch(h.size(), std::move(conflicts), budget).run();
}

namespace {

struct RepairOutcome {
    std::vector<char> alive;
    std::size_t value = 0;
};

RepairOutcome repair_once(const Hypergraph& h, const MotifIndex& index, const std::vector<std::uint64_t>& initial,
                          const std::vector<std::uint64_t>& rank) {
    const std::size_t m = h.size();
    std::vector<std::uint64_t> count = initial;
    std::vector<char> alive(m, 1);
    // (count, ~rank): most copies first, then lowest rank
    std::priority_queue<std::tuple<std::uint64_t, std::uint64_t, EdgeId>> heap;
    for (EdgeId e = 0; e < m; ++e)
        if (count[e] > 0) heap.emplace(count[e], ~rank[e], e);

    std::vector<EdgeId> deleted;
    while (!heap.empty()) {
        const auto [c, r, e] = heap.top();
        heap.pop();
        if (!alive[e] || count[e] == 0) continue;
        // counts only fall, so a stale entry is re-keyed when it surfaces
        if (c != count[e]) {
            heap.emplace(count[e], r, e);
            continue;
        }
        alive[e] = 0;
        deleted.push_back(e);
        index.for_each_copy_through(e, alive, [&](const TCopy& t) {
            for (EdgeId other : {t.e1, t.e2, t.e3}) {
                if (other == e) continue;
                --count[other];
            }
            return true;
        });
    }
    // Re-insert deleted edges that close no copy, in tie-break order.
    std::sort(deleted.begin(), deleted.end(), [&](EdgeId a, EdgeId b) { return rank[a] < rank[b]; });
    for (EdgeId e : deleted) {
        bool closes = false;
        index.for_each_copy_through(e, alive, [&](const TCopy&) {
            closes = true;
            return false;
        });
        if (!closes) alive[e] = 1;
    }
    RepairOutcome out;
    out.value = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
    out.alive = std::move(alive);
    return out;
}

/// Adds edges outside `alive` in id order whenever they close no copy.
void extend_greedily(const MotifIndex& index, std::vector<char>& alive) {
    for (EdgeId e = 0; e < alive.size(); ++e) {
        if (alive[e]) continue;
        bool closes = false;
        index.for_each_copy_through(e, alive, [&](const TCopy&) {
            closes = true;
            return false;
        });
        if (!closes) alive[e] = 1;
    }
}

}  // namespace

SolveResult max_tfree_repair(const Hypergraph& h, const TrialSeed& seed, int restarts) {
    detail::SearchClock clock({});
    const MotifIndex index(h);
    const std::size_t m = h.size();
    std::vector<std::uint64_t> initial(m, 0);
    index.for_each_triple([&](EdgeId a, EdgeId b, EdgeId c) {
        ++initial[a];
        ++initial[b];
        ++initial[c];
        return true;
    });

    RepairOutcome best;
    best.alive.assign(m, 0);
    bool have = false;
    for (int r = 0; r < std::max(restarts, 1); ++r) {
        std::vector<std::uint64_t> rank(m);
        std::iota(rank.begin(), rank.end(), std::uint64_t{0});
        if (r > 0) {
            SplitMix64 rng(derive_seed(seed.derived, static_cast<std::uint64_t>(r)).derived);
            for (std::size_t i = m; i > 1; --i) std::swap(rank[i - 1], rank[rng.below(i)]);
        }
        RepairOutcome out = repair_once(h, index, initial, rank);
        clock.tick();
        if (!have || out.value > best.value) {
            best = std::move(out);
            have = true;
        }
    }

    if (h.uniformity() == 4 && m > 0) {
        const SolveResult cut = max_cut4_local(h, seed, std::max(restarts, 1));
        std::vector<char> alive(m, 0);
        for (EdgeId e = 0; e < m; ++e) alive[e] = is_crossing(h.edge(e), *cut.partition);
        extend_greedily(index, alive);
        const auto value = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
        if (value > best.value) {
            best.alive = std::move(alive);
            best.value = value;
        }
    }

    SolveResult result;
    result.value = best.value;
    for (EdgeId e = 0; e < m; ++e)
        if (best.alive[e]) result.edges.push_back(e);
    result.optimal = false;
    result.stats = clock.stats();
    return result;
}

}  // namespace mantel
