#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mantel/hypergraph.hpp"
#include "mantel/randgen.hpp"

namespace mantel {

/// Search limits. Zero means unlimited. A time limit makes the outcome
/// machine-dependent once it is hit; node limits are reproducible.
struct Budget {
    std::uint64_t max_nodes = 0;
    double max_seconds = 0.0;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    double elapsed_seconds = 0.0;
    bool budget_hit = false;
};

struct SolveResult {
    std::size_t value = 0;
    /// Witness edge ids in the host (T-free solvers).
    std::vector<EdgeId> edges;
    /// Witness partition (cut solvers).
    std::optional<VertexPartition> partition;
    /// True only when the search space was exhausted under the pruning rules.
    bool optimal = false;
    SearchStats stats;

    EdgeSet witness_edges(const Hypergraph& host) const { return EdgeSet(host, edges); }
};

/// Thrown when an exact solver refuses an instance (too many T copies to hold).
class SolverLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Tri { False, True, Indeterminate };
std::string_view tri_name(Tri t);

inline constexpr std::uint64_t kDefaultCopyLimit = 10'000'000;

/// Maximum T_k-free edge subset, k in {2, 3, 4}: every T copy forbids keeping
/// all three of its edges. Russian-doll branch and bound over edges in id
/// order; bounds are the suffix optimum and remaining edges minus a greedy
/// disjoint packing of the live conflicts.
SolveResult max_tfree_exact(const Hypergraph& h, const Budget& budget = {},
                            std::uint64_t copy_limit = kDefaultCopyLimit);

/// Heuristic T-free subset: repeatedly delete the edge in most live T copies
/// (ties by lowest id on restart 0, randomised on later restarts), then re-add
/// deleted edges that close no copy. For k = 4 the crossing set of the best
/// local 4-cut (greedily extended) is an incumbent, so the value is never below
/// max_cut4_local on the same seed and restarts. Always T-free, never optimal.
SolveResult max_tfree_repair(const Hypergraph& h, const TrialSeed& seed, int restarts = 4);

/// Maximum r-partite cut with r = k: the partition maximising |H[Pi]|.
/// Vertices are assigned in order; with symmetry breaking vertex 0 goes to
/// class 0 and classes open in order. Among optimal partitions the
/// lexicographically least assignment (in canonical form) is returned.
SolveResult max_cut_exact(const Hypergraph& h, const Budget& budget = {}, bool symmetry_breaking = true);
/// max_cut_exact for 4-uniform hosts; q(H).
SolveResult max_cut4_exact(const Hypergraph& h, const Budget& budget = {}, bool symmetry_breaking = true);

/// Single-vertex-move hill climbing from random starts; best over restarts.
/// The returned partition is 1-move optimal.
SolveResult max_cut_local(const Hypergraph& h, const TrialSeed& seed, int restarts = 8);
SolveResult max_cut4_local(const Hypergraph& h, const TrialSeed& seed, int restarts = 8);

enum class CutMethod { Exact, Local };

/// A partition maximising |F[Pi]| (exactly or locally).
SolveResult best_partition_for(const Hypergraph& f, CutMethod method, const TrialSeed& seed,
                               const Budget& budget = {}, int restarts = 8);

/// Whether some k-partition makes every edge crossing, decided by the exact cut
/// solver. Indeterminate when the budget runs out before a decision.
Tri is_kpartite(const Hypergraph& f, const Budget& budget = {});
Tri is_4partite(const Hypergraph& f, const Budget& budget = {});

struct BipartiteHalf {
    std::vector<std::uint8_t> side;  // 0 = X, 1 = Y
    PairGraph cross;                 // R
};

/// Local moves (flip a vertex with fewer cross than same-side neighbours)
/// until none applies; |R| >= |P| / 2.
BipartiteHalf bipartite_half(const PairGraph& p);

}  // namespace mantel
