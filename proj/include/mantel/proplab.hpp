#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mantel/hypergraph.hpp"
#include "mantel/motifs.hpp"

namespace mantel {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer, or a finite decimal ("0.35", "1e-4") exactly.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

enum class GammaChoice { Formula, Decimal };

/// Constants of the structural argument. Defaults:
///   alpha = 0.35, eps1 = 1/4200, eps2 = 1/7200,
///   delta = eps1^3 eps2 / (320 * 110 * 16), eps3 = 16 * 80 * delta / eps1,
///   and for the gap lemma eps = 0.1, xi = 0.001, phi = 0.0001,
///   gamma = (1 - eps) / 64 (formula) or 0.146 (the stated decimal; the two
///   disagree, so callers pick one), alpha' = 2 alpha / (1 - eps) = 7/9.
struct PaperConstants {
    Rational alpha{7, 20};
    Rational eps1{1, 4200};
    Rational eps2{1, 7200};
    Rational delta;
    Rational eps3;
    Rational gap_eps{1, 10};
    Rational xi{1, 1000};
    Rational gamma_formula;
    Rational gamma_decimal{146, 1000};
    Rational alpha_prime;
    Rational phi{1, 10000};

    static PaperConstants defaults();
    /// Recomputes delta, eps3, gamma_formula and alpha' from the base values.
    void derive();

    const Rational& gamma(GammaChoice choice) const {
        return choice == GammaChoice::Formula ? gamma_formula : gamma_decimal;
    }
    /// The gap lemma needs delta < gamma * phi / 2.
    bool delta_admissible(GammaChoice choice) const { return delta * 2 < gamma(choice) * phi; }

    /// Name -> exact value, for reports.
    std::map<std::string, Rational> named() const;
};

/// Applies name -> value overrides ("alpha", "eps1", ...). Base values are
/// applied first and derived values recomputed, then explicit overrides of
/// derived values (delta, eps3, gamma_formula, alpha_prime) win.
PaperConstants with_overrides(PaperConstants base, const std::map<std::string, std::string>& overrides);

/// Chernoff constant c_eps = min{-ln(e^eps (1 + eps)^-(1 + eps)), eps^2 / 2}.
double chernoff_c(double eps);

// ---- concentration -------------------------------------------------------------

struct ConcentrationRow {
    std::string name;
    int proposition = 0;
    std::optional<int> source_class;  // crossing-degree rows only
    double expectation = 0.0;
    double observed_min = 0.0;
    double observed_max = 0.0;
    double eps = 0.0;
    std::uint64_t samples = 0;
    bool applicable = true;
    bool pass = false;
};

enum class PSource { Generative, Empirical };

struct ConcentrationReport {
    std::size_t n = 0;
    double p = 0.0;
    PSource p_source = PSource::Generative;
    double eps = 0.0;
    std::vector<ConcentrationRow> rows;

    /// All applicable rows of the proposition pass (4..8); false when none applies.
    bool proposition_pass(int proposition) const;
    bool proposition_applicable(int proposition) const;
};

/// |G| / C(n, k).
double empirical_p(const Hypergraph& g);

/// Exact min/max over all triples, pairs and vertices of the co-degrees,
/// common degrees, degrees and (when a partition is given) crossing degrees,
/// against pn, (p/2)n^2, (p^2/6)n^3, (p/6)n^3 and p|A_j||A_k||A_l|.
/// A crossing-degree row is not applicable when one of the other three
/// classes is smaller than n/80. Requires k = 4 and 0 < p <= 1.
ConcentrationReport concentration_report(const Hypergraph& g, double p, const VertexPartition* partition, double eps,
                                         PSource source = PSource::Generative);

// ---- low co-degree pairs ----------------------------------------------------------

struct LowPairs {
    double threshold = 0.0;          // (alpha / 32) p^2 n^3
    PairGraph pairs;                 // P(Pi), pairs inside class 0
    std::vector<std::size_t> degree; // d_P(v)
    std::size_t max_degree = 0;
};

/// P(Pi) = {uv in A_1 choose 2 : d_Pi(u, v) < (alpha/32) p^2 n^3}, via
/// bit-parallel intersection of crossing links.
LowPairs low_pairs(const Hypergraph& g, const VertexPartition& partition, double p, double alpha);

/// Triples {u, v, w} with |N(u, v, w) ∩ A| > 2 eps p n.
std::uint64_t lemma12_count(const Hypergraph& g, const std::vector<Vertex>& a, double eps, double p);

// ---- structural decomposition --------------------------------------------------------

struct DecompositionReport {
    /// Class c of `partition` is class relabeling[c] of the input partition;
    /// class 0 carries the largest B_i (ties to the lowest index).
    std::array<int, 4> relabeling{0, 1, 2, 3};
    VertexPartition partition;
    LowPairs low;
    std::array<std::vector<EdgeId>, 4> b;        // B_i, ids in F
    std::vector<EdgeId> m;                       // crossing edges of G not in F, ids in G
    std::vector<EdgeId> g_crossing;              // G[Pi], ids in G
    std::vector<EdgeId> f_crossing;              // F[Pi], ids in F
    PairGraph l;                                 // shadow of F inside A_1
    std::vector<Vertex> c, d, c1, c2;
    std::array<std::vector<EdgeId>, 3> b1_parts; // B_1^(1), B_1^(2), B_1^(3)
    std::vector<std::size_t> f_crossing_degree;  // crossing edges of F through each vertex
    double c_threshold = 0.0;                    // eps1 n
    double c1_threshold = 0.0;                   // eps2 p n^3
    bool degenerate_c = false;                   // eps1 n < 1
    bool degenerate_c1 = false;                  // eps2 p n^3 < 1
    PaperConstants constants;
    double p = 0.0;
};

/// Requires F ⊆ G (edgewise), k = 4 and a 4-partition.
DecompositionReport decomposition(const Hypergraph& g, const Hypergraph& f, const VertexPartition& partition, double p,
                                  const PaperConstants& constants, bool relabel = true);

struct Prop9Sets {
    std::uint64_t k_size = 0;  // |K_{v,E}[S, Q]|
    std::vector<EdgeId> g_set; // G_{v,E}[S, Q] as ids in G
};

/// E: edges of G through v, each containing a vertex of S, covering S.
/// Q: 3-uniform with Q ⊆ L(v).
Prop9Sets prop9_sets(const Hypergraph& g, Vertex v, const std::vector<Vertex>& s, const std::vector<Edge>& e,
                     const Hypergraph& q);

// ---- audits ---------------------------------------------------------------------------

struct AuditLine {
    std::string name;
    double lhs = 0.0;
    std::string relation;  // "<", "<=", ">=", "=="
    double rhs = 0.0;
    bool holds = false;
    std::string note;
};

struct AuditReport {
    std::string name;
    std::vector<AuditLine> lines;
    std::map<std::string, double> quantities;
    std::map<std::string, bool> flags;

    const AuditLine* line(const std::string& line_name) const;
};

/// F contains a T copy; carries the witness.
class NotTFreeError : public std::invalid_argument {
public:
    NotTFreeError(const std::string& what, TCopy witness) : std::invalid_argument(what), witness_(witness) {}
    const TCopy& witness() const { return witness_; }

private:
    TCopy witness_;
};

/// Both sides of the conclusion |F[Pi]| + 4|B_1| < |G[Pi]|, the three
/// conditions and the four intermediate bounds, evaluated at the given scale.
/// Diagnostic only: nothing here is expected to hold at small n.
AuditReport lemma13_audit(const Hypergraph& g, const Hypergraph& f, const VertexPartition& partition, double p,
                          const PaperConstants& constants);
/// Same, reusing a decomposition already computed for (g, f, partition).
AuditReport lemma13_audit(const Hypergraph& g, const Hypergraph& f, const DecompositionReport& dec);

enum class GapVerdict { Consistent, Inconsistent, Inconclusive };
std::string_view verdict_name(GapVerdict v);

struct GapReport {
    double q_value = 0.0;
    bool q_certified = false;
    std::size_t crossing = 0;    // |G[Pi]|
    std::size_t low_pairs = 0;   // |P(Pi)|
    double penalty = 0.0;        // |P(Pi)| delta n^3 p^2
    double gap = 0.0;            // q - |G[Pi]| - penalty
    GapVerdict verdict = GapVerdict::Inconclusive;
};

/// gap = q - |G[Pi]| - |P(Pi)| delta n^3 p^2. With a certified q a positive gap
/// (or a zero gap when P(Pi) is empty) is consistent and anything else is not;
/// with a lower-bound q a non-conclusive sign is reported as inconclusive.
GapReport lemma14_gap(const Hypergraph& g, const VertexPartition& partition, double p, const PaperConstants& constants,
                      std::size_t q_value, bool q_certified);

struct Prop10Report {
    std::size_t f_size = 0;
    double bound = 0.0;  // (3/32 - eps) C(n, 4) p
    bool size_holds = false;
    bool balanced = false;
};

Prop10Report prop10_check(const Hypergraph& g, const Hypergraph& f, const VertexPartition& partition, double p,
                          double eps);

}  // namespace mantel
