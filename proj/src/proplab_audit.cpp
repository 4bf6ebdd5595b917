#include "mantel/proplab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mantel/combinatorics.hpp"

namespace mantel {

namespace {

void require_same_shape(const Hypergraph& g, const Hypergraph& f, const VertexPartition& partition) {
    if (g.uniformity() != 4 || f.uniformity() != 4) throw InputError("the decomposition is defined for 4-uniform hosts");
    if (f.num_vertices() != g.num_vertices() || partition.num_vertices() != g.num_vertices())
        throw InputError("G, F and the partition must share the vertex set");
    if (partition.num_classes() != 4) throw InputError("the decomposition needs a 4-partition");
}

std::array<std::vector<EdgeId>, 4> defect_edges(const Hypergraph& f, const VertexPartition& partition) {
    std::array<std::vector<EdgeId>, 4> b;
    for (EdgeId id = 0; id < f.size(); ++id) {
        std::array<int, 4> hits{};
        for (Vertex v : f.edge(id)) ++hits[partition.class_of(v)];
        for (int c = 0; c < 4; ++c)
            if (hits[c] >= 2) b[c].push_back(id);
    }
    return b;
}

std::vector<Vertex> select(const std::vector<Vertex>& from, const std::vector<bool>& mask, bool want) {
    std::vector<Vertex> out;
    for (Vertex v : from)
        if (mask[v] == want) out.push_back(v);
    return out;
}

std::vector<bool> as_mask(std::size_t n, const std::vector<Vertex>& vs) {
    std::vector<bool> m(n, false);
    for (Vertex v : vs) m[v] = true;
    return m;
}

}  // namespace

DecompositionReport decomposition(const Hypergraph& g, const Hypergraph& f, const VertexPartition& partition, double p,
                                  const PaperConstants& constants, bool relabel) {
    require_same_shape(g, f, partition);
    for (EdgeId id = 0; id < f.size(); ++id)
        if (!g.find_key(f.key(id))) throw InputError("F edge " + f.edge(id).to_string() + " is not in G", id);

    const std::size_t n = g.num_vertices();
    const double nd = static_cast<double>(n);
    DecompositionReport rep;
    rep.constants = constants;
    rep.p = p;

    auto b = defect_edges(f, partition);
    if (relabel) {
        int best = 0;
        for (int c = 1; c < 4; ++c)
            if (b[c].size() > b[best].size()) best = c;
        int next = 1;
        rep.relabeling[0] = best;
        for (int c = 0; c < 4; ++c)
            if (c != best) rep.relabeling[next++] = c;
    }
    rep.partition = partition.relabeled(rep.relabeling);
    for (int c = 0; c < 4; ++c) rep.b[c] = b[rep.relabeling[c]];
    const VertexPartition& pi = rep.partition;

    rep.low = low_pairs(g, pi, p, to_double(constants.alpha));

    const EdgeSet g_cross = crossing_edges(g, pi);
    rep.g_crossing.assign(g_cross.ids().begin(), g_cross.ids().end());
    const EdgeSet f_cross = crossing_edges(f, pi);
    rep.f_crossing.assign(f_cross.ids().begin(), f_cross.ids().end());
    for (EdgeId id : rep.g_crossing)
        if (!f.find_key(g.key(id))) rep.m.push_back(id);

    const std::vector<Vertex> a1 = pi.members(0);
    const std::vector<bool> in_a1 = as_mask(n, a1);
    rep.l = shadow_graph(f).induced(in_a1);

    rep.f_crossing_degree.assign(n, 0);
    for (EdgeId id : rep.f_crossing)
        for (Vertex v : f.edge(id)) ++rep.f_crossing_degree[v];

    const Rational c_threshold = constants.eps1 * static_cast<long long>(n);
    rep.c_threshold = to_double(c_threshold);
    rep.c1_threshold = to_double(constants.eps2) * p * nd * nd * nd;
    rep.degenerate_c = c_threshold < 1;
    rep.degenerate_c1 = rep.c1_threshold < 1.0;

    std::vector<bool> in_c(n, false);
    for (Vertex x : a1)
        if (Rational(static_cast<long long>(rep.l.degree(x))) >= c_threshold) in_c[x] = true;
    rep.c = select(a1, in_c, true);
    rep.d = select(a1, in_c, false);
    std::vector<bool> in_c1(n, false);
    for (Vertex x : rep.c)
        if (static_cast<double>(rep.f_crossing_degree[x]) >= rep.c1_threshold) in_c1[x] = true;
    rep.c1 = select(rep.c, in_c1, true);
    rep.c2 = select(rep.c, in_c1, false);

    for (EdgeId id : rep.b[0]) {
        int hc = 0, hc1 = 0, hc2 = 0;
        for (Vertex v : f.edge(id)) {
            hc += in_c[v];
            hc1 += in_c1[v];
            hc2 += in_c[v] && !in_c1[v];
        }
        if (hc <= 3 && hc1 >= 1)
            rep.b1_parts[0].push_back(id);
        else if (hc <= 3 && hc2 >= 1)
            rep.b1_parts[1].push_back(id);
        else
            rep.b1_parts[2].push_back(id);
    }
    return rep;
}

Prop9Sets prop9_sets(const Hypergraph& g, Vertex v, const std::vector<Vertex>& s, const std::vector<Edge>& e,
                     const Hypergraph& q) {
    const std::size_t n = g.num_vertices();
    if (g.uniformity() != 4) throw InputError("the bracket sets are defined for 4-uniform hosts");
    if (q.uniformity() != 3 || q.num_vertices() != n) throw InputError("Q must be 3-uniform on the host's vertex set");
    if (v >= n) throw InputError("v outside the host");
    const std::vector<bool> in_s = as_mask(n, s);

    // certifiers per vertex of S
    std::vector<std::vector<Edge>> by_x(n);
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Edge& w = e[i];
        if (w.size() != 4 || !g.contains(w) || !w.contains(v))
            throw InputError("E member " + w.to_string() + " is not a host edge through v", i);
        bool hit = false;
        for (Vertex x : w)
            if (x != v && x < n && in_s[x]) {
                by_x[x].push_back(w);
                hit = true;
            }
        if (!hit) throw InputError("E member " + w.to_string() + " misses S", i);
    }
    for (Vertex x : s) {
        if (x >= n) throw InputError("S vertex outside the host");
        if (by_x[x].empty()) throw InputError("S vertex " + std::to_string(x) + " lies in no member of E");
    }
    for (EdgeId id = 0; id < q.size(); ++id) {
        const Edge t = q.edge(id);
        if (t.contains(v) || !g.contains(t.with(v)))
            throw InputError("Q triple " + t.to_string() + " is not in L(v)", id);
    }

    std::vector<std::uint64_t> keys;
    std::vector<Vertex> sorted_s(s);
    std::sort(sorted_s.begin(), sorted_s.end());
    sorted_s.erase(std::unique(sorted_s.begin(), sorted_s.end()), sorted_s.end());
    for (Vertex x : sorted_s) {
        for (EdgeId id = 0; id < q.size(); ++id) {
            const Edge t = q.edge(id);
            const bool ok = std::any_of(by_x[x].begin(), by_x[x].end(), [&](const Edge& w) { return w.disjoint_from(t); });
            if (ok) keys.push_back(t.with(x).key());
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    Prop9Sets out;
    out.k_size = keys.size();
    for (std::uint64_t key : keys)
        if (auto id = g.find_key(key)) out.g_set.push_back(*id);
    std::sort(out.g_set.begin(), out.g_set.end());
    return out;
}

// ---- audits ---------------------------------------------------------------------------

const AuditLine* AuditReport::line(const std::string& line_name) const {
    for (const auto& l : lines)
        if (l.name == line_name) return &l;
    return nullptr;
}

namespace {

AuditLine compare(std::string name, double lhs, std::string relation, double rhs, std::string note = {}) {
    AuditLine l;
    l.name = std::move(name);
    l.lhs = lhs;
    l.rhs = rhs;
    if (relation == "<")
        l.holds = lhs < rhs;
    else if (relation == "<=")
        l.holds = lhs <= rhs;
    else if (relation == ">=")
        l.holds = lhs >= rhs;
    else
        l.holds = lhs == rhs;
    l.relation = std::move(relation);
    l.note = std::move(note);
    return l;
}

void require_t_free(const Hypergraph& f) {
    if (auto copy = find_T(f)) {
        const auto ids = copy->sorted_edges();
        throw NotTFreeError("F contains a T copy: " + f.edge(ids[0]).to_string() + " " + f.edge(ids[1]).to_string() +
                                " " + f.edge(ids[2]).to_string(),
                            *copy);
    }
}

}  // namespace

AuditReport lemma13_audit(const Hypergraph& g, const Hypergraph& f, const VertexPartition& partition, double p,
                          const PaperConstants& constants) {
    require_same_shape(g, f, partition);
    require_t_free(f);
    return lemma13_audit(g, f, decomposition(g, f, partition, p, constants));
}

AuditReport lemma13_audit(const Hypergraph& g, const Hypergraph& f, const DecompositionReport& dec) {
    require_t_free(f);
    const PaperConstants& k = dec.constants;
    const double p = dec.p;
    const double n = static_cast<double>(g.num_vertices());
    const double n3 = n * n * n, n4 = n3 * n;
    const double eps1 = to_double(k.eps1), eps2 = to_double(k.eps2), eps3 = to_double(k.eps3);
    const double delta = to_double(k.delta);

    std::vector<EdgeId> all_b;
    for (const auto& bi : dec.b) all_b.insert(all_b.end(), bi.begin(), bi.end());
    std::sort(all_b.begin(), all_b.end());
    all_b.erase(std::unique(all_b.begin(), all_b.end()), all_b.end());

    const VertexPartition& pi = dec.partition;
    const auto b1 = static_cast<double>(dec.b[0].size());
    const auto m = static_cast<double>(dec.m.size());
    const auto g_cross = static_cast<double>(dec.g_crossing.size());
    const auto f_cross = static_cast<double>(dec.f_crossing.size());

    // Condition (iii): pairs of A_1 covered by a B_1 edge.
    std::vector<PairGraph::Pair> b1_pairs;
    for (EdgeId id : dec.b[0]) {
        const Edge e = f.edge(id);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (pi.class_of(e[i]) == 0 && pi.class_of(e[j]) == 0) b1_pairs.emplace_back(e[i], e[j]);
    }
    const PairGraph b1_shadow(g.num_vertices(), std::move(b1_pairs));
    std::size_t low_overlap = 0;
    for (const auto& [u, v] : b1_shadow.pairs()) low_overlap += dec.low.pairs.contains(u, v);

    // L' = L[C] ∪ L[D]
    const std::vector<bool> in_c = [&] {
        std::vector<bool> mask(g.num_vertices(), false);
        for (Vertex x : dec.c) mask[x] = true;
        return mask;
    }();
    std::size_t l_prime = 0;
    for (const auto& [u, v] : dec.l.pairs()) l_prime += in_c[u] == in_c[v];

    // Gadget totals over the anchor pairs of B_1.
    const EdgeSet b1_set(f, dec.b[0]);
    const auto hats = count_that(g, pi, b1_set);
    std::uint64_t hat_total = 0;
    std::uint64_t hat_min = hats.empty() ? 0 : std::numeric_limits<std::uint64_t>::max();
    for (const auto& [pair, count] : hats) {
        hat_total += count;
        hat_min = std::min(hat_min, count);
    }

    AuditReport rep;
    rep.name = "defect_edge_audit";
    rep.lines.push_back(compare("conclusion", f_cross + 4 * b1, "<", g_cross, "|F[Pi]| + 4|B1| vs |G[Pi]|"));
    rep.lines.push_back(
        compare("conclusion_nonstrict", f_cross + 4 * b1, "<=", g_cross, "holds whenever B1 is empty"));
    rep.lines.push_back(compare("m_exceeds_4b1", 4 * b1, "<", m, "equivalent form 4|B1| < |M|"));
    rep.lines.push_back(compare("condition_i", static_cast<double>(all_b.size()), "<=", delta * p * n4,
                                "|B1 ∪ B2 ∪ B3 ∪ B4| vs delta p n^4"));
    rep.lines.push_back(compare("condition_ii", b1, ">=", 1.0, "B1 non-empty"));
    rep.lines.push_back(compare("condition_iii", static_cast<double>(low_overlap), "==", 0.0,
                                "A_1 pairs covered by B1 edges that lie in P(Pi)"));
    rep.lines.push_back(compare("size_of_C", static_cast<double>(dec.c.size()), "<=", eps3 * n, "|C| vs eps3 n"));
    rep.lines.push_back(compare("m_vs_C1", m, ">=", eps1 * eps2 / (16 * eps3) * p * n3 * static_cast<double>(dec.c1.size()),
                                "|M| vs (eps1 eps2 / 16 eps3) p n^3 |C1|"));
    rep.lines.push_back(compare("m_vs_L_prime", m, ">=", p * n * n / (320 * eps1) * static_cast<double>(l_prime),
                                "|M| vs (p n^2 / 320 eps1) |E(L')|"));
    rep.lines.push_back(compare("m_vs_C2", m, ">=", p * n3 / 130 * static_cast<double>(dec.c2.size()),
                                "|M| vs (p n^3 / 130) |C2|"));
    rep.lines.push_back(compare("gadgets_per_anchor_pair", static_cast<double>(hat_min), ">=", p * p * n3 / 80,
                                "fewest gadgets over anchor pairs vs p^2 n^3 / 80"));

    auto& q = rep.quantities;
    q["n"] = n;
    q["p"] = p;
    q["G_crossing"] = g_cross;
    q["F_crossing"] = f_cross;
    q["F_size"] = static_cast<double>(f.size());
    for (int c = 0; c < 4; ++c) q["B" + std::to_string(c + 1)] = static_cast<double>(dec.b[c].size());
    q["B_union"] = static_cast<double>(all_b.size());
    q["M"] = m;
    q["L_edges"] = static_cast<double>(dec.l.size());
    q["L_prime_edges"] = static_cast<double>(l_prime);
    q["C"] = static_cast<double>(dec.c.size());
    q["D"] = static_cast<double>(dec.d.size());
    q["C1"] = static_cast<double>(dec.c1.size());
    q["C2"] = static_cast<double>(dec.c2.size());
    for (int j = 0; j < 3; ++j) q["B1_part" + std::to_string(j + 1)] = static_cast<double>(dec.b1_parts[j].size());
    q["low_pairs"] = static_cast<double>(dec.low.pairs.size());
    q["low_pair_max_degree"] = static_cast<double>(dec.low.max_degree);
    q["B1_shadow_pairs"] = static_cast<double>(b1_shadow.size());
    q["gadget_anchor_pairs"] = static_cast<double>(hats.size());
    q["gadget_total"] = static_cast<double>(hat_total);
    q["c_threshold"] = dec.c_threshold;
    q["c1_threshold"] = dec.c1_threshold;

    std::vector<bool> in_m(g.size(), false);
    for (EdgeId id : dec.m) in_m[id] = true;
    bool m_disjoint = true, m_crossing = true;
    for (EdgeId id : dec.m) {
        m_disjoint = m_disjoint && !f.find_key(g.key(id));
        m_crossing = m_crossing && is_crossing(g.edge(id), pi);
    }
    std::size_t parts = 0;
    for (const auto& part : dec.b1_parts) parts += part.size();

    auto& fl = rep.flags;
    fl["degenerate_c_threshold"] = dec.degenerate_c;
    fl["degenerate_c1_threshold"] = dec.degenerate_c1;
    fl["m_disjoint_from_f"] = m_disjoint;
    fl["m_within_crossing"] = m_crossing;
    fl["b1_parts_cover"] = parts == dec.b[0].size();
    fl["relabeled"] = dec.relabeling != std::array<int, 4>{0, 1, 2, 3};
    return rep;
}

std::string_view verdict_name(GapVerdict v) {
    switch (v) {
        case GapVerdict::Consistent: return "consistent";
        case GapVerdict::Inconsistent: return "inconsistent";
        case GapVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

GapReport lemma14_gap(const Hypergraph& g, const VertexPartition& partition, double p, const PaperConstants& constants,
                      std::size_t q_value, bool q_certified) {
    const double n = static_cast<double>(g.num_vertices());
    GapReport rep;
    rep.q_value = static_cast<double>(q_value);
    rep.q_certified = q_certified;
    rep.crossing = count_crossing(g, partition);
    rep.low_pairs = low_pairs(g, partition, p, to_double(constants.alpha)).pairs.size();
    rep.penalty = static_cast<double>(rep.low_pairs) * to_double(constants.delta) * n * n * n * p * p;
    rep.gap = static_cast<double>(static_cast<long long>(q_value) - static_cast<long long>(rep.crossing)) - rep.penalty;

    // With P(Pi) empty the non-strict form q >= |G[Pi]| always holds.
    if (rep.low_pairs == 0 || rep.gap > 0.0)
        rep.verdict = GapVerdict::Consistent;
    else
        rep.verdict = q_certified ? GapVerdict::Inconsistent : GapVerdict::Inconclusive;
    return rep;
}

Prop10Report prop10_check(const Hypergraph& g, const Hypergraph& f, const VertexPartition& partition, double p,
                          double eps) {
    if (f.num_vertices() != g.num_vertices() || partition.num_vertices() != g.num_vertices())
        throw InputError("G, F and the partition must share the vertex set");
    Prop10Report rep;
    rep.f_size = f.size();
    rep.bound = (3.0 / 32.0 - eps) * binomial_real(g.num_vertices(), 4) * p;
    rep.size_holds = static_cast<double>(rep.f_size) >= rep.bound;
    rep.balanced = is_balanced(partition, g.num_vertices());
    return rep;
}

}  // namespace mantel
