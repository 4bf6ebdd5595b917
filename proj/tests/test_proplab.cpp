#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "mantel/combinatorics.hpp"
#include "mantel/proplab.hpp"
#include "mantel/randgen.hpp"
#include "mantel/solvers.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace mantel;

TEST(Chernoff, ClosedForm) {
    // 2 ln 2 - 1 and (1.1) ln 1.1 - 0.1, evaluated to 20 digits with mpmath.
    EXPECT_NEAR(chernoff_c(1.0), 0.386294361119890618834, 1e-12);
    EXPECT_NEAR(chernoff_c(0.1), 0.004841197784757346, 1e-15);
    EXPECT_LT(chernoff_c(0.1), 0.005);
    EXPECT_LT(chernoff_c(1e-8), 1e-15);
    EXPECT_THROW(chernoff_c(0.0), InputError);
    EXPECT_THROW(chernoff_c(-1.0), InputError);
}

TEST(Chernoff, MonotoneAndBelowQuadratic) {
    double prev = 0.0;
    for (int i = 1; i <= 400; ++i) {
        const double eps = 0.01 * i;
        const double c = chernoff_c(eps);
        EXPECT_GT(c, prev);
        EXPECT_LE(c, eps * eps / 2.0);
        prev = c;
    }
}

TEST(Constants, ExactDefaults) {
    const auto c = PaperConstants::defaults();
    EXPECT_EQ(c.alpha, Rational(7, 20));
    EXPECT_EQ(c.eps1, Rational(1, 4200));
    EXPECT_EQ(c.eps2, Rational(1, 7200));
    // (1/4200)^3 (1/7200) / 563200
    EXPECT_EQ(c.delta, Rational(1) / Rational(boost::multiprecision::cpp_int("300429803520000000000")));
    EXPECT_EQ(c.eps3, Rational(1) / Rational(boost::multiprecision::cpp_int("55883520000000")));
    EXPECT_EQ(c.gamma_formula, Rational(9, 640));
    EXPECT_EQ(c.gamma_decimal, Rational(73, 500));
    EXPECT_EQ(c.alpha_prime, Rational(7, 9));
    EXPECT_EQ(c.xi, Rational(1, 1000));
    EXPECT_EQ(c.phi, Rational(1, 10000));
    EXPECT_TRUE(c.delta_admissible(GammaChoice::Formula));
    EXPECT_TRUE(c.delta_admissible(GammaChoice::Decimal));
    EXPECT_EQ(c.named().size(), 11u);
}

TEST(Constants, Overrides) {
    const auto base = PaperConstants::defaults();
    const auto c = with_overrides(base, {{"eps1", "1/10"}, {"gap_eps", "0.5"}});
    EXPECT_EQ(c.eps1, Rational(1, 10));
    EXPECT_EQ(c.delta, Rational(1, 1000) * Rational(1, 7200) / 563200);
    EXPECT_EQ(c.alpha_prime, Rational(7, 10) / Rational(1, 2));
    const auto d = with_overrides(base, {{"delta", "1e-3"}});
    EXPECT_EQ(d.delta, Rational(1, 1000));
    EXPECT_FALSE(d.delta_admissible(GammaChoice::Formula));
    EXPECT_THROW(with_overrides(base, {{"beta", "1"}}), InputError);
    EXPECT_THROW(with_overrides(base, {{"alpha", "x"}}), InputError);
}

TEST(Rationals, Parse) {
    EXPECT_EQ(parse_rational("0.35"), Rational(7, 20));
    EXPECT_EQ(parse_rational("1e-4"), Rational(1, 10000));
    EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
    EXPECT_EQ(to_string(Rational(9, 640)), "9/640");
    EXPECT_THROW(parse_rational("1/0"), InputError);
    EXPECT_THROW(parse_rational(""), InputError);
    EXPECT_THROW(parse_rational("1.2.3"), InputError);
}

namespace {

const ConcentrationRow& row(const ConcentrationReport& r, const std::string& name, int cls = -1) {
    for (const auto& x : r.rows)
        if (x.name == name && (cls < 0 || x.source_class == cls)) return x;
    throw std::runtime_error("missing row " + name);
}

}  // namespace

TEST(Concentration, CompleteHost) {
    const std::size_t n = 16;
    const Hypergraph g = Hypergraph::complete(n, 4);
    const VertexPartition pi = turan_partition(n, 4);
    const auto rep = concentration_report(g, 1.0, &pi, 3.0 / n);
    const auto& t = row(rep, "triple_codegree");
    EXPECT_EQ(t.observed_min, 13.0);
    EXPECT_EQ(t.observed_max, 13.0);
    EXPECT_EQ(t.expectation, 16.0);
    EXPECT_TRUE(t.pass);
    EXPECT_EQ(t.samples, 560u);
    EXPECT_EQ(row(rep, "pair_codegree").observed_min, 91.0);
    EXPECT_EQ(row(rep, "degree").observed_max, 455.0);
    EXPECT_EQ(row(rep, "common_degree").observed_max, 364.0);  // C(14, 3)
    EXPECT_EQ(row(rep, "crossing_degree", 2).observed_min, 64.0);
    EXPECT_TRUE(row(rep, "crossing_degree", 2).pass);
    EXPECT_TRUE(rep.proposition_pass(4));
    EXPECT_TRUE(rep.proposition_pass(8));
    EXPECT_FALSE(concentration_report(g, 1.0, &pi, 2.9 / n).proposition_pass(4));
}

TEST(Concentration, EmptyHostFails) {
    const Hypergraph g(12, 4);
    const VertexPartition pi = turan_partition(12, 4);
    const auto rep = concentration_report(g, 0.5, &pi, 0.25);
    for (const auto& r : rep.rows) {
        EXPECT_EQ(r.observed_min, 0.0);
        EXPECT_FALSE(r.pass) << r.name;
    }
    for (int prop = 4; prop <= 8; ++prop) EXPECT_FALSE(rep.proposition_pass(prop));
}

TEST(Concentration, SmallClassNotApplicableAndErrors) {
    const std::size_t n = 100;
    std::vector<std::uint8_t> a(n, 0);
    for (std::size_t v = 0; v < n; ++v) a[v] = static_cast<std::uint8_t>(v < 1 ? 3 : v % 3);
    const VertexPartition pi(4, a);  // class 3 has one vertex < 100/80
    const Hypergraph g = sample_gknp(n, 4, 0.05, direct_seed(5));
    const auto rep = concentration_report(g, 0.05, &pi, 0.5);
    for (int c = 0; c < 3; ++c) EXPECT_FALSE(row(rep, "crossing_degree", c).applicable);
    EXPECT_TRUE(row(rep, "crossing_degree", 3).applicable);
    EXPECT_THROW(concentration_report(g, 0.0, nullptr, 0.25), InputError);
    EXPECT_THROW(concentration_report(g, 1.5, nullptr, 0.25), InputError);
    EXPECT_THROW(concentration_report(Hypergraph::complete(6, 3), 0.5, nullptr, 0.25), InputError);
}

TEST(Concentration, MatchesNaiveScan) {
    testgen::Rng rng(211);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = testgen::uniform(rng, 6, 12);
        const Hypergraph g = testgen::dense_hypergraph(rng, n, 4, 0.5);
        const VertexPartition pi = testgen::random_onto_partition(rng, n, 4);
        const auto rep = concentration_report(g, 0.5, &pi, 0.25);
        double tmin = 1e18, tmax = -1, pmin = 1e18, pmax = -1, cmin = 1e18, cmax = -1;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                double pc = 0, cd = 0;
                for (const Edge& e : g.edges()) pc += e.contains(u) && e.contains(v);
                for (const Edge& e : g.edges())
                    if (e.contains(u) && !e.contains(v) && g.contains(e.without(u).with(v))) ++cd;
                pmin = std::min(pmin, pc), pmax = std::max(pmax, pc);
                cmin = std::min(cmin, cd), cmax = std::max(cmax, cd);
                for (Vertex w = v + 1; w < n; ++w) {
                    double t = 0;
                    for (Vertex x = 0; x < n; ++x)
                        if (x != u && x != v && x != w && g.contains(Edge::of({u, v, w, x}))) ++t;
                    tmin = std::min(tmin, t), tmax = std::max(tmax, t);
                }
            }
        EXPECT_EQ(row(rep, "triple_codegree").observed_min, tmin);
        EXPECT_EQ(row(rep, "triple_codegree").observed_max, tmax);
        EXPECT_EQ(row(rep, "pair_codegree").observed_min, pmin);
        EXPECT_EQ(row(rep, "pair_codegree").observed_max, pmax);
        EXPECT_EQ(row(rep, "common_degree").observed_min, cmin);
        EXPECT_EQ(row(rep, "common_degree").observed_max, cmax);
        for (int c = 0; c < 4; ++c) {
            double lo = 1e18, hi = -1;
            for (Vertex v : pi.members(c)) {
                double d = 0;
                for (const Edge& e : g.edges()) d += e.contains(v) && is_crossing(e, pi);
                lo = std::min(lo, d), hi = std::max(hi, d);
            }
            EXPECT_EQ(row(rep, "crossing_degree", c).observed_min, lo);
            EXPECT_EQ(row(rep, "crossing_degree", c).observed_max, hi);
        }
    }
}

TEST(LowPairs, Examples) {
    const Hypergraph k16 = Hypergraph::complete(16, 4);
    const VertexPartition eq = turan_partition(16, 4);
    const auto full = low_pairs(k16, eq, 1.0, 0.35);
    EXPECT_DOUBLE_EQ(full.threshold, 44.8);
    EXPECT_TRUE(full.pairs.empty());
    EXPECT_EQ(oracle::common_crossing(k16, eq, 0, 1), 64u);
    const auto empty = low_pairs(Hypergraph(16, 4), eq, 1.0, 0.35);
    EXPECT_EQ(empty.pairs.size(), 6u);
    EXPECT_EQ(empty.max_degree, 3u);
    EXPECT_TRUE(low_pairs(Hypergraph(16, 4), eq, 1.0, 0.0).pairs.empty());
}

TEST(LowPairs, MatchesDefinitionAndMonotoneInAlpha) {
    testgen::Rng rng(223);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = testgen::uniform(rng, 8, 14);
        const Hypergraph g = testgen::dense_hypergraph(rng, n, 4, 0.7);
        const VertexPartition pi = testgen::random_onto_partition(rng, n, 4);
        const double a1 = 0.35 * static_cast<double>(testgen::uniform(rng, 0, 40)) / 10.0;
        const double a2 = a1 + 0.5;
        const auto lo = low_pairs(g, pi, 0.7, a1), hi = low_pairs(g, pi, 0.7, a2);
        std::vector<PairGraph::Pair> want;
        const auto a = pi.members(0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if (static_cast<double>(oracle::common_crossing(g, pi, a[i], a[j])) < lo.threshold)
                    want.emplace_back(a[i], a[j]);
        EXPECT_EQ(lo.pairs, PairGraph(n, want));
        for (const auto& [u, v] : lo.pairs.pairs()) EXPECT_TRUE(hi.pairs.contains(u, v));
    }
}

TEST(Lemma12, Examples) {
    const Hypergraph k10 = Hypergraph::complete(10, 4);
    std::vector<Vertex> all(10);
    for (Vertex v = 0; v < 10; ++v) all[v] = v;
    EXPECT_EQ(lemma12_count(k10, {}, 0.1, 1.0), 0u);
    EXPECT_EQ(lemma12_count(k10, all, 0.5, 1.0), 0u);    // threshold 10 >= 7
    EXPECT_EQ(lemma12_count(k10, all, 0.1, 1.0), 120u);  // threshold 2 < 7
    testgen::Rng rng(227);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = testgen::uniform(rng, 5, 11);
        const Hypergraph g = testgen::dense_hypergraph(rng, n, 4, 0.5);
        std::vector<Vertex> a;
        for (Vertex v = 0; v < n; ++v)
            if (rng() % 2) a.push_back(v);
        const double eps = 0.05 * static_cast<double>(testgen::uniform(rng, 0, 10));
        std::uint64_t want = 0;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                for (Vertex w = v + 1; w < n; ++w) {
                    std::size_t hits = 0;
                    for (Vertex x : a)
                        if (x != u && x != v && x != w && g.contains(Edge::of({u, v, w, x}))) ++hits;
                    want += static_cast<double>(hits) > 2 * eps * 0.5 * static_cast<double>(n);
                }
        EXPECT_EQ(lemma12_count(g, a, eps, 0.5), want);
    }
}

namespace {

void check_decomposition(const Hypergraph& g, const Hypergraph& f, const DecompositionReport& d) {
    EXPECT_EQ(oracle::decomposition_mismatch(g, f, d, to_double(d.constants.eps1)), "");
}

}  // namespace

TEST(Decomposition, Examples) {
    const auto k = PaperConstants::defaults();
    const Hypergraph g = Hypergraph::complete(8, 4);
    const VertexPartition pi = turan_partition(8, 4);
    const Hypergraph f = crossing_edges(g, pi).to_hypergraph();
    const auto d = decomposition(g, f, pi, 1.0, k);
    for (const auto& b : d.b) EXPECT_TRUE(b.empty());
    EXPECT_TRUE(d.m.empty());
    EXPECT_TRUE(d.degenerate_c);

    const Hypergraph one = build_hypergraph(8, 4, {{0, 1, 2, 4}});
    const auto d1 = decomposition(one, one, pi, 1.0, k);
    EXPECT_EQ(d1.b[0], std::vector<EdgeId>{0});
    EXPECT_TRUE(d1.m.empty());
    EXPECT_EQ(d1.l.size(), 1u);
    EXPECT_TRUE(d1.l.contains(0, 1));

    // B_3 largest: class 2 becomes A_1
    const Hypergraph three = build_hypergraph(8, 4, {{0, 4, 5, 6}});
    const auto d3 = decomposition(three, three, pi, 1.0, k);
    EXPECT_EQ(d3.relabeling[0], 2);
    EXPECT_EQ(d3.b[0].size(), 1u);

    EXPECT_THROW(decomposition(one, three, pi, 1.0, k), InputError);
}

TEST(Decomposition, InvariantsOnRandomTriples) {
    const auto k = PaperConstants::defaults();
    testgen::Rng rng(229);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = testgen::uniform(rng, 4, 14);
        const Hypergraph g = testgen::dense_hypergraph(rng, n, 4, 0.4);
        const Hypergraph f = testgen::random_subset(rng, g, 0.5);
        const VertexPartition pi = testgen::random_partition(rng, n, 4);
        check_decomposition(g, f, decomposition(g, f, pi, 0.4, k));
    }
}

TEST(Prop9, Examples) {
    const Hypergraph g = Hypergraph::complete(10, 4);
    const Vertex v = 0;
    const Hypergraph none(10, 3);
    const auto empty = prop9_sets(g, v, {1}, {Edge::of({0, 1, 2, 3})}, none);
    EXPECT_EQ(empty.k_size, 0u);
    EXPECT_TRUE(empty.g_set.empty());
    const auto one = prop9_sets(g, v, {1}, {Edge::of({0, 1, 2, 3})}, build_hypergraph(10, 3, {{4, 5, 6}}));
    EXPECT_EQ(one.k_size, 1u);
    ASSERT_EQ(one.g_set.size(), 1u);
    EXPECT_EQ(g.edge(one.g_set[0]), Edge::of({1, 4, 5, 6}));
    const auto meets = prop9_sets(g, v, {1}, {Edge::of({0, 1, 2, 3})}, build_hypergraph(10, 3, {{3, 5, 6}}));
    EXPECT_EQ(meets.k_size, 0u);
    // coverage violated, Q outside L(v)
    EXPECT_THROW(prop9_sets(g, v, {1, 7}, {Edge::of({0, 1, 2, 3})}, none), InputError);
    EXPECT_THROW(prop9_sets(g, v, {1}, {Edge::of({0, 1, 2, 3})}, build_hypergraph(10, 3, {{0, 5, 6}})), InputError);
    EXPECT_THROW(prop9_sets(g, v, {1}, {Edge::of({1, 2, 3, 4})}, none), InputError);
}

TEST(Lemma13, CrossingSetTrivialCase) {
    const auto k = PaperConstants::defaults();
    testgen::Rng rng(233);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = testgen::uniform(rng, 8, 14);
        const Hypergraph g = testgen::dense_hypergraph(rng, n, 4, 0.5);
        const VertexPartition pi = testgen::random_onto_partition(rng, n, 4);
        const Hypergraph f = crossing_edges(g, pi).to_hypergraph();
        const auto rep = lemma13_audit(g, f, pi, 0.5, k);
        EXPECT_EQ(rep.quantities.at("B1"), 0.0);
        EXPECT_TRUE(rep.line("conclusion_nonstrict")->holds);
        EXPECT_TRUE(rep.flags.at("m_disjoint_from_f"));
        EXPECT_TRUE(rep.flags.at("m_within_crossing"));
        for (const auto& l : rep.lines) EXPECT_TRUE(std::isfinite(l.lhs) && std::isfinite(l.rhs)) << l.name;
    }
    const Hypergraph empty(8, 4);
    const auto rep = lemma13_audit(empty, empty, turan_partition(8, 4), 0.5, k);
    // edge-derived quantities vanish; D = A_1 and every A_1 pair is a low pair
    const std::set<std::string> vertex_derived = {"n", "p", "c_threshold", "c1_threshold", "D", "low_pairs",
                                                  "low_pair_max_degree"};
    for (const auto& [name, value] : rep.quantities) {
        if (!vertex_derived.count(name)) EXPECT_EQ(value, 0.0) << name;
    }
    EXPECT_EQ(rep.quantities.at("D"), 2.0);
    EXPECT_EQ(rep.quantities.at("low_pairs"), 1.0);
}

TEST(Lemma13, RepairPipelineAndRejection) {
    const auto k = PaperConstants::defaults();
    const Hypergraph g = sample_gknp(24, 4, 0.4, derive_seed(9, 0));
    const auto tf = max_tfree_repair(g, derive_seed(9, 0), 2);
    const Hypergraph f = tf.witness_edges(g).to_hypergraph();
    const auto part = best_partition_for(f, CutMethod::Local, derive_seed(9, 0));
    ASSERT_TRUE(part.partition);
    const auto dec = decomposition(g, f, *part.partition, 0.4, k);
    check_decomposition(g, f, dec);
    const auto rep = lemma13_audit(g, f, dec);
    EXPECT_TRUE(rep.flags.at("m_disjoint_from_f"));
    for (const auto& l : rep.lines) EXPECT_TRUE(std::isfinite(l.lhs) && std::isfinite(l.rhs)) << l.name;

    const Hypergraph t = generalized_triangle(4);
    const Hypergraph host = Hypergraph::from_keys(7, 4, std::vector<std::uint64_t>(t.keys().begin(), t.keys().end()));
    try {
        lemma13_audit(host, host, turan_partition(7, 4), 0.5, k);
        FAIL() << "expected rejection";
    } catch (const NotTFreeError& err) {
        EXPECT_EQ(err.witness().sorted_edges(), (std::array<EdgeId, 3>{0, 1, 2}));
    }
}

TEST(Lemma14, CertifiedMaximumWithoutLowPairsGivesZero) {
    const auto k = PaperConstants::defaults();
    testgen::Rng rng(239);
    int zero_cases = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = testgen::uniform(rng, 6, 10);
        const Hypergraph g = testgen::dense_hypergraph(rng, n, 4, 0.6);
        const auto q = max_cut4_exact(g);
        ASSERT_TRUE(q.optimal);
        const auto rep = lemma14_gap(g, *q.partition, 0.6, k, q.value, true);
        EXPECT_EQ(rep.crossing, q.value);
        if (rep.low_pairs == 0) {
            EXPECT_EQ(rep.gap, 0.0);
            EXPECT_EQ(rep.verdict, GapVerdict::Consistent);
            ++zero_cases;
        }
    }
    const Hypergraph k8 = Hypergraph::complete(8, 4);
    const auto rep = lemma14_gap(k8, turan_partition(8, 4), 1.0, k, 16, true);
    EXPECT_EQ(rep.low_pairs, 0u);
    EXPECT_EQ(rep.gap, 0.0);
    // A lopsided partition leaves low pairs and a positive gap.
    const auto lop = lemma14_gap(k8, VertexPartition(4, {0, 0, 0, 0, 0, 1, 2, 3}), 1.0, k, 16, true);
    EXPECT_EQ(lop.crossing, 5u);
    EXPECT_GT(lop.gap, 0.0);
    EXPECT_EQ(verdict_name(GapVerdict::Inconclusive), "inconclusive");
    const auto lb = lemma14_gap(k8, VertexPartition(4, {0, 0, 0, 0, 0, 1, 2, 3}), 1.0, k, 5, false);
    EXPECT_EQ(lb.verdict, GapVerdict::Inconclusive);
}

TEST(Prop10, Examples) {
    const Hypergraph g = Hypergraph::complete(16, 4);
    const VertexPartition eq = turan_partition(16, 4);
    const Hypergraph f = crossing_edges(g, eq).to_hypergraph();
    const auto r = prop10_check(g, f, eq, 1.0, 0.01);
    EXPECT_EQ(r.f_size, 256u);
    EXPECT_NEAR(r.bound, (3.0 / 32.0 - 0.01) * 1820.0, 1e-9);
    EXPECT_TRUE(r.size_holds);
    EXPECT_TRUE(r.balanced);
    EXPECT_FALSE(prop10_check(g, Hypergraph(16, 4), eq, 1.0, 0.01).size_holds);
    EXPECT_TRUE(prop10_check(g, Hypergraph(16, 4), eq, 1.0, 3.0 / 32.0).size_holds);
    EXPECT_FALSE(prop10_check(g, f, VertexPartition(4, std::vector<std::uint8_t>(16, 0)), 1.0, 0.01).balanced);
}
