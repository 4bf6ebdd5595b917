#include <gtest/gtest.h>

#include <sstream>

#include "mantel/combinatorics.hpp"
#include "mantel/core_index.hpp"
#include "mantel/hypergraph.hpp"
#include "mantel/hypergraph_io.hpp"
#include "mantel/link_bitsets.hpp"
#include "mantel/motifs.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace mantel;

namespace {

Hypergraph paper_t() { return build_hypergraph(7, 4, {{0, 1, 2, 3}, {0, 1, 2, 4}, {3, 4, 5, 6}}); }

VertexPartition t_partition() { return VertexPartition::from_classes(7, {{0, 4}, {1, 5}, {2, 6}, {3}}); }

}  // namespace

TEST(Build, DeduplicatesAndCanonicalises) {
    const Hypergraph h = build_hypergraph(5, 3, {{0, 1, 2}, {2, 1, 0}});
    EXPECT_EQ(h.size(), 1u);
    EXPECT_EQ(h.edge(0), Edge::of({0, 1, 2}));
    EXPECT_EQ(paper_t().size(), 3u);
}

TEST(Build, RejectsBadEdgesWithIndex) {
    try {
        build_hypergraph(4, 4, {{0, 1, 2, 3}, {0, 1, 2, 5}});
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(e.item(), 1u);
    }
    EXPECT_THROW(build_hypergraph(6, 3, {{0, 1, 1}}), InputError);
    EXPECT_THROW(build_hypergraph(6, 3, {{0, 1}}), InputError);
    EXPECT_THROW(build_hypergraph(2, 3, {}), InputError);
    EXPECT_THROW(build_hypergraph(5, 1, {}), InputError);
}

TEST(Link, Examples) {
    EXPECT_EQ(link(Hypergraph::complete(7, 4), 0).size(), 20u);
    const Hypergraph l = link(paper_t(), 3);
    EXPECT_EQ(l.edges(), (std::vector<Edge>{Edge::of({0, 1, 2}), Edge::of({4, 5, 6})}));
    EXPECT_EQ(paper_t().degree(3), 2u);
    EXPECT_EQ(link(Hypergraph(6, 4), 2).size(), 0u);
}

TEST(Crossing, Examples) {
    const VertexPartition two = VertexPartition::from_classes(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
    EXPECT_EQ(crossing_edges(Hypergraph::complete(8, 4), two).size(), 16u);
    const Hypergraph t = paper_t();
    const EdgeSet c = crossing_edges(t, t_partition());
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.edge_at(0), Edge::of({0, 1, 2, 3}));
    EXPECT_EQ(c.edge_at(1), Edge::of({3, 4, 5, 6}));
    EXPECT_EQ(count_crossing(paper_t(), t_partition()), 2u);
    const VertexPartition empty_class = VertexPartition::from_classes(5, {{0, 1}, {2}, {3, 4}, {}});
    EXPECT_EQ(crossing_edges(Hypergraph::complete(5, 4), empty_class).size(), 0u);
    EXPECT_THROW(crossing_edges(paper_t(), VertexPartition(3, std::vector<std::uint8_t>(7, 0))), InputError);
}

TEST(Crossing, LinkAndDegrees) {
    const Hypergraph k16 = Hypergraph::complete(16, 4);
    const VertexPartition eq = turan_partition(16, 4);
    EXPECT_EQ(crossing_link(k16, 0, eq).size(), 64u);
    EXPECT_EQ(crossing_link(paper_t(), 3, t_partition()).size(), 2u);
    EXPECT_EQ(common_crossing_degree(k16, 0, 1, eq), 64u);
    EXPECT_EQ(common_degree(k16, 0, 1), binomial(14, 3));
    EXPECT_EQ(common_degree(paper_t(), 0, 4), 0u);
    EXPECT_THROW(common_degree(paper_t(), 2, 2), InputError);
    // every edge through 0 also holds 1, so no crossing edge reaches 0
    const Hypergraph h = build_hypergraph(6, 4, {{0, 1, 2, 3}, {0, 1, 4, 5}, {2, 3, 4, 5}});
    const VertexPartition pi = VertexPartition::from_classes(6, {{0, 1}, {2}, {3, 4}, {5}});
    EXPECT_EQ(crossing_link(h, 0, pi).size(), 0u);
}

TEST(CoNeighborhood, Examples) {
    const Hypergraph k = Hypergraph::complete(9, 4);
    EXPECT_EQ(co_neighborhood(k, Edge::of({1, 4, 7})).size(), 6u);
    EXPECT_EQ(co_neighborhood(k, Edge::of({2, 5})).size(), binomial(7, 2));
    EXPECT_EQ(co_neighborhood(paper_t(), Edge::of({4, 5, 6})), std::vector<Edge>{Edge::of({3})});
    EXPECT_THROW(co_neighborhood(k, Edge::of({1})), InputError);
}

TEST(CoreIndex, MatchesCoNeighborhoods) {
    testgen::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = static_cast<int>(testgen::uniform(rng, 2, 4));
        const Hypergraph h = testgen::random_hypergraph(rng, testgen::uniform(rng, k, 11), k, testgen::uniform(rng, 0, 60));
        const CoreIndex cores(h);
        const PairIndex pairs(h);
        std::size_t total = 0;
        for (std::size_t i = 0; i < cores.num_cores(); ++i) {
            const auto comp = cores.completions(i);
            total += comp.size();
            std::vector<Edge> expect;
            for (Vertex x : comp) expect.push_back(Edge::of({x}));
            EXPECT_EQ(co_neighborhood(h, cores.core(i)), expect);
        }
        EXPECT_EQ(total, h.size() * static_cast<std::size_t>(k));
        for (Vertex u = 0; u < h.num_vertices(); ++u)
            for (Vertex v = u + 1; v < h.num_vertices(); ++v) {
                std::size_t naive = 0;
                for (EdgeId id = 0; id < h.size(); ++id) naive += h.edge(id).contains(u) && h.edge(id).contains(v);
                EXPECT_EQ(pairs.edges_with(u, v).size(), naive);
            }
    }
}

TEST(Properties, HandshakeAndCrossingSums) {
    testgen::Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = static_cast<int>(testgen::uniform(rng, 2, 4));
        const std::size_t n = testgen::uniform(rng, k, 12);
        const Hypergraph g = testgen::random_hypergraph(rng, n, k, testgen::uniform(rng, 0, 80));
        const VertexPartition pi = testgen::random_partition(rng, n, k);
        std::size_t deg = 0, cdeg = 0;
        for (Vertex v = 0; v < n; ++v) {
            deg += g.degree(v);
            const std::size_t dv = crossing_link(g, v, pi).size();
            EXPECT_LE(dv, g.degree(v));
            cdeg += dv;
        }
        EXPECT_EQ(deg, static_cast<std::size_t>(k) * g.size());
        EXPECT_EQ(cdeg, static_cast<std::size_t>(k) * crossing_edges(g, pi).size());
        EXPECT_EQ(count_crossing(g, pi), crossing_edges(g, pi).size());
        std::size_t pair_sum = 0;
        const PairIndex pairs(g);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) pair_sum += pairs.edges_with(u, v).size();
        EXPECT_EQ(pair_sum, static_cast<std::size_t>(k * (k - 1) / 2) * g.size());
    }
}

TEST(Properties, CommonDegreesAgreeWithBitRowsAndOracle) {
    testgen::Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = testgen::uniform(rng, 4, 12);
        const Hypergraph g = testgen::dense_hypergraph(rng, n, 4, 0.5);
        const VertexPartition pi = testgen::random_partition(rng, n, 4);
        const BitRows rows = link_rows(g);
        const CrossingLinkRows cross = crossing_link_rows(g, pi, 0);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                const Hypergraph lu = link(g, u), lv = link(g, v);
                std::size_t naive = 0;
                for (EdgeId id = 0; id < lu.size(); ++id) naive += lv.contains(lu.edge(id));
                EXPECT_EQ(common_degree(g, u, v), naive);
                EXPECT_EQ(rows.intersection(u, v), naive);
                if (pi.class_of(u) == 0 && pi.class_of(v) == 0) {
                    const std::size_t oc = oracle::common_crossing(g, pi, u, v);
                    EXPECT_EQ(common_crossing_degree(g, u, v, pi), oc);
                    EXPECT_EQ(cross.rows.intersection(static_cast<std::size_t>(cross.row_of[u]),
                                                      static_cast<std::size_t>(cross.row_of[v])),
                              oc);
                }
            }
    }
}

TEST(Shadow, Examples) {
    EXPECT_EQ(shadow_graph(build_hypergraph(4, 4, {{0, 1, 2, 3}})).size(), 6u);
    EXPECT_EQ(shadow_graph(build_hypergraph(7, 4, {{0, 1, 2, 3}, {3, 4, 5, 6}})).size(), 12u);
    EXPECT_TRUE(shadow_graph(Hypergraph(5, 3)).empty());
    const Hypergraph t = turan_hypergraph(10, 4);
    const VertexPartition pi = turan_partition(10, 4);
    const PairGraph s = shadow_graph(t);
    for (Vertex u = 0; u < 10; ++u)
        for (Vertex v = u + 1; v < 10; ++v) EXPECT_EQ(s.contains(u, v), pi.class_of(u) != pi.class_of(v));
}

TEST(Bracket, Examples) {
    const Hypergraph t = paper_t();
    const EdgeSet one = restrict_bracket(t, {Edge::of({3})}, {Edge::of({4, 5, 6})});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one.edge_at(0), Edge::of({3, 4, 5, 6}));
    EXPECT_TRUE(restrict_bracket(t, {Edge::of({3})}, {}).empty());
    EXPECT_THROW(restrict_bracket(t, {Edge::of({3})}, {Edge::of({4, 5})}), InputError);

    testgen::Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const Hypergraph g = testgen::random_hypergraph(rng, 9, 4, 40);
        for (Vertex v = 0; v < 9; ++v) {
            const EdgeSet s = restrict_bracket(g, {Edge::of({v})}, link(g, v).edges());
            EXPECT_EQ(std::vector<EdgeId>(s.ids().begin(), s.ids().end()),
                      std::vector<EdgeId>(g.incident(v).begin(), g.incident(v).end()));
        }
    }
}

TEST(Balance, Examples) {
    EXPECT_TRUE(is_balanced(turan_partition(16, 4), 16));
    EXPECT_FALSE(is_balanced(VertexPartition::from_classes(16, {{0, 1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}, {13, 14, 15}}), 16));
    testgen::Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) EXPECT_FALSE(is_balanced(testgen::random_partition(rng, 14, 4), 14));
}

TEST(Turan, SizesAndFreeness) {
    EXPECT_EQ(turan_hypergraph(4, 2).size(), 4u);
    EXPECT_EQ(turan_hypergraph(7, 4).size(), 8u);
    EXPECT_EQ(turan_hypergraph(5, 3).size(), 4u);
    EXPECT_EQ(turan_partition(7, 4).class_sizes(), (std::vector<std::size_t>{2, 2, 2, 1}));
    for (int r = 2; r <= 4; ++r)
        for (std::size_t n = static_cast<std::size_t>(r); n <= 12; ++n) {
            const Hypergraph t = turan_hypergraph(n, r);
            EXPECT_EQ(count_T(t), 0u);
            EXPECT_EQ(crossing_edges(Hypergraph::complete(n, r), turan_partition(n, r)).size(), t.size());
        }
}

TEST(Partition, RelabelAndValidate) {
    const VertexPartition p = VertexPartition::from_classes(5, {{0, 3}, {1}, {2, 4}});
    const std::array<int, 3> perm{2, 0, 1};
    const VertexPartition q = p.relabeled(perm);
    for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(perm[static_cast<std::size_t>(q.class_of(v))], p.class_of(v));
    EXPECT_THROW(VertexPartition::from_classes(3, {{0, 1}, {1, 2}}), InputError);
    EXPECT_THROW(VertexPartition::from_classes(3, {{0}, {1}}), InputError);
    EXPECT_THROW(VertexPartition(2, {0, 2}), InputError);
}

TEST(PairGraphs, Basics) {
    const PairGraph g(5, {{3, 1}, {1, 3}, {0, 4}, {1, 2}});
    EXPECT_EQ(g.size(), 3u);
    EXPECT_TRUE(g.contains(3, 1));
    EXPECT_EQ(g.degree(1), 2u);
    EXPECT_THROW(PairGraph(3, {{1, 1}}), InputError);
    std::vector<bool> keep{true, true, true, false, false};
    EXPECT_EQ(g.induced(keep).size(), 1u);
}

TEST(TextFormat, RoundTripIsByteIdentical) {
    testgen::Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = static_cast<int>(testgen::uniform(rng, 2, 4));
        const Hypergraph h = testgen::random_hypergraph(rng, testgen::uniform(rng, k, 40), k, testgen::uniform(rng, 0, 50));
        const std::string text = to_text(h);
        const Hypergraph back = parse_text(text);
        EXPECT_EQ(back, h);
        EXPECT_EQ(to_text(back), text);
    }
    EXPECT_EQ(to_text(paper_t()), "7 4 3\n0 1 2 3\n0 1 2 4\n3 4 5 6\n");
}

TEST(TextFormat, CanonicalisesAndReportsLines) {
    EXPECT_EQ(to_text(parse_text("5 3 2\n4 2 0\n1 0 2\n")), "5 3 2\n0 1 2\n0 2 4\n");
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_text(text);
        } catch (const InputError& e) {
            return e.item().value_or(0);
        }
        return 0;
    };
    EXPECT_EQ(line_of("5 3 2\n0 1 2\n0 1 9\n"), 3u);
    EXPECT_EQ(line_of("5 3 2\n0 1 2\n0 1\n"), 3u);
    EXPECT_EQ(line_of("5 3 3\n0 1 2\n0 1 3\n"), 1u);
    EXPECT_EQ(line_of("5 3 1\n0 x 2\n"), 2u);
    EXPECT_EQ(line_of(""), 1u);
}
