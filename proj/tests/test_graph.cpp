#include <gtest/gtest.h>

#include "support.hpp"

using namespace bcmtest;

TEST(BoundsGraph, ParallelEdgesKeepTheHeaviest) {
    BoundsGraph g;
    auto a = g.add_basic({0, 1}), b = g.add_basic({1, 1});
    g.add_edge(a, b, 2, EdgeKind::lower);
    g.add_edge(a, b, 1, EdgeKind::successor);
    g.add_edge(a, b, 3, EdgeKind::successor);
    EXPECT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.edge(a, b)->weight, 3);
    EXPECT_EQ(g.add_basic({0, 1}), a);
}

TEST(BoundsGraph, Fig1Basic) {
    Scenario s = scenario_file("fig1.scn");
    bcm::Run run = run_scenario(s, {});
    BoundsGraph g = basic_graph(run);
    EXPECT_EQ(g.size(), run.node_count());
    std::size_t c1 = g.at(run.parse_address("C@1")), a1 = g.at(run.parse_address("A@1")),
                b1 = g.at(run.parse_address("B@1"));
    EXPECT_EQ(g.edge(c1, a1)->weight, 1);
    EXPECT_EQ(g.edge(a1, c1)->weight, -3);
    EXPECT_EQ(g.edge(c1, b1)->weight, 5);
    EXPECT_EQ(g.edge(b1, c1)->weight, -7);
    LongestPaths lp = longest_from(g, a1);
    EXPECT_EQ(lp.dist[b1], 2);
    EXPECT_EQ(g.path_weight(lp.path(b1)), 2);
    EXPECT_EQ(lp.path(b1), (VertexPath{a1, c1, b1}));
    LongestPaths back = longest_to(g, b1);
    EXPECT_EQ(back.dist[a1], 2);
    EXPECT_EQ(back.path(a1), (VertexPath{a1, c1, b1}));
}

TEST(BoundsGraph, ExtendedHasAuxiliaryVertices) {
    Scenario s = scenario_file("fig3.scn");
    bcm::Run run = run_scenario(s, {});
    NodeRef b2 = run.parse_address("B@2");
    BoundsGraph ge = extended_graph(run, b2);
    for (ProcId p = 0; p < s.net->size(); ++p)
        ASSERT_TRUE(ge.find_aux(p));
    std::string dot = to_dot(ge, run);
    EXPECT_NE(dot.find("psi_A"), std::string::npos);
    EXPECT_NE(dot.find("\"C@1\" -> \"psi_C\" [label=\"1\"]"), std::string::npos);
    // C's message to A is not received in the past of B@2.
    auto* e = ge.edge(*ge.find_aux(s.net->id("A")), ge.at(run.parse_address("C@1")));
    ASSERT_TRUE(e);
    EXPECT_EQ(e->weight, -2);
    EXPECT_EQ(e->kind, EdgeKind::unreceived);
    // Every channel (i, j) yields psi_j -> psi_i.
    auto* ac = ge.edge(*ge.find_aux(s.net->id("B")), *ge.find_aux(s.net->id("D")));
    ASSERT_TRUE(ac);
    EXPECT_EQ(ac->weight, -5);
    EXPECT_FALSE(ge.find(run.parse_address("A@1")));
    EXPECT_EQ(to_dot(ge, run), dot);
}

TEST(BoundsGraph, LocalGraphIsThePast) {
    Scenario s = scenario_file("fig3.scn");
    bcm::Run run = run_scenario(s, {});
    NodeRef b2 = run.parse_address("B@2");
    BoundsGraph gl = local_graph(run, b2);
    EXPECT_EQ(gl.size(), past(run, b2).size());
}

TEST(BoundsGraph, PositiveCycleIsReported) {
    BoundsGraph g;
    auto a = g.add_basic({0, 1}), b = g.add_basic({1, 1});
    g.add_edge(a, b, 2, EdgeKind::lower);
    g.add_edge(b, a, -1, EdgeKind::upper);
    EXPECT_TRUE(has_positive_cycle(g));
    EXPECT_THROW(longest_from(g, a), Error);
}

TEST(BoundsGraph, Partition) {
    BoundsGraph g;
    auto a = g.add_basic({0, 1}), b = g.add_basic({1, 1}), c = g.add_basic({2, 1});
    auto x = g.add_aux(0), y = g.add_aux(1);
    g.add_edge(a, b, 1, EdgeKind::lower);
    g.add_edge(a, x, 1, EdgeKind::boundary);
    g.add_edge(y, c, -2, EdgeKind::unreceived);
    Partition p = partition(g, a);
    EXPECT_EQ(p.v_yes, (std::vector<std::size_t>{a, b}));
    EXPECT_EQ(p.v_no, (std::vector<std::size_t>{c}));
    EXPECT_EQ(p.a_yes, (std::vector<std::size_t>{x}));
    EXPECT_EQ(p.a_no, (std::vector<std::size_t>{y}));
}

// Legal runs never produce positive cycles; Bellman-Ford agrees with
// Floyd-Warshall and, on small graphs, with exhaustive simple paths.
TEST(GraphProperty, LongestPathsAgree) {
    Gen g(31);
    int brute = 0;
    for (int round = 0; round < 120; ++round) {
        auto net = random_network(g);
        bcm::Run run = random_run(g, net);
        auto sig = non_initial(run);
        if (sig.empty())
            continue;
        NodeRef sigma = g.pick(sig);
        for (const BoundsGraph& gr : {basic_graph(run), extended_graph(run, sigma)}) {
            ASSERT_FALSE(has_positive_cycle(gr));
            auto all = all_longest(gr);
            std::size_t src = g.uniform(0, gr.size() - 1);
            LongestPaths from = longest_from(gr, src), to = longest_to(gr, src);
            for (std::size_t v = 0; v < gr.size(); ++v) {
                EXPECT_EQ(from.dist[v], all[src][v]);
                EXPECT_EQ(to.dist[v], all[v][src]);
                if (from.dist[v]) {
                    VertexPath p = from.path(v);
                    EXPECT_EQ(p.front(), src);
                    EXPECT_EQ(p.back(), v);
                    EXPECT_EQ(gr.path_weight(p), *from.dist[v]);
                }
            }
            if (gr.size() <= 12) {
                for (std::size_t v = 0; v < gr.size(); ++v)
                    EXPECT_EQ(from.dist[v], brute_longest(gr, src, v));
                ++brute;
            }
        }
    }
    EXPECT_GT(brute, 20);
}

// Basic-graph distances bound the actual time differences in the run.
TEST(GraphProperty, DistancesAreLowerBoundsOnTime) {
    Gen g(32);
    for (int round = 0; round < 100; ++round) {
        auto net = random_network(g);
        bcm::Run run = random_run(g, net);
        BoundsGraph gb = basic_graph(run);
        auto all = all_longest(gb);
        for (std::size_t a = 0; a < gb.size(); ++a)
            for (std::size_t b = 0; b < gb.size(); ++b)
                if (all[a][b])
                    EXPECT_GE(run.node(gb.vertex(b).node).time - run.node(gb.vertex(a).node).time, *all[a][b]);
    }
}
