#include <gtest/gtest.h>

#include "support.hpp"

using namespace bcmtest;

namespace {

struct Fig2 : ::testing::Test {
    Scenario s = scenario_file("fig2.scn");
    bcm::Run run = run_scenario(s, {});
    GeneralNode at(const char* t) { return parse_general(run, t); }
    Path path(const char* t) { return s.net->parse_path(t); }
};

} // namespace

TEST_F(Fig2, ForkAndZigzagWeights) {
    Fork f1{at("C@1"), path("C/D"), path("C/A")};
    Fork f2{at("E@1"), path("E/B"), path("E/D")};
    EXPECT_EQ(fork_weight(*s.net, f1), 6 - 2);
    EXPECT_EQ(fork_weight(*s.net, f2), 3 - 2);
    Zigzag z{{f1, f2}, {Join::separated}};
    EXPECT_EQ(zigzag_weight(*s.net, z), 6);
    EXPECT_TRUE(validate_zigzag(run, z, at("C@1/A"), at("E@1/B")));
    z.joins[0] = Join::joined;
    EXPECT_EQ(zigzag_weight(*s.net, z), 5);
    Check c = validate_zigzag(run, z, at("C@1/A"), at("E@1/B"));
    EXPECT_FALSE(c);
    EXPECT_NE(c.reason.find("joined"), std::string::npos);
}

TEST_F(Fig2, InvisibleAtB) {
    Zigzag z{{{at("C@1"), path("C/D"), path("C/A")}, {at("E@1"), path("E/B"), path("E/D")}}, {Join::separated}};
    EXPECT_FALSE(is_visible(run, run.parse_address("B@1"), z));
}

TEST_F(Fig2, LongestPathBecomesAZigzag) {
    BoundsGraph gb = basic_graph(run);
    GeneralNode from = at("C@1/A"), to = at("E@1/B");
    LongestPaths lp = longest_from(gb, gb.at(basic(run, from)));
    VertexPath p = lp.path(gb.at(basic(run, to)));
    EXPECT_EQ(gb.path_weight(p), 6);
    Zigzag z = zigzag_from_path(run, gb, p, from, to);
    EXPECT_EQ(zigzag_weight(*s.net, z), 6);
    EXPECT_TRUE(validate_zigzag(run, z, from, to));
    Zigzag small = simplify(z);
    EXPECT_EQ(zigzag_weight(*s.net, small), 6);
    EXPECT_TRUE(validate_zigzag(run, small, from, to));
    EXPECT_EQ(small.forks.size(), 2u);
}

TEST_F(Fig2, TransplantFollowsLocalStates) {
    Zigzag z{{{at("C@1"), path("C/D"), path("C/A")}}, {}};
    Schedule early;
    early.policy = Policy::earliest;
    bcm::Run other = run_scenario(s, early);
    auto moved = transplant(run, other, z);
    ASSERT_TRUE(moved);
    EXPECT_TRUE(validate_zigzag(other, *moved, parse_general(other, "C@1/A"), parse_general(other, "C@1/D")));
}

TEST(Zigzag, TrivialForkHasWeightZero) {
    Network n;
    n.add_process("A");
    Fork f = trivial_fork({{0, 1}, {0}});
    EXPECT_EQ(fork_weight(n, f), 0);
    EXPECT_EQ(head_of(f), tail_of(f));
}

// Sufficiency: every zigzag extracted from a basic-graph path is realized
// and time(to) - time(from) is at least its weight.
TEST(ZigzagProperty, PathZigzagsAreSufficient) {
    Gen g(41);
    int checked = 0;
    for (int round = 0; round < 200; ++round) {
        auto net = random_network(g);
        bcm::Run run = random_run(g, net);
        auto nodes = non_initial(run);
        if (nodes.size() < 2)
            continue;
        BoundsGraph gb = basic_graph(run);
        NodeRef a = g.pick(nodes), b = g.pick(nodes);
        LongestPaths lp = longest_from(gb, gb.at(a));
        if (!lp.dist[gb.at(b)])
            continue;
        VertexPath p = lp.path(gb.at(b));
        Zigzag z = zigzag_from_path(run, gb, p, singleton(a), singleton(b));
        EXPECT_EQ(zigzag_weight(*net, z), gb.path_weight(p));
        EXPECT_TRUE(validate_zigzag(run, z, singleton(a), singleton(b)));
        EXPECT_GE(run.node(b).time - run.node(a).time, zigzag_weight(*net, z));
        Zigzag s = simplify(z);
        EXPECT_EQ(zigzag_weight(*net, s), zigzag_weight(*net, z));
        EXPECT_TRUE(validate_zigzag(run, s, singleton(a), singleton(b)));
        EXPECT_LE(s.forks.size(), z.forks.size());
        ++checked;
    }
    EXPECT_GT(checked, 100);
}
