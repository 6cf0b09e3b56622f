#include <gtest/gtest.h>

#include "support.hpp"

using namespace bcmtest;

TEST(Timing, SlowTimingOfFig1) {
    Scenario s = scenario_file("fig1.scn");
    bcm::Run run = run_scenario(s, {});
    BoundsGraph gb = basic_graph(run);
    std::size_t b1 = gb.at(run.parse_address("B@1"));
    Timing t = slow_timing(gb, b1);
    EXPECT_TRUE(is_valid_timing(gb, t));
    std::size_t a1 = gb.at(run.parse_address("A@1"));
    EXPECT_EQ(*t[b1] - *t[a1], 2);
    EXPECT_EQ(*t[gb.at(run.parse_address("C@0"))], 0);
}

TEST(Timing, RunByTimingReplays) {
    Scenario s = scenario_file("fig1.scn");
    bcm::Run run = run_scenario(s, {});
    BoundsGraph gb = basic_graph(run);
    Timing t(gb.size());
    for (std::size_t v = 0; v < gb.size(); ++v)
        t[v] = run.node(gb.vertex(v).node).time;
    bcm::Run same = run_by_timing(run, gb, t);
    EXPECT_TRUE(validate(same).empty());
    // Nothing is dropped, so the replay ends at the last timed node.
    EXPECT_EQ(same.horizon, 8);
    EXPECT_EQ(write_trace(same, "x"), write_trace(execute(s.net, s.externals, {}, 8), "x"));
}

TEST(Timing, RunByTimingRejectsBadInput) {
    Scenario s = scenario_file("fig1.scn");
    bcm::Run run = run_scenario(s, {});
    BoundsGraph gb = basic_graph(run);
    Timing t(gb.size());
    t[gb.at(run.parse_address("A@1"))] = 5;
    EXPECT_THROW(run_by_timing(run, gb, t), Error);  // not closed under predecessors
    for (std::size_t v = 0; v < gb.size(); ++v)
        t[v] = run.node(gb.vertex(v).node).time;
    t[gb.at(run.parse_address("B@1"))] = 3;  // faster than L
    EXPECT_FALSE(is_valid_timing(gb, t));
    EXPECT_THROW(run_by_timing(run, gb, t), Error);
}

TEST(Timing, FastTimingGammaShiftsTheReachableSide) {
    Scenario s = scenario_file("fig3.scn");
    bcm::Run run = run_scenario(s, {});
    NodeRef b2 = run.parse_address("B@2");
    NodeRef c1 = run.parse_address("C@1");
    FastTiming f0 = fast_timing(run, b2, c1, 0), f5 = fast_timing(run, b2, c1, 5);
    for (std::size_t v = 0; v < f0.graph.size(); ++v) {
        if (f0.part.reach[v])
            EXPECT_EQ(*f5.times[v], *f0.times[v] + 5);
        else
            EXPECT_EQ(f5.times[v], f0.times[v]);
    }
    EXPECT_TRUE(is_valid_timing(f0.graph, f0.times));
}


// Every valid timing of a p-closed domain yields a legal run in which the
// domain's nodes reappear with the same states at exactly the given times.
TEST(TimingProperty, RunByTimingIsSound) {
    Gen g(51);
    int checked = 0;
    for (int round = 0; round < 300 && checked < 150; ++round) {
        auto net = random_network(g);
        bcm::Run run = random_run(g, net);
        BoundsGraph gb = basic_graph(run);
        auto in = random_domain(g, run, gb);
        ASSERT_TRUE(is_p_closed(gb, in));
        Timing t = random_timing(g, gb, in);
        if (!is_valid_timing(gb, t))
            continue;
        bcm::Run r2;
        try {
            r2 = run_by_timing(run, gb, t);
        } catch (const Error& e) {
            ASSERT_EQ(e.kind(), ErrorKind::invalid_timing);
            continue;
        }
        EXPECT_TRUE(validate(r2).empty());
        // Initial nodes stay at time 0 whatever the timing says.
        std::size_t timed = 0;
        for (std::size_t v = 0; v < gb.size(); ++v) {
            if (!t[v] || gb.vertex(v).node.index == 0)
                continue;
            ++timed;
            auto n = r2.find(run.node(gb.vertex(v).node).digest);
            ASSERT_TRUE(n);
            EXPECT_EQ(r2.node(*n).time, *t[v]);
        }
        EXPECT_EQ(r2.node_count(), timed + net->size());
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(TimingProperty, SlowTimingIsValidAndTight) {
    Gen g(52);
    for (int round = 0; round < 150; ++round) {
        auto net = random_network(g);
        bcm::Run run = random_run(g, net);
        BoundsGraph gb = basic_graph(run);
        NodeRef s = g.pick(run.nodes());
        std::size_t sv = gb.at(s);
        Timing t = slow_timing(gb, sv);
        EXPECT_TRUE(is_valid_timing(gb, t));
        auto all = all_longest(gb);
        for (std::size_t v = 0; v < gb.size(); ++v)
            if (t[v] && gb.vertex(v).node.index > 0)
                EXPECT_EQ(*t[sv] - *t[v], *all[v][sv]);
    }
}

// The fast run keeps sigma's local state, replays the past at T_gamma and
// separates the two sides of the partition by more than gamma.
TEST(TimingProperty, FastRunProperties) {
    Gen g(53);
    int checked = 0;
    for (int round = 0; round < 200; ++round) {
        auto net = random_network(g);
        bcm::Run run = random_run(g, net);
        auto sig = non_initial(run);
        if (sig.empty())
            continue;
        NodeRef sigma = g.pick(sig);
        std::vector<NodeRef> src;
        for (NodeRef r : past(run, sigma))
            if (r.index > 0)
                src.push_back(r);
        GeneralNode theta = g.pick(recognized_nodes(run, sigma, 3));
        Time gamma = g.pick(std::vector<Time>{0, 1, 5});
        GeneralNode n = normalize(run, theta, sigma);
        FastTiming ft = fast_timing(run, sigma, n.base, gamma);
        Time latest = 0;
        for (auto& t : ft.times)
            latest = std::max(latest, *t);
        FastRun fr = fast_run(run, sigma, theta, gamma, latest + 3 * net->max_upper());
        EXPECT_TRUE(validate(fr.run).empty());
        EXPECT_TRUE(fr.run.find(run.node(sigma).digest));
        const BoundsGraph& ge = fr.timing.graph;
        for (std::size_t v = 0; v < ge.size(); ++v) {
            if (ge.vertex(v).kind != VertexKind::basic || ge.vertex(v).node.index == 0)
                continue;
            auto m = fr.run.find(run.node(ge.vertex(v).node).digest);
            ASSERT_TRUE(m);
            EXPECT_EQ(fr.run.node(*m).time, *fr.timing.times[v]);
        }
        for (std::size_t a : fr.timing.part.v_no)
            for (std::size_t b : fr.timing.part.v_yes)
                EXPECT_LT(*fr.timing.times[a] + gamma, *fr.timing.times[b]);
        ++checked;
    }
    EXPECT_GT(checked, 100);
}
