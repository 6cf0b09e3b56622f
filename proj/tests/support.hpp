#pragma once

#include <bcm/knowledge.hpp>
#include <bcm/oracle.hpp>
#include <bcm/scenario.hpp>

#include <functional>
#include <random>
#include <set>

namespace bcmtest {

using namespace bcm;

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
    template <class T> const T& pick(const std::vector<T>& v) { return v.at(uniform(0, (long long)v.size() - 1)); }
};

struct NetOptions {
    int min_procs = 2, max_procs = 4;
    double density = 0.45;
    int max_lower = 3, max_spread = 3;
    bool acyclic = false;
};

inline std::shared_ptr<Network> random_network(Gen& g, const NetOptions& o = {}) {
    auto net = std::make_shared<Network>();
    int n = (int)g.uniform(o.min_procs, o.max_procs);
    for (int i = 0; i < n; ++i)
        net->add_process(std::string(1, char('A' + i)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || (o.acyclic && j < i) || !g.coin(o.density))
                continue;
            Time l = g.uniform(1, o.max_lower);
            net->add_channel(i, j, l, l + g.uniform(0, o.max_spread));
        }
    return net;
}

struct RunOptions {
    int max_externals = 3;
    Time latest_external = 4;
    Time horizon = 10;
};

inline std::vector<External> random_externals(Gen& g, const Network& net, const RunOptions& o = {}) {
    std::vector<External> ext;
    int k = (int)g.uniform(1, o.max_externals);
    for (int i = 0; i < k; ++i)
        ext.push_back({"e" + std::to_string(i), (ProcId)g.uniform(0, net.size() - 1), g.uniform(1, o.latest_external)});
    return ext;
}

inline Run random_run(Gen& g, std::shared_ptr<const Network> net, const RunOptions& o = {}) {
    Schedule s;
    s.policy = Policy::random;
    s.seed = g.rng();
    return execute(net, random_externals(g, *net, o), s, o.horizon);
}

// Reflexive-transitive closure of successor and message edges, by BFS.
inline std::set<std::pair<NodeRef, NodeRef>> closure(const Run& run) {
    std::map<NodeRef, std::vector<NodeRef>> adj;
    for (auto& line : run.lines)
        for (std::size_t k = 1; k < line.size(); ++k)
            adj[line[k - 1].ref].push_back(line[k].ref);
    for (auto& m : run.messages)
        if (m.receiver)
            adj[m.sender].push_back(*m.receiver);
    std::set<std::pair<NodeRef, NodeRef>> out;
    for (NodeRef a : run.nodes()) {
        std::vector<NodeRef> stack{a};
        std::set<NodeRef> seen{a};
        while (!stack.empty()) {
            NodeRef v = stack.back();
            stack.pop_back();
            out.insert({a, v});
            for (NodeRef w : adj[v])
                if (seen.insert(w).second)
                    stack.push_back(w);
        }
    }
    return out;
}

// All-pairs longest paths by Floyd-Warshall over (max, +).
inline std::vector<std::vector<std::optional<Weight>>> all_longest(const BoundsGraph& g) {
    std::size_t n = g.size();
    std::vector<std::vector<std::optional<Weight>>> d(n, std::vector<std::optional<Weight>>(n));
    for (std::size_t v = 0; v < n; ++v)
        d[v][v] = 0;
    for (const Edge& e : g.edges())
        if (!d[e.from][e.to] || *d[e.from][e.to] < e.weight)
            d[e.from][e.to] = e.weight;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!d[i][k])
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (d[k][j] && (!d[i][j] || *d[i][j] < *d[i][k] + *d[k][j]))
                    d[i][j] = *d[i][k] + *d[k][j];
        }
    return d;
}

// Longest simple path by exhaustive search; only for small graphs.
inline std::optional<Weight> brute_longest(const BoundsGraph& g, std::size_t from, std::size_t to) {
    std::optional<Weight> best;
    std::vector<char> on(g.size(), 0);
    std::function<void(std::size_t, Weight)> go = [&](std::size_t v, Weight w) {
        if (v == to) {
            if (!best || w > *best)
                best = w;
        }
        on[v] = 1;
        for (std::size_t id : g.out_edges(v)) {
            const Edge& e = g.edges()[id];
            if (!on[e.to])
                go(e.to, w + e.weight);
        }
        on[v] = 0;
    };
    go(from, 0);
    return best;
}

// Every general node with a non-initial base at sigma's past, relayed along
// paths of at most max_len processes.
inline std::vector<GeneralNode> recognized_nodes(const Run& run, NodeRef sigma, std::size_t max_len) {
    std::vector<GeneralNode> out;
    const Network& net = run.network();
    for (NodeRef b : past(run, sigma)) {
        if (b.index == 0)
            continue;
        std::vector<Path> frontier{{b.proc}};
        while (!frontier.empty()) {
            Path p = frontier.back();
            frontier.pop_back();
            out.push_back({b, p});
            if (p.size() >= max_len)
                continue;
            for (ProcId q : net.out(p.back())) {
                Path e = p;
                e.push_back(q);
                frontier.push_back(e);
            }
        }
    }
    return out;
}

// A random p-closed domain: the slow-timing domain of a random node, or a
// random predecessor-closed subset grown from the initial nodes.
inline std::vector<char> random_domain(Gen& g, const bcm::Run& run, const BoundsGraph& gb) {
    if (g.coin())
        return reaching(gb, gb.at(g.pick(run.nodes())));
    std::vector<char> in(gb.size(), 0);
    for (std::size_t v = 0; v < gb.size(); ++v)
        if (gb.vertex(v).node.index == 0)
            in[v] = 1;
    for (int k = 0; k < 6; ++k) {
        std::vector<std::size_t> cand;
        for (std::size_t v = 0; v < gb.size(); ++v)
            if (!in[v]) {
                in[v] = 1;
                if (is_p_closed(gb, in))
                    cand.push_back(v);
                in[v] = 0;
            }
        if (cand.empty())
            break;
        in[g.pick(cand)] = 1;
    }
    return in;
}

// Earliest valid timing on the domain, shifted by random positive slack
// that respects every edge.
inline Timing random_timing(Gen& g, const BoundsGraph& gb, const std::vector<char>& in) {
    Timing t(gb.size());
    std::vector<Time> extra(gb.size(), 0);
    for (std::size_t v = 0; v < gb.size(); ++v)
        extra[v] = g.uniform(0, 2);
    for (std::size_t v = 0; v < gb.size(); ++v)
        if (in[v])
            t[v] = gb.vertex(v).node.index == 0 ? 0 : 1;
    for (std::size_t round = 0; round <= gb.size(); ++round) {
        bool changed = false;
        for (const Edge& e : gb.edges())
            if (in[e.from] && in[e.to] && *t[e.from] + e.weight > *t[e.to]) {
                t[e.to] = *t[e.from] + e.weight + (e.weight > 0 ? extra[e.to] : 0);
                changed = true;
            }
        if (!changed)
            break;
    }
    return t;
}

inline std::vector<NodeRef> non_initial(const Run& run) {
    std::vector<NodeRef> v;
    for (NodeRef r : run.nodes())
        if (r.index > 0)
            v.push_back(r);
    return v;
}

inline Scenario scenario_file(const std::string& name) {
    return load_scenario(std::string(BCM_SCENARIO_DIR) + "/" + name);
}

} // namespace bcmtest
