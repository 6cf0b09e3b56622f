#include "bcm/timing.hpp"

#include <algorithm>
#include <limits>

namespace bcm {

namespace {

constexpr Time horizon_cap = 100000;

} // namespace

bool is_valid_timing(const BoundsGraph& g, const Timing& t) {
    if (t.size() != g.size())
        return false;
    for (auto& x : t)
        if (x && *x < 0)
            return false;
    for (const Edge& e : g.edges())
        if (t[e.from] && t[e.to] && *t[e.from] + e.weight > *t[e.to])
            return false;
    return true;
}

bool is_p_closed(const BoundsGraph& g, const std::vector<char>& member) {
    for (const Edge& e : g.edges())
        if (member.at(e.to) && !member.at(e.from))
            return false;
    return true;
}

std::vector<char> reaching(const BoundsGraph& g, std::size_t sigma) {
    std::vector<char> seen(g.size(), 0);
    std::vector<std::size_t> stack{sigma};
    seen[sigma] = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t id : g.in_edges(v)) {
            std::size_t u = g.edges()[id].from;
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
        }
    }
    return seen;
}

Timing slow_timing(const BoundsGraph& gb, std::size_t sigma) {
    LongestPaths lp = longest_to(gb, sigma);
    Weight top = 0;
    for (auto& d : lp.dist)
        if (d)
            top = std::max(top, *d);
    Timing t(gb.size());
    for (std::size_t v = 0; v < gb.size(); ++v)
        if (lp.dist[v])
            t[v] = top - *lp.dist[v];
    return t;
}

Run run_by_timing(const Run& run, const BoundsGraph& gb, const Timing& t) {
    std::vector<char> member(gb.size(), 0);
    for (std::size_t v = 0; v < gb.size(); ++v) {
        member[v] = t.at(v).has_value();
        if (member[v] && gb.vertex(v).kind != VertexKind::basic)
            throw Error(ErrorKind::invalid_timing, "timing assigns an auxiliary vertex");
    }
    if (!is_p_closed(gb, member))
        throw Error(ErrorKind::invalid_timing, "domain is not closed under predecessors");
    if (!is_valid_timing(gb, t))
        throw Error(ErrorKind::invalid_timing, "an edge constraint is violated");

    const Network& net = run.network();
    std::map<NodeRef, Time> at;
    Time latest = 0;
    Time due = std::numeric_limits<Time>::max();
    std::vector<External> ext;
    for (std::size_t v = 0; v < gb.size(); ++v) {
        if (!member[v])
            continue;
        NodeRef r = gb.vertex(v).node;
        at[r] = *t[v];
        if (r.index == 0)
            continue;
        latest = std::max(latest, *t[v]);
        for (auto& x : run.node(r).externals)
            ext.push_back({x, r.proc, *t[v]});
    }
    for (auto& [r, time] : at) {
        if (r.index == 0)
            continue;
        for (MsgId id : run.node(r).sent) {
            const Message& m = run.messages[id];
            if (m.receiver && at.count(*m.receiver))
                continue;
            due = std::min(due, time + net.require_channel(r.proc, m.dst).upper);
        }
    }
    Time horizon = due == std::numeric_limits<Time>::max() ? latest : due - 1;
    if (horizon < latest)
        throw Error(ErrorKind::invalid_timing,
                    "a dropped message would fall due before the last timed node");

    // Senders in the replay carry the same local states as in run.
    auto replay = [&](const Run& partial, const Message& m) -> std::optional<Time> {
        auto orig = run.find(partial.node(m.sender).digest);
        if (!orig)
            throw Error(ErrorKind::internal, "replayed node missing from the source run");
        auto id = run.sent_to(*orig, m.dst);
        const Message& om = run.messages[*id];
        if (om.receiver && at.count(*om.receiver))
            return at[*om.receiver];
        return std::nullopt;
    };
    return simulate(run.net, ext, horizon, replay);
}

FastTiming fast_timing(const Run& run, NodeRef sigma, NodeRef source, Time gamma) {
    if (gamma < 0)
        throw Error(ErrorKind::invalid_timing, "negative gamma");
    FastTiming ft;
    ft.graph = extended_graph(run, sigma);
    const BoundsGraph& g = ft.graph;
    ft.sigma = g.at(sigma);
    auto src = g.find(source);
    if (!src)
        throw Error(ErrorKind::not_recognized, "source is not in the past of sigma");
    ft.source = *src;
    ft.part = partition(g, ft.source);
    ft.from_source = longest_from(g, ft.source);
    LongestPaths to_sigma = longest_to(g, ft.sigma);

    Weight f1 = 0, f2 = 0;
    bool any = false;
    for (std::size_t v : ft.part.v_no) {
        Weight f = *to_sigma.dist.at(v);
        f1 = any ? std::max(f1, f) : f;
        f2 = any ? std::min(f2, f) : f;
        any = true;
    }
    Weight dmin = 0;
    any = false;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (ft.part.reach[v]) {
            Weight d = *ft.from_source.dist[v];
            dmin = any ? std::min(dmin, d) : d;
            any = true;
        }

    ft.times.assign(g.size(), std::nullopt);
    for (std::size_t v : ft.part.v_no)
        ft.times[v] = f1 - *to_sigma.dist[v];
    for (std::size_t v = 0; v < g.size(); ++v)
        if (ft.part.reach[v])
            ft.times[v] = 1 + f1 - f2 + gamma - dmin + *ft.from_source.dist[v];
    for (std::size_t v : ft.part.a_no)
        ft.times[v] = 0;
    return ft;
}

FastRun fast_run(const Run& run, NodeRef sigma, const GeneralNode& theta, Time gamma, Time horizon) {
    FastRun out;
    out.theta = normalize(run, theta, sigma);
    if (run.node(out.theta.base).time <= 0)
        throw Error(ErrorKind::time_zero_base, address(run, out.theta));
    out.timing = fast_timing(run, sigma, out.theta.base, gamma);
    const BoundsGraph& g = out.timing.graph;
    const Timing& T = out.timing.times;
    const Network& net = run.network();

    std::map<NodeRef, Time> at;
    Time latest = 0;
    std::vector<External> ext;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (g.vertex(v).kind != VertexKind::basic)
            continue;
        NodeRef r = g.vertex(v).node;
        at[r] = *T[v];
        if (r.index == 0)
            continue;
        latest = std::max(latest, *T[v]);
        for (auto& x : run.node(r).externals)
            ext.push_back({x, r.proc, *T[v]});
    }
    if (horizon > horizon_cap)
        throw Error(ErrorKind::horizon_overflow, "horizon above " + std::to_string(horizon_cap));
    if (horizon < latest)
        throw Error(ErrorKind::horizon_overflow, "horizon ends before the past of sigma is replayed");

    const Digest base = run.node(out.theta.base).digest;
    const Path& p = out.theta.path;
    std::map<MsgId, std::size_t> chain_msg;
    auto& rule = out.rule;

    auto chain_pos = [&](const Run& partial, NodeRef n) -> std::optional<std::size_t> {
        const Node& node = partial.node(n);
        if (node.digest == base)
            return 0;
        for (MsgId id : node.received) {
            auto it = chain_msg.find(id);
            if (it != chain_msg.end())
                return it->second;
        }
        return std::nullopt;
    };

    auto decide = [&](const Run& partial, const Message& m) -> std::optional<Time> {
        const Channel& c = net.require_channel(m.sender.proc, m.dst);
        if (auto orig = run.find(partial.node(m.sender).digest); orig && at.count(*orig)) {
            const Message& om = run.messages[*run.sent_to(*orig, m.dst)];
            if (om.receiver && at.count(*om.receiver)) {
                rule.push_back(DeliveryRule::past);
                return at[*om.receiver];
            }
        }
        if (auto k = chain_pos(partial, m.sender); k && *k + 1 < p.size() && p[*k + 1] == m.dst) {
            chain_msg[m.id] = *k + 1;
            rule.push_back(DeliveryRule::chain);
            return m.sent + c.upper;
        }
        rule.push_back(DeliveryRule::free);
        return std::max(m.sent + c.lower, *T[*g.find_aux(m.dst)]);
    };
    out.run = simulate(run.net, ext, horizon, decide);
    return out;
}

} // namespace bcm
