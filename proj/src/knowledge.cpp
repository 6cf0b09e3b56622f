#include "bcm/knowledge.hpp"

#include <algorithm>

namespace bcm {

namespace {

struct Prepared {
    GeneralNode n1, n2;
};

Prepared prepare(const Run& run, NodeRef sigma, const GeneralNode& t1, const GeneralNode& t2) {
    if (!run.contains(sigma))
        throw Error(ErrorKind::unknown_node, "sigma");
    for (const GeneralNode* t : {&t1, &t2}) {
        if (!recognized(run, *t, sigma))
            throw Error(ErrorKind::not_recognized, address(run, *t));
        if (t->base.index == 0)
            throw Error(ErrorKind::time_zero_base, address(run, *t));
    }
    return {normalize(run, t1, sigma), normalize(run, t2, sigma)};
}

// psi vertices for the relay path of a normalized source, ending at its base.
VertexPath leading(const BoundsGraph& ge, const GeneralNode& n) {
    VertexPath v;
    for (std::size_t i = n.path.size(); i-- > 1;)
        v.push_back(*ge.find_aux(n.path[i]));
    v.push_back(ge.at(n.base));
    return v;
}

Path slice(const Path& p, std::size_t from, std::size_t to) {
    return Path(p.begin() + from, p.begin() + to);
}

// Latest fast time of any vertex; free deliveries never wait past it.
Time latest_time(const Run& run, NodeRef sigma, const GeneralNode& n1, Time gamma) {
    FastTiming ft = fast_timing(run, sigma, n1.base, gamma);
    Time latest = 0;
    for (auto& t : ft.times)
        latest = std::max(latest, *t);
    return latest;
}

} // namespace

std::optional<Weight> visible_bound(const Run& run, NodeRef sigma, const GeneralNode& theta1,
                                    const GeneralNode& theta2) {
    Prepared pr = prepare(run, sigma, theta1, theta2);
    const Network& net = run.network();
    BoundsGraph ge = extended_graph(run, sigma);
    LongestPaths lp = longest_from(ge, ge.at(pr.n1.base));
    const Path &p1 = pr.n1.path, &p2 = pr.n2.path;
    auto d2 = lp.dist[ge.at(pr.n2.base)];
    if (!d2)
        return std::nullopt;
    const Weight lead = -net.upper(p1);
    Weight best = lead + *d2 + net.lower(p2);
    for (std::size_t h = 1; h < p2.size(); ++h)
        if (auto d = lp.dist[*ge.find_aux(p2[h])])
            best = std::max(best, lead + *d + net.lower(slice(p2, h, p2.size())));
    if (pr.n1.base == pr.n2.base)
        for (std::size_t h = 0; h < std::min(p1.size(), p2.size()) && p1[h] == p2[h]; ++h)
            best = std::max(best, net.lower(slice(p2, h, p2.size())) - net.upper(slice(p1, h, p1.size())));
    return best;
}

Verdict knows_precedence(const Run& run, NodeRef sigma, const GeneralNode& theta1, const GeneralNode& theta2,
                         Weight x) {
    Prepared pr = prepare(run, sigma, theta1, theta2);
    const Network& net = run.network();
    Verdict v;
    v.from = pr.n1;
    v.to = pr.n2;
    const Path &p1 = pr.n1.path, &p2 = pr.n2.path;
    const Time slack = net.upper(p1) + net.upper(p2) + 1;

    {
        BoundsGraph ge = extended_graph(run, sigma);
        Partition part = partition(ge, ge.at(pr.n1.base));
        if (!part.reach[ge.at(pr.n2.base)]) {
            Time gamma = std::max<Time>(0, net.upper(p2) - net.lower(p1) - x);
            v.witness = fast_run(run, sigma, pr.n1, gamma, latest_time(run, sigma, pr.n1, gamma) + slack);
            return v;
        }
    }

    FastRun fr = fast_run(run, sigma, pr.n1, 0, latest_time(run, sigma, pr.n1, 0) + slack);
    const Run& rp = fr.run;

    auto g1 = locate(rp, portable(run, pr.n1));
    auto g2 = locate(rp, portable(run, pr.n2));
    if (!g1 || !g2)
        throw Error(ErrorKind::internal, "fast run lost a past node");
    Resolved a = resolve(rp, *g1), b = resolve(rp, *g2);
    if (a.status != Resolution::resolved || b.status != Resolution::resolved)
        throw Error(ErrorKind::internal, "fast run horizon too short for the endpoints");
    const Weight w = rp.node(b.node).time - rp.node(a.node).time;
    v.max_weight = w;
    v.holds = w >= x;

    // Find the last hop of theta2's chain that did not arrive at its lower bound.
    std::size_t last = 0;
    DeliveryRule last_rule = DeliveryRule::free;
    NodeRef cur = g2->base;
    for (std::size_t h = 1; h < p2.size(); ++h) {
        MsgId id = *rp.sent_to(cur, p2[h]);
        const Message& m = rp.messages[id];
        if (*m.delivered - m.sent != net.require_channel(p2[h - 1], p2[h]).lower) {
            last = h;
            last_rule = fr.rule[id];
        }
        cur = *m.receiver;
    }

    const BoundsGraph& ge = fr.timing.graph;
    const LongestPaths& lp = fr.timing.from_source;
    VertexPath cpath;
    GeneralNode target;
    if (last == 0) {
        cpath = leading(ge, pr.n1);
        VertexPath q = lp.path(ge.at(pr.n2.base));
        cpath.insert(cpath.end(), q.begin() + 1, q.end());
        target = singleton(pr.n2.base);
    } else if (last_rule == DeliveryRule::chain) {
        if (pr.n1.base != pr.n2.base || !is_prefix(slice(p2, 0, last + 1), p1))
            throw Error(ErrorKind::internal, "upper-bound hop on a chain that is not the source's");
        for (std::size_t i = p1.size(); i-- > last;)
            cpath.push_back(*ge.find_aux(p1[i]));
        target = {pr.n1.base, slice(p1, 0, last + 1)};
    } else if (last_rule == DeliveryRule::free) {
        cpath = leading(ge, pr.n1);
        VertexPath q = lp.path(*ge.find_aux(p2[last]));
        cpath.insert(cpath.end(), q.begin() + 1, q.end());
        target = {pr.n2.base, slice(p2, 0, last + 1)};
    } else {
        throw Error(ErrorKind::internal, "normalized chain re-entered the past");
    }
    Path suffix = slice(p2, last, p2.size());
    Zigzag z = visible_zigzag_from_constraint_path(run, ge, cpath, pr.n1, target, suffix);
    if (zigzag_weight(net, z) != w)
        throw Error(ErrorKind::internal, "certificate weight differs from the fast-run gap");
    v.certificate = std::move(z);
    v.witness = std::move(fr);
    return v;
}

std::optional<NodeRef> go_node(const Run& run, const Task& task) {
    for (auto& n : run.lines.at(task.c))
        if (!n.externals.empty())
            return n.ref;
    return std::nullopt;
}

GeneralNode a_node(const Task& task, NodeRef go) {
    return {go, {task.c, task.a}};
}

Decision protocol_decision(const Run& run, const Task& task, NodeRef sigma) {
    if (sigma.proc != task.b)
        throw Error(ErrorKind::unknown_node, "protocol decisions are taken at B's nodes");
    if (sigma.index == 0)
        return Decision::wait;
    auto go = go_node(run, task);
    if (!go || !happens_before(run, *go, sigma))
        return Decision::wait;
    GeneralNode a = a_node(task, *go);
    GeneralNode b = singleton(sigma);
    Verdict v = task.kind == TaskKind::late ? knows_precedence(run, sigma, a, b, task.x)
                                            : knows_precedence(run, sigma, b, a, task.x);
    return v.holds ? Decision::act : Decision::wait;
}

TaskOutcome evaluate_task(const Run& run, const Task& task) {
    TaskOutcome out;
    out.go = go_node(run, task);
    for (auto& n : run.lines.at(task.b))
        if (protocol_decision(run, task, n.ref) == Decision::act) {
            out.b_act = n.ref;
            break;
        }
    if (out.go) {
        Resolved r = resolve(run, a_node(task, *out.go));
        if (r.status == Resolution::resolved)
            out.a_act = r.node;
    }
    if (!out.b_act)
        return out;
    if (!out.a_act) {
        out.complete = false;
        return out;
    }
    Time ta = run.node(*out.a_act).time, tb = run.node(*out.b_act).time;
    out.compliant = task.kind == TaskKind::late ? tb >= ta + task.x : ta >= tb + task.x;
    return out;
}

} // namespace bcm
