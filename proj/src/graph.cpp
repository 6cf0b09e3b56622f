#include "bcm/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bcm {

std::size_t BoundsGraph::add_basic(NodeRef r) {
    auto it = basic_.find(r);
    if (it != basic_.end())
        return it->second;
    std::size_t v = vertices_.size();
    vertices_.push_back({VertexKind::basic, r, r.proc});
    out_.emplace_back();
    in_.emplace_back();
    basic_.emplace(r, v);
    return v;
}

std::size_t BoundsGraph::add_aux(ProcId p) {
    auto it = aux_.find(p);
    if (it != aux_.end())
        return it->second;
    std::size_t v = vertices_.size();
    vertices_.push_back({VertexKind::aux, {}, p});
    out_.emplace_back();
    in_.emplace_back();
    aux_.emplace(p, v);
    return v;
}

void BoundsGraph::add_edge(std::size_t from, std::size_t to, Weight w, EdgeKind kind) {
    auto key = std::make_pair(from, to);
    auto it = pair_.find(key);
    if (it != pair_.end()) {
        Edge& e = edges_[it->second];
        if (w > e.weight) {
            e.weight = w;
            e.kind = kind;
        }
        return;
    }
    std::size_t id = edges_.size();
    edges_.push_back({from, to, w, kind});
    out_[from].push_back(id);
    in_[to].push_back(id);
    pair_.emplace(key, id);
}

const Edge* BoundsGraph::edge(std::size_t from, std::size_t to) const {
    auto it = pair_.find({from, to});
    return it == pair_.end() ? nullptr : &edges_[it->second];
}

std::optional<std::size_t> BoundsGraph::find(NodeRef r) const {
    auto it = basic_.find(r);
    if (it == basic_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::size_t> BoundsGraph::find_aux(ProcId p) const {
    auto it = aux_.find(p);
    if (it == aux_.end())
        return std::nullopt;
    return it->second;
}

std::size_t BoundsGraph::at(NodeRef r) const {
    auto v = find(r);
    if (!v)
        throw Error(ErrorKind::unknown_node, "node is not a vertex of this graph");
    return *v;
}

std::string BoundsGraph::label(std::size_t v, const Run& run) const {
    const Vertex& x = vertices_.at(v);
    if (x.kind == VertexKind::aux)
        return "psi_" + run.network().name(x.proc);
    return run.address(x.node);
}

Weight BoundsGraph::path_weight(const VertexPath& p) const {
    Weight w = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const Edge* e = edge(p[i], p[i + 1]);
        if (!e)
            throw Error(ErrorKind::invalid_path, "vertex sequence is not a path of the graph");
        w += e->weight;
    }
    return w;
}

namespace {

void add_run_edges(BoundsGraph& g, const Run& run, const std::set<NodeRef>* keep) {
    auto in = [&](NodeRef r) { return !keep || keep->count(r); };
    for (auto& line : run.lines)
        for (auto& n : line)
            if (in(n.ref))
                g.add_basic(n.ref);
    for (auto& line : run.lines)
        for (std::size_t k = 1; k < line.size(); ++k)
            if (in(line[k - 1].ref) && in(line[k].ref))
                g.add_edge(g.at(line[k - 1].ref), g.at(line[k].ref), 1, EdgeKind::successor);
    const Network& net = run.network();
    for (auto& m : run.messages) {
        if (!m.receiver || !in(m.sender) || !in(*m.receiver))
            continue;
        const Channel& c = net.require_channel(m.sender.proc, m.dst);
        std::size_t s = g.at(m.sender), t = g.at(*m.receiver);
        g.add_edge(s, t, c.lower, EdgeKind::lower);
        g.add_edge(t, s, -c.upper, EdgeKind::upper);
    }
}

} // namespace

BoundsGraph basic_graph(const Run& run) {
    BoundsGraph g;
    add_run_edges(g, run, nullptr);
    return g;
}

BoundsGraph local_graph(const Run& run, NodeRef sigma) {
    auto p = past(run, sigma);
    std::set<NodeRef> keep(p.begin(), p.end());
    BoundsGraph g;
    add_run_edges(g, run, &keep);
    return g;
}

BoundsGraph extended_graph(const Run& run, NodeRef sigma) {
    Causality cz(run);
    auto p = cz.past(sigma);
    std::set<NodeRef> keep(p.begin(), p.end());
    BoundsGraph g;
    add_run_edges(g, run, &keep);
    const Network& net = run.network();
    for (ProcId i = 0; i < net.size(); ++i)
        g.add_aux(i);
    for (ProcId i = 0; i < net.size(); ++i)
        if (auto b = cz.boundary(sigma, i))
            g.add_edge(g.at(*b), *g.find_aux(i), 1, EdgeKind::boundary);
    for (NodeRef r : p)
        for (MsgId id : run.node(r).sent) {
            const Message& m = run.messages[id];
            if (m.receiver && keep.count(*m.receiver))
                continue;
            const Channel& c = net.require_channel(r.proc, m.dst);
            g.add_edge(*g.find_aux(m.dst), g.at(r), -c.upper, EdgeKind::unreceived);
        }
    for (const Channel& c : net.channels())
        g.add_edge(*g.find_aux(c.dst), *g.find_aux(c.src), -c.upper, EdgeKind::aux_channel);
    return g;
}

VertexPath LongestPaths::path(std::size_t v) const {
    if (!dist.at(v))
        throw Error(ErrorKind::invalid_path, "vertex not reachable");
    VertexPath p{v};
    std::size_t cur = v;
    while (cur != anchor) {
        cur = *next.at(cur);
        p.push_back(cur);
        if (p.size() > dist.size() + 1)
            throw Error(ErrorKind::internal, "cyclic predecessor chain");
    }
    if (!reverse)
        std::reverse(p.begin(), p.end());
    return p;
}

namespace {

LongestPaths bellman_ford(const BoundsGraph& g, std::size_t anchor, bool reverse) {
    LongestPaths lp;
    lp.anchor = anchor;
    lp.reverse = reverse;
    lp.dist.assign(g.size(), std::nullopt);
    lp.next.assign(g.size(), std::nullopt);
    lp.dist.at(anchor) = 0;
    const auto& edges = g.edges();
    for (std::size_t round = 0; round <= g.size(); ++round) {
        bool changed = false;
        for (std::size_t id = 0; id < edges.size(); ++id) {
            const Edge& e = edges[id];
            std::size_t a = reverse ? e.to : e.from;
            std::size_t b = reverse ? e.from : e.to;
            if (!lp.dist[a])
                continue;
            Weight cand = *lp.dist[a] + e.weight;
            if (!lp.dist[b] || cand > *lp.dist[b]) {
                if (b == anchor)
                    throw Error(ErrorKind::positive_cycle, "positive cycle through the anchor");
                lp.dist[b] = cand;
                lp.next[b] = a;
                changed = true;
            }
        }
        if (!changed)
            return lp;
    }
    throw Error(ErrorKind::positive_cycle, "longest paths do not converge");
}

} // namespace

LongestPaths longest_from(const BoundsGraph& g, std::size_t src) {
    return bellman_ford(g, src, false);
}

LongestPaths longest_to(const BoundsGraph& g, std::size_t dst) {
    return bellman_ford(g, dst, true);
}

bool has_positive_cycle(const BoundsGraph& g) {
    std::vector<Weight> d(g.size(), 0);
    for (std::size_t round = 0; round <= g.size(); ++round) {
        bool changed = false;
        for (const Edge& e : g.edges())
            if (d[e.from] + e.weight > d[e.to]) {
                d[e.to] = d[e.from] + e.weight;
                changed = true;
            }
        if (!changed)
            return false;
    }
    return true;
}

Partition partition(const BoundsGraph& g, std::size_t from) {
    Partition p;
    p.reach.assign(g.size(), 0);
    std::vector<std::size_t> stack{from};
    p.reach[from] = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t id : g.out_edges(v)) {
            std::size_t w = g.edges()[id].to;
            if (!p.reach[w]) {
                p.reach[w] = 1;
                stack.push_back(w);
            }
        }
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
        bool aux = g.vertex(v).kind == VertexKind::aux;
        auto& bucket = aux ? (p.reach[v] ? p.a_yes : p.a_no) : (p.reach[v] ? p.v_yes : p.v_no);
        bucket.push_back(v);
    }
    return p;
}

std::string to_dot(const BoundsGraph& g, const Run& run) {
    std::vector<std::size_t> order(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        order[v] = v;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Vertex &x = g.vertex(a), &y = g.vertex(b);
        return std::tie(x.kind, x.proc, x.node.index) < std::tie(y.kind, y.proc, y.node.index);
    });
    std::ostringstream os;
    os << "digraph bounds {\n";
    for (std::size_t v : order)
        os << "  \"" << g.label(v, run) << "\";\n";
    std::vector<std::tuple<std::string, std::string, Weight>> es;
    for (const Edge& e : g.edges())
        es.emplace_back(g.label(e.from, run), g.label(e.to, run), e.weight);
    std::sort(es.begin(), es.end());
    for (auto& [a, b, w] : es)
        os << "  \"" << a << "\" -> \"" << b << "\" [label=\"" << w << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace bcm
