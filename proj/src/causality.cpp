#include "bcm/causality.hpp"

#include <algorithm>

namespace bcm {

Causality::Causality(const Run& run) : run_(&run) {
    const std::size_t n = run.lines.size();
    clock_.resize(n);
    std::vector<NodeRef> order = run.nodes();
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeRef a, NodeRef b) { return run.node(a).time < run.node(b).time; });
    for (ProcId p = 0; p < n; ++p)
        clock_[p].resize(run.lines[p].size());
    for (NodeRef r : order) {
        std::vector<int> c(n, -1);
        if (r.index > 0)
            c = clock_[r.proc][r.index - 1];
        for (MsgId m : run.node(r).received) {
            auto& s = clock_[run.messages[m].sender.proc][run.messages[m].sender.index];
            for (std::size_t q = 0; q < n; ++q)
                c[q] = std::max(c[q], s[q]);
        }
        c[r.proc] = static_cast<int>(r.index);
        clock_[r.proc][r.index] = std::move(c);
    }
}

bool Causality::precedes(NodeRef a, NodeRef b) const {
    return static_cast<int>(a.index) <= clock_.at(b.proc).at(b.index).at(a.proc);
}

std::vector<NodeRef> Causality::past(NodeRef s) const {
    std::vector<NodeRef> v;
    auto& c = clock_.at(s.proc).at(s.index);
    for (ProcId p = 0; p < c.size(); ++p)
        for (int k = 0; k <= c[p]; ++k)
            v.push_back({p, static_cast<std::uint32_t>(k)});
    return v;
}

std::optional<NodeRef> Causality::boundary(NodeRef s, ProcId p) const {
    int k = clock_.at(s.proc).at(s.index).at(p);
    if (k < 0)
        return std::nullopt;
    return NodeRef{p, static_cast<std::uint32_t>(k)};
}

bool happens_before(const Run& run, NodeRef a, NodeRef b) {
    return Causality(run).precedes(a, b);
}

std::vector<NodeRef> past(const Run& run, NodeRef s) {
    return Causality(run).past(s);
}

GeneralNode singleton(NodeRef r) {
    return {r, {r.proc}};
}

GeneralNode extend(const GeneralNode& g, const Path& q) {
    return {g.base, compose(g.path, q)};
}

Resolved resolve(const Run& run, const GeneralNode& g) {
    if (!run.contains(g.base))
        return {Resolution::absent, {}};
    if (g.path.empty() || g.path.front() != g.base.proc || !run.network().is_path(g.path))
        throw Error(ErrorKind::invalid_path, "general node path does not start at its base");
    NodeRef cur = g.base;
    for (std::size_t i = 1; i < g.path.size(); ++i) {
        if (cur.index == 0)
            return {Resolution::absent, {}};
        auto m = run.sent_to(cur, g.path[i]);
        if (!m)
            throw Error(ErrorKind::internal, "full-information send missing");
        const Message& msg = run.messages[*m];
        if (!msg.receiver)
            return {Resolution::pending, {}};
        cur = *msg.receiver;
    }
    return {Resolution::resolved, cur};
}

NodeRef basic(const Run& run, const GeneralNode& g) {
    Resolved r = resolve(run, g);
    if (r.status != Resolution::resolved)
        throw Error(ErrorKind::absent_node, address(run, g));
    return r.node;
}

Time time_of(const Run& run, const GeneralNode& g) {
    return run.node(basic(run, g)).time;
}

bool recognized(const Run& run, const GeneralNode& g, NodeRef sigma) {
    return run.contains(g.base) && happens_before(run, g.base, sigma);
}

GeneralNode normalize(const Run& run, const GeneralNode& g, NodeRef sigma) {
    Causality cz(run);
    if (!cz.precedes(g.base, sigma))
        throw Error(ErrorKind::not_recognized, address(run, g));
    GeneralNode cur = g;
    while (cur.path.size() > 1 && cur.base.index > 0) {
        auto m = run.sent_to(cur.base, cur.path[1]);
        const Message& msg = run.messages.at(*m);
        if (!msg.receiver || !cz.precedes(*msg.receiver, sigma))
            break;
        cur.base = *msg.receiver;
        cur.path.erase(cur.path.begin());
    }
    return cur;
}

std::string address(const Run& run, const GeneralNode& g) {
    std::string s = run.address(g.base);
    for (std::size_t i = 1; i < g.path.size(); ++i)
        s += "/" + run.network().name(g.path[i]);
    return s;
}

GeneralNode parse_general(const Run& run, std::string_view text) {
    auto slash = text.find('/');
    NodeRef base = run.parse_address(text.substr(0, slash));
    Path p{base.proc};
    if (slash != std::string_view::npos) {
        std::string_view rest = text.substr(slash + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            auto end = rest.find('/', start);
            if (end == std::string_view::npos)
                end = rest.size();
            p.push_back(run.network().id(rest.substr(start, end - start)));
            start = end + 1;
        }
    }
    if (!run.network().is_path(p))
        throw Error(ErrorKind::invalid_path, std::string(text));
    return {base, p};
}

PortableNode portable(const Run& run, const GeneralNode& g) {
    return {run.node(g.base).digest, g.path};
}

std::optional<GeneralNode> locate(const Run& run, const PortableNode& p) {
    auto r = run.find(p.base);
    if (!r)
        return std::nullopt;
    return GeneralNode{*r, p.path};
}

} // namespace bcm
