#include "bcm/zigzag.hpp"

#include <algorithm>

namespace bcm {

Fork trivial_fork(const GeneralNode& g) {
    return {g, {g.path.back()}, {g.path.back()}};
}

GeneralNode head_of(const Fork& f) {
    return extend(f.base, f.head);
}

GeneralNode tail_of(const Fork& f) {
    return extend(f.base, f.tail);
}

Weight fork_weight(const Network& net, const Fork& f) {
    return net.lower(f.head) - net.upper(f.tail);
}

Weight zigzag_weight(const Network& net, const Zigzag& z) {
    Weight w = 0;
    for (auto& f : z.forks)
        w += fork_weight(net, f);
    for (Join j : z.joins)
        if (j == Join::separated)
            ++w;
    return w;
}

namespace {

Check fail(std::string why) {
    return {false, std::move(why)};
}

std::optional<NodeRef> realized(const Run& run, const GeneralNode& g) {
    Resolved r = resolve(run, g);
    if (r.status != Resolution::resolved)
        return std::nullopt;
    return r.node;
}

} // namespace

Check validate_zigzag(const Run& run, const Zigzag& z, const GeneralNode& from, const GeneralNode& to) {
    if (z.forks.empty())
        return fail("no forks");
    if (z.joins.size() + 1 != z.forks.size())
        return fail("join count does not match fork count");
    const Network& net = run.network();
    std::vector<NodeRef> heads, tails;
    for (std::size_t k = 0; k < z.forks.size(); ++k) {
        const Fork& f = z.forks[k];
        if (f.base.path.empty() || f.head.empty() || f.tail.empty() || f.head.front() != f.base.path.back() ||
            f.tail.front() != f.base.path.back() || !net.is_path(f.base.path) || !net.is_path(f.head) ||
            !net.is_path(f.tail))
            return fail("fork " + std::to_string(k) + " is malformed");
        auto b = realized(run, f.base);
        auto h = realized(run, head_of(f));
        auto t = realized(run, tail_of(f));
        if (!b || !h || !t)
            return fail("fork " + std::to_string(k) + " is not realized");
        heads.push_back(*h);
        tails.push_back(*t);
    }
    auto a = realized(run, from);
    auto e = realized(run, to);
    if (!a || !e)
        return fail("endpoint not realized");
    if (tails.front() != *a)
        return fail("first tail is not the source node");
    if (heads.back() != *e)
        return fail("last head is not the target node");
    for (std::size_t k = 0; k + 1 < z.forks.size(); ++k) {
        NodeRef h = heads[k], t = tails[k + 1];
        if (h.proc != t.proc)
            return fail("link " + std::to_string(k) + " crosses processes");
        if (z.joins[k] == Join::joined && h != t)
            return fail("link " + std::to_string(k) + " marked joined but nodes differ");
        if (z.joins[k] == Join::separated && !(h.index < t.index))
            return fail("link " + std::to_string(k) + " marked separated but not strictly later");
    }
    return {};
}

Check is_visible(const Run& run, NodeRef sigma, const Zigzag& z) {
    if (z.forks.empty())
        return fail("no forks");
    Causality cz(run);
    for (std::size_t k = 0; k + 1 < z.forks.size(); ++k) {
        auto h = realized(run, head_of(z.forks[k]));
        if (!h || !cz.precedes(*h, sigma))
            return fail("head " + std::to_string(k) + " is not in the past");
    }
    const NodeRef top = z.forks.back().base.base;
    if (!run.contains(top) || !cz.precedes(top, sigma))
        return fail("top base is not in the past");
    return {};
}

Zigzag zigzag_from_path(const Run& run, const BoundsGraph& g, const VertexPath& path, const GeneralNode& from,
                        const GeneralNode& to) {
    if (path.empty())
        throw Error(ErrorKind::invalid_path, "empty path");
    for (std::size_t v : path)
        if (g.vertex(v).kind != VertexKind::basic)
            throw Error(ErrorKind::invalid_path, "path leaves the basic nodes");
    if (basic(run, from) != g.vertex(path.front()).node || basic(run, to) != g.vertex(path.back()).node)
        throw Error(ErrorKind::invalid_path, "endpoints do not match the path");

    // Built back to front: start with the last vertex and prepend one edge at a time.
    Zigzag z;
    const std::size_t n = path.size();
    auto rep = [&](std::size_t i) { return i == 0 ? from : singleton(g.vertex(path[i]).node); };
    z.forks = {trivial_fork(rep(n - 1)), trivial_fork(to)};
    z.joins = {Join::joined};
    if (n == 1)
        z.forks.front() = trivial_fork(from);
    for (std::size_t i = n - 1; i-- > 0;) {
        const Edge* e = g.edge(path[i], path[i + 1]);
        if (!e)
            throw Error(ErrorKind::invalid_path, "consecutive vertices are not adjacent");
        GeneralNode r = rep(i);
        ProcId pi = g.vertex(path[i]).proc, pk = g.vertex(path[i + 1]).proc;
        Fork f0 = trivial_fork(r);
        Join j = Join::joined;
        switch (e->kind) {
        case EdgeKind::lower:
            f0.head = {pi, pk};
            break;
        case EdgeKind::upper:
            z.forks.front().tail.push_back(pi);
            break;
        case EdgeKind::successor:
            j = Join::separated;
            break;
        default:
            throw Error(ErrorKind::invalid_path, "edge kind not in a basic graph");
        }
        z.forks.insert(z.forks.begin(), f0);
        z.joins.insert(z.joins.begin(), j);
    }
    return z;
}

Zigzag simplify(Zigzag z) {
    for (std::size_t k = 0; z.forks.size() > 1 && k < z.forks.size();) {
        const Fork& f = z.forks[k];
        bool trivial = f.head.size() == 1 && f.tail.size() == 1;
        bool joined_after = k + 1 < z.forks.size() && z.joins[k] == Join::joined;
        bool joined_before = k > 0 && z.joins[k - 1] == Join::joined;
        if (trivial && (joined_after || joined_before)) {
            z.forks.erase(z.forks.begin() + k);
            z.joins.erase(z.joins.begin() + (joined_after ? k : k - 1));
            k = k > 0 ? k - 1 : 0;
        } else if (k + 1 < z.forks.size() && z.joins[k] == Join::joined && f.head.size() == 1 &&
                   z.forks[k + 1].tail.size() == 1) {
            // Both forks hang off the same node: fuse them into one.
            z.forks[k] = Fork{f.base, z.forks[k + 1].head, f.tail};
            z.forks.erase(z.forks.begin() + k + 1);
            z.joins.erase(z.joins.begin() + k);
        } else {
            ++k;
        }
    }
    return z;
}

namespace {

void append(Zigzag& z, Zigzag piece, Join link) {
    if (!z.forks.empty())
        z.joins.push_back(link);
    z.forks.insert(z.forks.end(), piece.forks.begin(), piece.forks.end());
    z.joins.insert(z.joins.end(), piece.joins.begin(), piece.joins.end());
}

Zigzag single(const Fork& f) {
    return {{f}, {}};
}

} // namespace

Zigzag visible_zigzag_from_constraint_path(const Run& run, const BoundsGraph& ge, const VertexPath& cpath,
                                           const GeneralNode& from, const GeneralNode& target,
                                           const Path& suffix) {
    if (cpath.empty())
        throw Error(ErrorKind::invalid_path, "empty constraint path");
    const Weight path_w = ge.path_weight(cpath);
    auto is_aux = [&](std::size_t v) { return ge.vertex(v).kind == VertexKind::aux; };
    auto proc = [&](std::size_t v) { return ge.vertex(v).proc; };
    auto node = [&](std::size_t v) { return ge.vertex(v).node; };

    Zigzag z;
    std::size_t first = 0;
    while (first < cpath.size() && is_aux(cpath[first]))
        ++first;

    if (first == cpath.size()) {
        // Only auxiliary vertices: from = target ⊙ q.
        Path q;
        for (std::size_t i = cpath.size(); i-- > 0;)
            q.push_back(proc(cpath[i]));
        Fork f{target, {target.path.back()}, q};
        if (!(tail_of(f) == from))
            throw Error(ErrorKind::invalid_path, "auxiliary path does not connect the endpoints");
        z = single(f);
    } else {
        std::size_t last = cpath.size() - 1;
        while (is_aux(cpath[last]))
            --last;
        const bool leading = first > 0;
        const bool trailing = last + 1 < cpath.size();

        const NodeRef s1 = node(cpath[first]);
        Path lead{s1.proc};
        for (std::size_t i = first; i-- > 0;)
            lead.push_back(proc(cpath[i]));
        if (!(from == GeneralNode{s1, lead}))
            throw Error(ErrorKind::invalid_path, "leading segment does not match the source node");
        if (trailing && (target.path.size() < 2 || target.path.back() != proc(cpath.back())))
            throw Error(ErrorKind::invalid_path, "trailing segment needs a relayed target");
        if (leading)
            z = single(Fork{singleton(s1), {s1.proc}, lead});

        // Split [first, last] into basic runs separated by auxiliary excursions.
        std::vector<std::pair<std::size_t, std::size_t>> runs;
        for (std::size_t i = first; i <= last;) {
            std::size_t j = i;
            while (j < last && !is_aux(cpath[j + 1]))
                ++j;
            runs.emplace_back(i, j);
            if (j == last)
                break;
            i = j + 1;
            while (is_aux(cpath[i]))
                ++i;
        }

        for (std::size_t r = 0; r < runs.size(); ++r) {
            auto [i, j] = runs[r];
            if (r > 0) {
                // Excursion (sigma_a, psi_l1, ..., psi_lk, sigma_b) becomes one fork at sigma_b.
                std::size_t prev = runs[r - 1].second;
                const NodeRef sb = node(cpath[i]);
                if (ge.edge(cpath[prev], cpath[prev + 1])->kind != EdgeKind::boundary ||
                    ge.edge(cpath[i - 1], cpath[i])->kind != EdgeKind::unreceived)
                    throw Error(ErrorKind::invalid_path, "malformed auxiliary excursion");
                Path tail{sb.proc};
                for (std::size_t m = i; m-- > prev + 1;)
                    tail.push_back(proc(cpath[m]));
                append(z, single(Fork{singleton(sb), {sb.proc}, tail}), Join::separated);
            }
            GeneralNode start = (r == 0 && !leading) ? from : singleton(node(cpath[i]));
            GeneralNode end = (r + 1 == runs.size() && !trailing) ? target : singleton(node(cpath[j]));
            Zigzag piece;
            if (i == j) {
                piece = single(trivial_fork(start));
                if (!(start == end))
                    append(piece, single(trivial_fork(end)), Join::joined);
            } else {
                piece = zigzag_from_path(run, ge, VertexPath(cpath.begin() + i, cpath.begin() + j + 1), start, end);
            }
            append(z, piece, Join::joined);
        }

        if (trailing) {
            if (ge.edge(cpath[last], cpath[last + 1])->kind != EdgeKind::boundary)
                throw Error(ErrorKind::invalid_path, "trailing segment must leave through a boundary edge");
            Path q;
            for (std::size_t m = cpath.size(); m-- > last + 1;)
                q.push_back(proc(cpath[m]));
            append(z, single(Fork{target, {target.path.back()}, q}), Join::separated);
        }
    }

    Fork& top = z.forks.back();
    if (!(head_of(top) == target))
        throw Error(ErrorKind::internal, "top head does not match the target");
    top.head = compose(top.head, suffix);
    if (zigzag_weight(run.network(), z) != path_w + run.network().lower(suffix))
        throw Error(ErrorKind::internal, "zigzag weight differs from the constraint path weight");
    return simplify(std::move(z));
}

std::optional<Zigzag> transplant(const Run& src, const Run& dst, const Zigzag& z) {
    Zigzag out = z;
    for (auto& f : out.forks) {
        auto g = locate(dst, portable(src, f.base));
        if (!g)
            return std::nullopt;
        f.base = *g;
    }
    return out;
}

} // namespace bcm
