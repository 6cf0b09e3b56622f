#include "bcm/oracle.hpp"

#include <algorithm>

namespace bcm {

namespace {

// Replays a choice prefix; unseen decisions start at option 0.
struct Chooser {
    std::vector<std::uint32_t> pick, arity;
    std::size_t pos = 0;

    std::uint32_t next(std::uint32_t n) {
        if (pos == pick.size()) {
            pick.push_back(0);
            arity.push_back(n);
        }
        arity[pos] = n;
        return pick[pos++];
    }

    bool advance() {
        pick.resize(pos);
        arity.resize(pos);
        while (!pick.empty() && pick.back() + 1 >= arity.back()) {
            pick.pop_back();
            arity.pop_back();
        }
        if (pick.empty())
            return false;
        ++pick.back();
        pos = 0;
        return true;
    }
};

} // namespace

std::size_t enumerate_runs(std::shared_ptr<const Network> net, const std::vector<ExternalSpec>& space,
                           const Limits& limits, const std::function<bool(const Run&)>& visit) {
    const Time H = limits.horizon;
    Chooser ch;
    std::size_t count = 0;
    do {
        ch.pos = 0;
        std::vector<External> ext;
        for (auto& s : space) {
            Time hi = std::min(s.latest, H);
            std::uint32_t slots = hi >= s.earliest ? static_cast<std::uint32_t>(hi - s.earliest + 1) : 0;
            std::uint32_t n = slots + (s.optional ? 1 : 0);
            if (n == 0)
                throw Error(ErrorKind::invalid_schedule, "external " + s.id + " has no admissible time");
            std::uint32_t k = ch.next(n);
            if (s.optional) {
                if (k == 0)
                    continue;
                --k;
            }
            ext.push_back({s.id, s.target, s.earliest + k});
        }
        auto decide = [&](const Run& run, const Message& m) -> std::optional<Time> {
            const Channel& c = run.network().require_channel(m.sender.proc, m.dst);
            Time lo = m.sent + c.lower, hi = std::min(m.sent + c.upper, H);
            std::uint32_t slots = hi >= lo ? static_cast<std::uint32_t>(hi - lo + 1) : 0;
            bool open = m.sent + c.upper > H;
            std::uint32_t k = ch.next(slots + (open ? 1 : 0));
            if (k == slots)
                return std::nullopt;
            return lo + k;
        };
        Run run = simulate(net, ext, H, decide);
        if (++count > limits.budget)
            throw Error(ErrorKind::budget_exceeded, std::to_string(limits.budget) + " runs");
        if (!visit(run))
            break;
    } while (ch.advance());
    return count;
}

const char* to_string(Tri t) {
    switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::uncertain: return "uncertain";
    }
    return "?";
}

Tri decide(const Gap& g, Weight x) {
    if (g.missing)
        return Tri::no;
    if (g.min_gap && *g.min_gap < x)
        return Tri::no;
    if (g.upper_cut && *g.upper_cut < x)
        return Tri::no;
    if (g.runs == 0 || g.both_pending || g.upper_cut)
        return Tri::uncertain;
    if (g.lower_cut && *g.lower_cut < x)
        return Tri::uncertain;
    if (g.pinned || g.open_unknown || (g.open_min && *g.open_min < x))
        return Tri::uncertain;
    return Tri::yes;
}

Viewpoint viewpoint(const Run& run, NodeRef sigma) {
    Viewpoint v;
    v.node = run.node(sigma).digest;
    for (NodeRef r : past(run, sigma)) {
        const Node& n = run.node(r);
        Viewpoint::Step st;
        st.proc = r.proc;
        if (r.index > 0)
            st.pred = run.node({r.proc, r.index - 1}).digest;
        for (MsgId m : n.received)
            st.senders.push_back(run.node(run.messages[m].sender).digest);
        st.externals = n.externals;
        v.past.emplace(n.digest, std::move(st));
    }
    return v;
}

namespace {

// Whether the prefix can still grow into the node with digest d after its
// horizon. Timing is ignored, so this may say yes too often but never too
// rarely. Externals never come after the horizon.
bool can_happen(const Run& run, const Viewpoint& vp, const Digest& d, std::map<Digest, bool>& memo) {
    if (run.find(d))
        return true;
    if (auto it = memo.find(d); it != memo.end())
        return it->second;
    const Viewpoint::Step& st = vp.past.at(d);
    bool ok = st.pred && st.externals.empty();
    if (ok) {
        if (run.find(*st.pred))
            ok = run.lines.at(st.proc).back().digest == *st.pred;
        else
            ok = can_happen(run, vp, *st.pred, memo);
    }
    for (std::size_t i = 0; ok && i < st.senders.size(); ++i) {
        if (auto r = run.find(st.senders[i])) {
            auto m = run.sent_to(*r, st.proc);
            ok = m && !run.messages[*m].receiver;
        } else {
            ok = can_happen(run, vp, st.senders[i], memo);
        }
    }
    memo[d] = ok;
    return ok;
}

} // namespace

Gap oracle_gap(std::shared_ptr<const Network> net, const std::vector<ExternalSpec>& space, const Limits& limits,
               const PortableNode& theta1, const PortableNode& theta2, const std::optional<Viewpoint>& condition) {
    Gap g;
    bool unpinned_minimizer = false;
    auto lower = [](std::optional<Weight>& slot, Weight v) { slot = slot ? std::min(*slot, v) : v; };
    enumerate_runs(net, space, limits, [&](const Run& run) {
        auto a = locate(run, theta1);
        auto b = locate(run, theta2);
        if (condition && !run.find(condition->node)) {
            std::map<Digest, bool> memo;
            if (!can_happen(run, *condition, condition->node, memo))
                return true;
            // A base that has not happened yet can only happen after the horizon.
            Resolved ra = a ? resolve(run, *a) : Resolved{Resolution::pending, {}};
            Resolved rb = b ? resolve(run, *b) : Resolved{Resolution::pending, {}};
            const Time H = run.horizon;
            bool done_a = ra.status == Resolution::resolved, done_b = rb.status == Resolution::resolved;
            if (done_a && done_b)
                lower(g.open_min, run.node(rb.node).time - run.node(ra.node).time);
            else if (done_a && rb.status == Resolution::pending)
                lower(g.open_min, H + 1 - run.node(ra.node).time);
            else if (done_b && ra.status == Resolution::pending)
                lower(g.open_min, run.node(rb.node).time - H - 1);
            else
                g.open_unknown = true;
            return true;
        }
        if (!condition && !a && !b)
            return true;
        ++g.runs;
        Resolved ra = a ? resolve(run, *a) : Resolved{};
        Resolved rb = b ? resolve(run, *b) : Resolved{};
        if (ra.status == Resolution::absent || rb.status == Resolution::absent) {
            g.missing = true;
            return true;
        }
        const Time H = run.horizon;
        if (ra.status == Resolution::pending && rb.status == Resolution::pending) {
            g.both_pending = true;
        } else if (ra.status == Resolution::pending) {
            lower(g.upper_cut, run.node(rb.node).time - H - 1);
        } else if (rb.status == Resolution::pending) {
            lower(g.lower_cut, H + 1 - run.node(ra.node).time);
        } else {
            ++g.resolved;
            Weight gap = run.node(rb.node).time - run.node(ra.node).time;
            bool pinned = false;
            for (auto& e : run.externals)
                for (auto& s : space)
                    if (s.id == e.id && s.latest > s.earliest && e.time == std::min(s.latest, H))
                        pinned = true;
            if (!g.min_gap || gap < *g.min_gap) {
                g.min_gap = gap;
                unpinned_minimizer = !pinned;
            } else if (gap == *g.min_gap && !pinned) {
                unpinned_minimizer = true;
            }
        }
        return true;
    });
    g.pinned = g.min_gap && !unpinned_minimizer;
    return g;
}

Tri oracle_supports(std::shared_ptr<const Network> net, const std::vector<ExternalSpec>& space,
                    const Limits& limits, const PortableNode& theta1, const PortableNode& theta2, Weight x) {
    return decide(oracle_gap(std::move(net), space, limits, theta1, theta2, std::nullopt), x);
}

Tri oracle_knows(std::shared_ptr<const Network> net, const std::vector<ExternalSpec>& space, const Limits& limits,
                 const Viewpoint& sigma, const PortableNode& theta1, const PortableNode& theta2, Weight x) {
    return decide(oracle_gap(std::move(net), space, limits, theta1, theta2, sigma), x);
}

} // namespace bcm
