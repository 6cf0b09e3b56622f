#include "bcm/run.hpp"

#include <sodium.h>

#include <algorithm>
#include <random>
#include <set>

namespace bcm {

namespace {

struct Hasher {
    crypto_generichash_state st;

    Hasher() {
        if (sodium_init() < 0)
            throw Error(ErrorKind::internal, "libsodium init failed");
        crypto_generichash_init(&st, nullptr, 0, 16);
    }
    void bytes(const void* p, std::size_t n) {
        crypto_generichash_update(&st, static_cast<const unsigned char*>(p), n);
    }
    void str(const std::string& s) {
        std::uint64_t n = s.size();
        bytes(&n, sizeof n);
        bytes(s.data(), s.size());
    }
    void count(std::size_t n) {
        std::uint64_t v = n;
        bytes(&v, sizeof v);
    }
    Digest done() {
        Digest d;
        crypto_generichash_final(&st, d.bytes.data(), d.bytes.size());
        return d;
    }
};

} // namespace

std::string Digest::hex() const {
    static const char* xs = "0123456789abcdef";
    std::string s;
    for (auto b : bytes) {
        s += xs[b >> 4];
        s += xs[b & 15];
    }
    return s;
}

Digest initial_digest(const std::string& proc) {
    Hasher h;
    h.bytes("I", 1);
    h.str(proc);
    return h.done();
}

Digest step_digest(const std::string& proc, const Digest& pred, const std::vector<Digest>& senders,
                   const std::vector<std::string>& externals) {
    std::vector<Digest> s = senders;
    std::sort(s.begin(), s.end());
    std::vector<std::string> e = externals;
    std::sort(e.begin(), e.end());
    Hasher h;
    h.bytes("N", 1);
    h.str(proc);
    h.bytes(pred.bytes.data(), pred.bytes.size());
    h.count(s.size());
    for (auto& d : s)
        h.bytes(d.bytes.data(), d.bytes.size());
    h.count(e.size());
    for (auto& x : e)
        h.str(x);
    return h.done();
}

const Node& Run::node(NodeRef r) const {
    if (!contains(r))
        throw Error(ErrorKind::unknown_node, "#" + std::to_string(r.proc) + "@" + std::to_string(r.index));
    return lines[r.proc][r.index];
}

bool Run::contains(NodeRef r) const {
    return r.proc < lines.size() && r.index < lines[r.proc].size();
}

std::optional<NodeRef> Run::find(const Digest& d) const {
    auto it = index.find(d);
    if (it == index.end())
        return std::nullopt;
    return it->second;
}

std::optional<MsgId> Run::sent_to(NodeRef r, ProcId dst) const {
    for (MsgId m : node(r).sent)
        if (messages[m].dst == dst)
            return m;
    return std::nullopt;
}

std::vector<NodeRef> Run::nodes() const {
    std::vector<NodeRef> v;
    for (auto& line : lines)
        for (auto& n : line)
            v.push_back(n.ref);
    return v;
}

std::size_t Run::node_count() const {
    std::size_t n = 0;
    for (auto& line : lines)
        n += line.size();
    return n;
}

bool Run::truncated() const {
    return std::any_of(messages.begin(), messages.end(), [](const Message& m) { return !m.receiver; });
}

std::string Run::address(NodeRef r) const {
    return net->name(r.proc) + "@" + std::to_string(r.index);
}

NodeRef Run::parse_address(std::string_view text) const {
    auto at = text.find('@');
    if (at == std::string_view::npos)
        throw Error(ErrorKind::parse_error, "node address needs P@k: " + std::string(text));
    ProcId p = net->id(text.substr(0, at));
    std::string k(text.substr(at + 1));
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorKind::parse_error, "bad node index in " + std::string(text));
    NodeRef r{p, static_cast<std::uint32_t>(std::stoul(k))};
    if (!contains(r))
        throw Error(ErrorKind::unknown_node, std::string(text));
    return r;
}

Run simulate(std::shared_ptr<const Network> net, std::vector<External> externals, Time horizon,
             const Decider& decide) {
    if (horizon < 0)
        throw Error(ErrorKind::invalid_schedule, "negative horizon");
    Run run;
    run.net = net;
    run.horizon = horizon;
    run.lines.resize(net->size());
    for (ProcId p = 0; p < net->size(); ++p) {
        Node n;
        n.ref = {p, 0};
        n.digest = initial_digest(net->name(p));
        run.index.emplace(n.digest, n.ref);
        run.lines[p].push_back(std::move(n));
    }

    struct Pending {
        std::vector<MsgId> msgs;
        std::vector<std::string> exts;
    };
    std::map<Time, std::map<ProcId, Pending>> queue;

    std::set<std::string> ids;
    for (auto& e : externals) {
        if (e.time < 1)
            throw Error(ErrorKind::external_at_zero, e.id);
        if (e.target >= net->size())
            throw Error(ErrorKind::unknown_process, "external " + e.id);
        if (!ids.insert(e.id).second)
            throw Error(ErrorKind::duplicate_external, e.id);
        if (e.time > horizon)
            throw Error(ErrorKind::invalid_schedule, "external " + e.id + " after the horizon");
        queue[e.time][e.target].exts.push_back(e.id);
    }
    std::sort(externals.begin(), externals.end(), [](const External& a, const External& b) {
        return std::tie(a.time, a.target, a.id) < std::tie(b.time, b.target, b.id);
    });
    run.externals = std::move(externals);

    while (!queue.empty() && queue.begin()->first <= horizon) {
        Time t = queue.begin()->first;
        auto batch = std::move(queue.begin()->second);
        queue.erase(queue.begin());

        std::vector<NodeRef> fresh;
        for (auto& [p, pend] : batch) {
            std::sort(pend.msgs.begin(), pend.msgs.end(), [&](MsgId a, MsgId b) {
                return run.messages[a].sender < run.messages[b].sender;
            });
            std::sort(pend.exts.begin(), pend.exts.end());
            Node n;
            n.ref = {p, static_cast<std::uint32_t>(run.lines[p].size())};
            n.time = t;
            n.received = pend.msgs;
            n.externals = pend.exts;
            std::vector<Digest> senders;
            for (MsgId m : pend.msgs) {
                run.messages[m].receiver = n.ref;
                run.messages[m].delivered = t;
                senders.push_back(run.node(run.messages[m].sender).digest);
            }
            n.digest = step_digest(net->name(p), run.lines[p].back().digest, senders, n.externals);
            run.index.emplace(n.digest, n.ref);
            fresh.push_back(n.ref);
            run.lines[p].push_back(std::move(n));
        }

        for (NodeRef r : fresh) {
            for (ProcId dst : net->out(r.proc)) {
                Message m;
                m.id = static_cast<MsgId>(run.messages.size());
                m.sender = r;
                m.dst = dst;
                m.sent = t;
                run.messages.push_back(m);
                run.lines[r.proc][r.index].sent.push_back(m.id);
                auto when = decide(run, run.messages.back());
                if (!when)
                    continue;
                if (*when <= t)
                    throw Error(ErrorKind::invalid_schedule, "delivery at or before the send time");
                if (*when <= horizon)
                    queue[*when][dst].msgs.push_back(m.id);
            }
        }
    }
    return run;
}

Run execute(std::shared_ptr<const Network> net, std::vector<External> externals, const Schedule& schedule,
            Time horizon) {
    std::mt19937_64 rng(schedule.seed);
    auto decide = [&](const Run& run, const Message& m) -> std::optional<Time> {
        auto it = schedule.fixed.find({m.sender, m.dst});
        if (it != schedule.fixed.end())
            return it->second;
        const Channel& c = run.network().require_channel(m.sender.proc, m.dst);
        switch (schedule.policy) {
        case Policy::earliest: return m.sent + c.lower;
        case Policy::latest: return m.sent + c.upper;
        case Policy::random: {
            std::uniform_int_distribution<Time> d(c.lower, c.upper);
            return m.sent + d(rng);
        }
        case Policy::none: return std::nullopt;
        }
        return std::nullopt;
    };
    return simulate(std::move(net), std::move(externals), horizon, decide);
}

Run synthesize_run(std::shared_ptr<const Network> net, std::vector<External> externals,
                   const std::map<std::pair<NodeRef, ProcId>, Time>& deliveries, Time horizon) {
    Schedule s;
    s.policy = Policy::none;
    s.fixed = deliveries;
    Run run = execute(std::move(net), std::move(externals), s, horizon);
    for (auto& [key, t] : deliveries) {
        if (!run.contains(key.first) || !run.sent_to(key.first, key.second))
            throw Error(ErrorKind::inconsistent, "delivery for a message that is never sent: " +
                                                     run.address(key.first) + " -> " + run.net->name(key.second));
    }
    return run;
}

Run extend_run(const Run& run, Time horizon, const Schedule& schedule) {
    if (horizon < run.horizon)
        throw Error(ErrorKind::invalid_schedule, "extension ends before the prefix");
    std::mt19937_64 rng(schedule.seed);
    auto decide = [&](const Run& partial, const Message& m) -> std::optional<Time> {
        if (auto orig = run.find(partial.node(m.sender).digest))
            if (auto id = run.sent_to(*orig, m.dst); id && run.messages[*id].delivered)
                return run.messages[*id].delivered;
        const Channel& c = run.network().require_channel(m.sender.proc, m.dst);
        // Undelivered at the old horizon means due after it.
        Time lo = std::max(m.sent + c.lower, run.horizon + 1), hi = m.sent + c.upper;
        switch (schedule.policy) {
        case Policy::earliest: return lo;
        case Policy::latest: return hi;
        case Policy::random: return std::uniform_int_distribution<Time>(lo, hi)(rng);
        case Policy::none: return std::nullopt;
        }
        return std::nullopt;
    };
    return simulate(run.net, run.externals, horizon, decide);
}

const char* to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::early_delivery: return "EarlyDelivery";
    case ViolationKind::late_delivery: return "LateDelivery";
    case ViolationKind::missed_delivery: return "MissedDelivery";
    case ViolationKind::spontaneous_action: return "SpontaneousAction";
    case ViolationKind::external_at_zero: return "ExternalAtZero";
    case ViolationKind::bad_initial: return "BadInitial";
    case ViolationKind::time_order: return "TimeOrder";
    case ViolationKind::ffip: return "NotFullInformation";
    case ViolationKind::digest_mismatch: return "DigestMismatch";
    case ViolationKind::dangling: return "Dangling";
    }
    return "Violation";
}

std::vector<Violation> validate(const Run& run) {
    std::vector<Violation> out;
    auto add = [&](ViolationKind k, std::string d) { out.push_back({k, std::move(d)}); };
    const Network& net = run.network();

    if (run.lines.size() != net.size()) {
        add(ViolationKind::dangling, "line count differs from process count");
        return out;
    }
    std::map<std::string, const External*> ext_by_id;
    for (auto& e : run.externals) {
        if (e.time < 1)
            add(ViolationKind::external_at_zero, e.id);
        ext_by_id[e.id] = &e;
    }
    std::set<std::string> seen_ext;
    std::vector<int> msg_seen(run.messages.size(), 0);

    for (ProcId p = 0; p < net.size(); ++p) {
        auto& line = run.lines[p];
        if (line.empty()) {
            add(ViolationKind::bad_initial, net.name(p) + " has no initial node");
            continue;
        }
        const Node& init = line[0];
        if (init.time != 0 || !init.received.empty() || !init.externals.empty() || !init.sent.empty() ||
            init.digest != initial_digest(net.name(p)))
            add(ViolationKind::bad_initial, run.address(init.ref));
        for (std::size_t k = 1; k < line.size(); ++k) {
            const Node& n = line[k];
            std::string at = run.address(n.ref);
            if (n.time <= line[k - 1].time || n.time > run.horizon)
                add(ViolationKind::time_order, at);
            if (n.received.empty() && n.externals.empty())
                add(ViolationKind::spontaneous_action, at);
            std::vector<Digest> senders;
            for (MsgId m : n.received) {
                if (m >= run.messages.size()) {
                    add(ViolationKind::dangling, at + " receives an unknown message");
                    continue;
                }
                auto& msg = run.messages[m];
                msg_seen[m]++;
                if (msg.dst != p || msg.receiver != n.ref || msg.delivered != n.time)
                    add(ViolationKind::dangling, at + " receipt disagrees with the message record");
                if (run.contains(msg.sender))
                    senders.push_back(run.node(msg.sender).digest);
            }
            for (auto& x : n.externals) {
                auto it = ext_by_id.find(x);
                if (it == ext_by_id.end() || it->second->target != p || it->second->time != n.time)
                    add(ViolationKind::dangling, at + " receives external " + x + " out of place");
                if (!seen_ext.insert(x).second)
                    add(ViolationKind::dangling, "external " + x + " delivered twice");
            }
            std::vector<ProcId> dsts;
            for (MsgId m : n.sent) {
                if (m >= run.messages.size() || run.messages[m].sender != n.ref || run.messages[m].sent != n.time) {
                    add(ViolationKind::ffip, at + " send record disagrees");
                    continue;
                }
                dsts.push_back(run.messages[m].dst);
            }
            std::sort(dsts.begin(), dsts.end());
            if (dsts != net.out(p))
                add(ViolationKind::ffip, at + " does not send its state on every outgoing channel");
            if (n.digest != step_digest(net.name(p), line[k - 1].digest, senders, n.externals))
                add(ViolationKind::digest_mismatch, at);
        }
    }
    for (auto& e : run.externals)
        if (!seen_ext.count(e.id))
            add(ViolationKind::dangling, "external " + e.id + " never delivered");

    for (auto& m : run.messages) {
        const Channel* c = net.channel(m.sender.proc, m.dst);
        if (!c || !run.contains(m.sender)) {
            add(ViolationKind::dangling, "message on a missing channel");
            continue;
        }
        std::string what = run.address(m.sender) + "->" + net.name(m.dst);
        if (m.receiver) {
            if (msg_seen[m.id] != 1)
                add(ViolationKind::dangling, what + " receipt not recorded once");
            Time d = *m.delivered - m.sent;
            if (d < c->lower)
                add(ViolationKind::early_delivery, what);
            if (d > c->upper)
                add(ViolationKind::late_delivery, what);
        } else if (m.sent + c->upper <= run.horizon) {
            add(ViolationKind::missed_delivery, what);
        }
    }
    return out;
}

} // namespace bcm
