#pragma once
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bcm/network.hpp"

namespace bcm {

// Canonical encoding of a local state. Two nodes carry equal digests exactly
// when they hold the same local state, in this run or any other.
struct Digest {
    std::array<std::uint8_t, 16> bytes{};

    auto operator<=>(const Digest&) const = default;
    std::string hex() const;
};

Digest initial_digest(const std::string& proc);
Digest step_digest(const std::string& proc, const Digest& pred, const std::vector<Digest>& senders,
                   const std::vector<std::string>& externals);

// Address of a basic node inside one run: the index-th state of proc (0 is initial).
struct NodeRef {
    ProcId proc = 0;
    std::uint32_t index = 0;

    auto operator<=>(const NodeRef&) const = default;
};

struct External {
    std::string id;
    ProcId target = 0;
    Time time = 1;
};

using MsgId = std::uint32_t;

struct Message {
    MsgId id = 0;
    NodeRef sender;
    ProcId dst = 0;
    Time sent = 0;
    std::optional<NodeRef> receiver;
    std::optional<Time> delivered;
};

struct Node {
    NodeRef ref;
    Time time = 0;
    Digest digest;
    std::vector<MsgId> received;
    std::vector<std::string> externals;
    std::vector<MsgId> sent;
};

// A finite prefix [0, horizon] of a run under the full-information protocol.
// Messages still in transit at the horizon have no receiver.
struct Run {
    std::shared_ptr<const Network> net;
    Time horizon = 0;
    std::vector<std::vector<Node>> lines;
    std::vector<Message> messages;
    std::vector<External> externals;
    std::map<Digest, NodeRef> index;

    const Network& network() const { return *net; }
    const Node& node(NodeRef r) const;
    bool contains(NodeRef r) const;
    std::optional<NodeRef> find(const Digest& d) const;
    std::optional<MsgId> sent_to(NodeRef r, ProcId dst) const;
    std::vector<NodeRef> nodes() const;
    std::size_t node_count() const;
    bool truncated() const;

    std::string address(NodeRef r) const;
    NodeRef parse_address(std::string_view text) const;
};

// Called once per message at its send time; returns the delivery time, or
// nothing to leave it undelivered within the horizon.
using Decider = std::function<std::optional<Time>(const Run&, const Message&)>;

Run simulate(std::shared_ptr<const Network> net, std::vector<External> externals, Time horizon,
             const Decider& decide);

enum class Policy { earliest, latest, random, none };

struct Schedule {
    Policy policy = Policy::latest;
    std::uint64_t seed = 0;
    std::map<std::pair<NodeRef, ProcId>, Time> fixed;
};

Run execute(std::shared_ptr<const Network> net, std::vector<External> externals, const Schedule& schedule,
            Time horizon);

// Builds the run given by an explicit delivery table; every entry must name a
// message that is actually sent.
Run synthesize_run(std::shared_ptr<const Network> net, std::vector<External> externals,
                   const std::map<std::pair<NodeRef, ProcId>, Time>& deliveries, Time horizon);

// Continues a prefix to a later horizon: recorded deliveries keep their
// times, everything else follows the schedule's policy.
Run extend_run(const Run& run, Time horizon, const Schedule& schedule);

enum class ViolationKind {
    early_delivery,
    late_delivery,
    missed_delivery,
    spontaneous_action,
    external_at_zero,
    bad_initial,
    time_order,
    ffip,
    digest_mismatch,
    dangling,
};

const char* to_string(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::string detail;
};

std::vector<Violation> validate(const Run& run);

} // namespace bcm
