#pragma once
#include <optional>
#include <vector>

#include "bcm/graph.hpp"

namespace bcm {

// Times indexed by graph vertex; vertices outside the domain are empty.
using Timing = std::vector<std::optional<Time>>;

bool is_valid_timing(const BoundsGraph& g, const Timing& t);
bool is_p_closed(const BoundsGraph& g, const std::vector<char>& member);

// Vertices of the basic graph with a path to sigma.
std::vector<char> reaching(const BoundsGraph& g, std::size_t sigma);

// Slowest consistent placement of everything with a path to sigma.
Timing slow_timing(const BoundsGraph& gb, std::size_t sigma);

// Replays run so that each timed node happens at its assigned time. Messages
// from timed senders to untimed receivers are dropped, so the horizon of the
// result ends before any of them would be due.
Run run_by_timing(const Run& run, const BoundsGraph& gb, const Timing& t);

struct FastTiming {
    BoundsGraph graph;  // extended graph of sigma
    std::size_t sigma = 0;
    std::size_t source = 0;
    Partition part;
    LongestPaths from_source;
    Timing times;
};

FastTiming fast_timing(const Run& run, NodeRef sigma, NodeRef source, Time gamma);

enum class DeliveryRule { past, chain, free, external };

struct FastRun {
    Run run;
    FastTiming timing;
    GeneralNode theta;  // normalized
    std::vector<DeliveryRule> rule;  // per message of run
};

// Run indistinguishable from the original at sigma in which theta's chain is
// as slow as allowed and everything reachable from its base is as early as
// the extended graph permits.
FastRun fast_run(const Run& run, NodeRef sigma, const GeneralNode& theta, Time gamma, Time horizon);

} // namespace bcm
