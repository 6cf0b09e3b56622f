#pragma once
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bcm/causality.hpp"

namespace bcm {

// One external input of the bounded system: delivered to target at some time
// in [earliest, latest], or not at all when optional.
struct ExternalSpec {
    std::string id;
    ProcId target = 0;
    Time earliest = 1;
    Time latest = 1;
    bool optional = false;
};

struct Limits {
    Time horizon = 10;
    std::size_t budget = 1000000;
};

// Visits each run prefix of the bounded system exactly once, in a fixed order.
// visit returns false to stop. Throws budget_exceeded past the budget.
std::size_t enumerate_runs(std::shared_ptr<const Network> net, const std::vector<ExternalSpec>& space,
                           const Limits& limits, const std::function<bool(const Run&)>& visit);

// Observed spread of time(theta2) - time(theta1) over the enumerated runs.
struct Gap {
    std::size_t runs = 0;
    std::size_t resolved = 0;
    std::optional<Weight> min_gap;
    bool missing = false;             // an endpoint never appears in some run
    std::optional<Weight> upper_cut;  // theta1 beyond horizon: gap is at most this
    std::optional<Weight> lower_cut;  // theta2 beyond horizon: gap is at least this
    bool both_pending = false;
    bool pinned = false;  // every minimizing run has an external at the end of its window
    // Runs that lack the viewpoint but could still grow into it after the
    // horizon.
    std::optional<Weight> open_min;  // smallest gap such a run could still show
    bool open_unknown = false;       // an endpoint of such a run is still unresolved
};

// A node together with its causal past, each past node described by what it
// received. Enough to tell whether a run prefix can still grow into it.
struct Viewpoint {
    struct Step {
        ProcId proc = 0;
        std::optional<Digest> pred;
        std::vector<Digest> senders;
        std::vector<std::string> externals;
    };
    Digest node;
    std::map<Digest, Step> past;
};

Viewpoint viewpoint(const Run& run, NodeRef sigma);

enum class Tri { yes, no, uncertain };

const char* to_string(Tri t);

Tri decide(const Gap& g, Weight x);

// With a condition, only runs containing that local state count. Without one,
// runs count when either endpoint's base appears.
Gap oracle_gap(std::shared_ptr<const Network> net, const std::vector<ExternalSpec>& space, const Limits& limits,
               const PortableNode& theta1, const PortableNode& theta2, const std::optional<Viewpoint>& condition);

Tri oracle_supports(std::shared_ptr<const Network> net, const std::vector<ExternalSpec>& space,
                    const Limits& limits, const PortableNode& theta1, const PortableNode& theta2, Weight x);

Tri oracle_knows(std::shared_ptr<const Network> net, const std::vector<ExternalSpec>& space, const Limits& limits,
                 const Viewpoint& sigma, const PortableNode& theta1, const PortableNode& theta2, Weight x);

} // namespace bcm
