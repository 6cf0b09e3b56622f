#pragma once
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcm/run.hpp"

namespace bcm {

// Happens-before over the basic nodes of one run, backed by vector clocks.
class Causality {
  public:
    explicit Causality(const Run& run);

    bool precedes(NodeRef a, NodeRef b) const;
    std::vector<NodeRef> past(NodeRef s) const;
    // Latest p-node in the past of s, if any.
    std::optional<NodeRef> boundary(NodeRef s, ProcId p) const;

  private:
    const Run* run_;
    std::vector<std::vector<std::vector<int>>> clock_;
};

bool happens_before(const Run& run, NodeRef a, NodeRef b);
std::vector<NodeRef> past(const Run& run, NodeRef s);

// <base, path>: the node reached from base by relaying along path.
struct GeneralNode {
    NodeRef base;
    Path path;

    bool operator==(const GeneralNode&) const = default;
};

GeneralNode singleton(NodeRef r);
GeneralNode extend(const GeneralNode& g, const Path& q);

enum class Resolution { resolved, pending, absent };

struct Resolved {
    Resolution status = Resolution::absent;
    NodeRef node;
};

Resolved resolve(const Run& run, const GeneralNode& g);
NodeRef basic(const Run& run, const GeneralNode& g);
Time time_of(const Run& run, const GeneralNode& g);

bool recognized(const Run& run, const GeneralNode& g, NodeRef sigma);

// Moves the base forward along the chain for as long as the chain stays in
// the past of sigma. The result denotes the same node in every run where
// sigma appears.
GeneralNode normalize(const Run& run, const GeneralNode& g, NodeRef sigma);

std::string address(const Run& run, const GeneralNode& g);
GeneralNode parse_general(const Run& run, std::string_view text);

// Run-independent handle: the base is named by its local state.
struct PortableNode {
    Digest base;
    Path path;

    auto operator<=>(const PortableNode&) const = default;
};

PortableNode portable(const Run& run, const GeneralNode& g);
std::optional<GeneralNode> locate(const Run& run, const PortableNode& p);

} // namespace bcm
