#pragma once
#include <optional>
#include <string>
#include <vector>

#include "bcm/graph.hpp"

namespace bcm {

// Two-legged fork: base, head = base ⊙ head, tail = base ⊙ tail. Both legs
// start at the last process of the base path.
struct Fork {
    GeneralNode base;
    Path head;
    Path tail;

    bool operator==(const Fork&) const = default;
};

Fork trivial_fork(const GeneralNode& g);
GeneralNode head_of(const Fork& f);
GeneralNode tail_of(const Fork& f);
Weight fork_weight(const Network& net, const Fork& f);

enum class Join { joined, separated };

struct Zigzag {
    std::vector<Fork> forks;
    std::vector<Join> joins;  // joins[k] links forks[k] and forks[k+1]
};

Weight zigzag_weight(const Network& net, const Zigzag& z);

struct Check {
    bool ok = true;
    std::string reason;

    explicit operator bool() const { return ok; }
};

// Realized in run, endpoints land on the same basic nodes as from/to, and
// each join flag matches the nodes it links.
Check validate_zigzag(const Run& run, const Zigzag& z, const GeneralNode& from, const GeneralNode& to);

Check is_visible(const Run& run, NodeRef sigma, const Zigzag& z);

// Drops trivial forks that are joined to a neighbour and fuses joined forks
// that hang off one node. Weight, validity and visibility are unchanged;
// endpoints keep their basic nodes.
Zigzag simplify(Zigzag z);

// Builds a zigzag of the same weight from a path of basic vertices.
Zigzag zigzag_from_path(const Run& run, const BoundsGraph& g, const VertexPath& path, const GeneralNode& from,
                        const GeneralNode& to);

// Builds a sigma-visible zigzag from a constraint path of the extended graph.
// from must be normalized; the top head becomes target ⊙ suffix.
Zigzag visible_zigzag_from_constraint_path(const Run& run, const BoundsGraph& ge, const VertexPath& cpath,
                                           const GeneralNode& from, const GeneralNode& target,
                                           const Path& suffix);

// Re-addresses every base in another run through its local state.
std::optional<Zigzag> transplant(const Run& src, const Run& dst, const Zigzag& z);

} // namespace bcm
