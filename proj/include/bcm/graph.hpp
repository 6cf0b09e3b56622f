#pragma once
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcm/causality.hpp"

namespace bcm {

enum class VertexKind { basic, aux };

struct Vertex {
    VertexKind kind = VertexKind::basic;
    NodeRef node;  // basic vertices
    ProcId proc = 0;
};

enum class EdgeKind {
    successor,   // consecutive nodes on one timeline, weight 1
    lower,       // sender -> receiver, weight L
    upper,       // receiver -> sender, weight -U
    boundary,    // latest past i-node -> psi_i, weight 1
    unreceived,  // psi_j -> past sender whose message to j is not received in the past, weight -U
    aux_channel, // psi_j -> psi_i for each channel (i, j), weight -U
};

struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    Weight weight = 0;
    EdgeKind kind = EdgeKind::successor;
};

using VertexPath = std::vector<std::size_t>;

class BoundsGraph {
  public:
    std::size_t add_basic(NodeRef r);
    std::size_t add_aux(ProcId p);
    // Parallel edges collapse to the heaviest (tightest) constraint.
    void add_edge(std::size_t from, std::size_t to, Weight w, EdgeKind kind);

    std::size_t size() const { return vertices_.size(); }
    const Vertex& vertex(std::size_t v) const { return vertices_.at(v); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_.at(v); }
    const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_.at(v); }
    const Edge* edge(std::size_t from, std::size_t to) const;

    std::optional<std::size_t> find(NodeRef r) const;
    std::optional<std::size_t> find_aux(ProcId p) const;
    std::size_t at(NodeRef r) const;

    std::string label(std::size_t v, const Run& run) const;
    Weight path_weight(const VertexPath& p) const;

  private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
    std::map<NodeRef, std::size_t> basic_;
    std::map<ProcId, std::size_t> aux_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_;
};

BoundsGraph basic_graph(const Run& run);
BoundsGraph local_graph(const Run& run, NodeRef sigma);
BoundsGraph extended_graph(const Run& run, NodeRef sigma);

struct LongestPaths {
    std::size_t anchor = 0;
    bool reverse = false;
    std::vector<std::optional<Weight>> dist;
    std::vector<std::optional<std::size_t>> next;

    // Forward: the path anchor -> v. Reverse: the path v -> anchor.
    VertexPath path(std::size_t v) const;
};

// Bellman-Ford over the longest-path semiring. Throws positive_cycle.
LongestPaths longest_from(const BoundsGraph& g, std::size_t src);
LongestPaths longest_to(const BoundsGraph& g, std::size_t dst);

bool has_positive_cycle(const BoundsGraph& g);

struct Partition {
    std::vector<char> reach;
    std::vector<std::size_t> v_yes, v_no, a_yes, a_no;
};

Partition partition(const BoundsGraph& g, std::size_t from);

std::string to_dot(const BoundsGraph& g, const Run& run);

} // namespace bcm
