#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mdtool {

using VertexId = int;

// Undirected simple graph with an explicit, significant vertex order.
// Vertices are identified by their position in that order; labels are short
// printable tokens (no whitespace, parentheses or '#') unique within the
// graph. Populate with add_edge during construction and treat the value as
// frozen afterwards; every operation below is a pure function.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::vector<std::string> labels);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(VertexId v) const;
    std::optional<VertexId> find(std::string_view label) const;
    // Like find, but throws std::invalid_argument for unknown labels.
    VertexId require(std::string_view label) const;

    bool adjacent(VertexId u, VertexId v) const;
    void add_edge(VertexId u, VertexId v);
    void add_edge(std::string_view a, std::string_view b);

    std::size_t degree(VertexId v) const;
    std::size_t edge_count() const;
    std::vector<VertexId> neighbours(VertexId v) const;
    // Edges as (u,v) pairs with u < v, sorted lexicographically.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    bool operator==(const Graph& other) const;

private:
    void check_vertex(VertexId v) const;

    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> index_;
    std::vector<std::uint8_t> adj_;  // n*n symmetric matrix, no self-loops
};

// Graph file format (".mdg"):
//   line 1:           vertices: <label> <label> ...
//   following lines:  <label> <label>        (one edge per line)
// '#' starts a comment, blank lines are ignored. Declaration order is the
// vertex order. serialize_graph emits edges sorted by (min-index endpoint,
// max-index endpoint) and omits comments, so parse/serialize round-trips.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

Graph complement(const Graph& g);

// Vertex order inherited from g; edges restricted to the kept set.
Graph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep);
Graph induced_subgraph(const Graph& g, const std::vector<std::string>& labels);

// Vertex order is g1's order followed by g2's order. Label sets must be
// disjoint. join adds every cross edge, disjoint_union adds none.
Graph join(const Graph& g1, const Graph& g2);
Graph disjoint_union(const Graph& g1, const Graph& g2);

// BFS distance classes from x: the neighbourhood of x first, then each
// further distance class, with vertices unreachable from x grouped as one
// final layer. Empty classes are omitted, so when x has no neighbours the
// first entry (if any) is already a non-neighbour layer. x itself belongs
// to no layer.
std::vector<std::vector<VertexId>> bfs_layers(const Graph& g, VertexId x);

}  // namespace mdtool
