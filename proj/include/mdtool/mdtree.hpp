#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mdtool/graph.hpp"

namespace mdtool {

enum class NodeKind { Leaf, Series, Parallel, Prime };

std::string_view kind_name(NodeKind k);

// Modular decomposition tree node. Leaves carry a vertex, internal nodes a
// kind and at least two children. Children are kept in an explicit order;
// two trees are considered equal up to child permutation (tree_equal), and
// the canonical order sorts children by their minimum leaf id.
struct MDNode {
    NodeKind kind = NodeKind::Leaf;
    VertexId leaf = -1;
    std::vector<MDNode> children;

    bool is_leaf() const { return kind == NodeKind::Leaf; }
};

struct MDTree {
    MDNode root;
};

// Bitmask of the leaves under n. Requires leaf ids < 64.
std::uint64_t leafset(const MDNode& n);
VertexId min_leaf(const MDNode& n);
std::size_t leaf_count(const MDNode& n);

void canonicalize(MDNode& n);
MDTree canonical(const MDTree& t);

bool tree_equal(const MDTree& a, const MDTree& b);

// Same tree with series and parallel kinds exchanged (prime/leaf fixed).
MDTree swap_series_parallel(const MDTree& t);

// Tree text format: tree := <label> | "(" kind tree+ ")", kind one of
// series|parallel|prime. Kinds are case-insensitive on input, lowercase on
// output. serialize_tree keeps the stored child order;
// serialize_tree_canonical emits the canonical order.
MDTree parse_tree(std::string_view text, const Graph& g);
std::string serialize_tree(const MDTree& t, const Graph& g);
std::string serialize_tree_canonical(const MDTree& t, const Graph& g);

std::string tree_to_dot(const MDTree& t, const Graph& g);
std::string tree_to_json(const MDTree& t, const Graph& g);

}  // namespace mdtool
