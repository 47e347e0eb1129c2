#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdtool/graph.hpp"
#include "mdtool/mdtree.hpp"
#include "mdtool/oracle.hpp"

namespace mdtool {

// Direction marks accumulate on forest nodes during a refinement run and
// are never cleared.
enum Direction : unsigned { kLeft = 1u, kRight = 2u };
using MarkBits = unsigned;

struct ForestNode {
    NodeKind kind = NodeKind::Leaf;
    VertexId leaf = -1;
    std::vector<int> children;
    int parent = -1;
    MarkBits marks = 0;
    // Cleared when a split replaces this node; dead nodes keep their marks.
    bool alive = true;
};

// The ordered list of trees around a pivot: one tree per BFS layer, with the
// pivot occupying its own slot between the neighbourhood tree and the rest.
// Nodes live in a stable arena so marks keep their identity across splits.
class OrderedForest {
public:
    static constexpr int kPivotSlot = -1;

    explicit OrderedForest(VertexId pivot) : pivot_(pivot), entries_{kPivotSlot}, pivot_pos_(0) {}

    VertexId pivot() const { return pivot_; }
    std::size_t pivot_position() const { return pivot_pos_; }
    // Root node ids in order; kPivotSlot marks the pivot's slot.
    const std::vector<int>& entries() const { return entries_; }
    const ForestNode& node(int id) const { return arena_.at(static_cast<std::size_t>(id)); }
    std::size_t arena_size() const { return arena_.size(); }

    int add_node(ForestNode n);
    ForestNode& mutable_node(int id) { return arena_.at(static_cast<std::size_t>(id)); }
    // Appends an entry left (before) or right (after) of the pivot slot.
    void push_entry_left(int root);
    void push_entry_right(int root);
    void replace_entry(std::size_t position, int first, int second);
    std::size_t entry_position(int root) const;

    VertexMask node_leafset(int id) const;
    // Entry index (into entries()) of the tree containing v; the pivot maps
    // to the pivot slot.
    std::size_t entry_of_vertex(VertexId v) const;
    // Leaves of all entries left-to-right, pivot excluded.
    std::vector<VertexId> leaves_in_order() const;
    VertexMask leaves_left_of_pivot() const;
    VertexMask leaves_right_of_pivot() const;
    // Live node ids reachable from the entries, in traversal order.
    std::vector<int> reachable_nodes() const;
    bool has_marked_child(int id) const;
    // Marks per arena slot, dead nodes included; grows monotonically.
    std::vector<MarkBits> mark_snapshot() const;

private:
    VertexId pivot_;
    std::vector<ForestNode> arena_;
    std::vector<int> entries_;
    std::size_t pivot_pos_;
};

enum class EventKind { VertexProcessed, SubtreeIdentified, SplitApplied, NodeMarked, PrimePropagation };

struct RefineEvent {
    EventKind kind;
    VertexId vertex = -1;      // VertexProcessed
    VertexMask set = 0;        // X / subtree / marked node / propagated child
    VertexMask parent_set = 0; // SplitApplied: split parent; PrimePropagation: source
    VertexMask a_set = 0;      // SplitApplied
    VertexMask b_set = 0;      // SplitApplied
    MarkBits dir = 0;
    bool at_root = false;      // SplitApplied
};

std::string format_event(const Graph& g, const RefineEvent& e, std::size_t step);
// One line per event: "<step#> <event-kind> <payload>".
std::string format_trace(const Graph& g, const std::vector<RefineEvent>& events);
// Entries in the tree text format with *L/*R/*LR suffixes on marked nodes;
// the pivot slot renders as "[x]".
std::string render_forest(const Graph& g, const OrderedForest& f);

// Eq.-style initial forest: the decomposition tree of each BFS layer, with
// the neighbourhood tree left of the pivot and the remaining layers right,
// in layer order. Layer trees come from the brute-force oracle.
OrderedForest build_ordered_forest(const Graph& g, VertexId pivot,
                                   std::size_t max_n = oracle_limit());

// Edges incident to the pivot plus edges whose endpoints lie in different
// BFS layers; pairs normalized (u < v) and sorted.
struct ActiveEdgeSet {
    std::vector<std::pair<VertexId, VertexId>> edges;
};

ActiveEdgeSet active_edges(const Graph& g, VertexId pivot);

// One refinement of the forest by the set X: locate the maximal subtrees
// whose leaves all lie in X, split their non-prime parents into the
// children inside X and the rest (re-entering the forest in split order),
// mark the split roots and their ancestors, mark prime parents with all
// their children and ancestors. Any prime node that receives a new mark
// passes it on to all of its children.
void refine_by_set(OrderedForest& forest, VertexMask x_set, Direction side,
                   std::vector<RefineEvent>& events);

// Stepwise runner for the whole refinement pass; tests can inspect the
// forest between vertices.
class RefineRun {
public:
    RefineRun(const Graph& g, VertexId pivot, std::vector<VertexId> order,
              std::size_t max_n = oracle_limit());

    bool done() const { return next_ == order_.size(); }
    // Processes the next vertex of the order; returns false when finished.
    bool step();
    void run() { while (step()) {} }

    const OrderedForest& forest() const { return forest_; }
    const std::vector<RefineEvent>& events() const { return events_; }
    const std::vector<VertexId>& order() const { return order_; }

private:
    OrderedForest forest_;
    std::vector<VertexId> order_;
    std::vector<RefineEvent> events_;
    std::vector<VertexMask> active_targets_;  // per vertex: opposite endpoints of active edges
    std::size_t next_ = 0;
};

// Left-to-right leaf order of the initial forest; the default processing order.
std::vector<VertexId> default_order(const OrderedForest& f);

struct RefineResult {
    OrderedForest forest;
    std::vector<RefineEvent> events;
};

RefineResult refine_all(const Graph& g, VertexId pivot, const std::vector<VertexId>& order,
                        std::size_t max_n = oracle_limit());

// Correspondence check between unmarked-children forest nodes and the
// strong modules avoiding the pivot. The necessary direction flags strong
// modules whose surviving node has a marked child; the exact direction
// reports the full symmetric difference and is informational.
struct Lemma4Report {
    std::vector<VertexMask> unmarked_leafsets;
    std::vector<VertexMask> target_family;
    std::vector<VertexMask> violations_necessary;
    struct ExactItem {
        VertexMask set;
        bool missing;  // true: strong module without an unmarked node; false: extra node
    };
    std::vector<ExactItem> violations_exact;
    std::vector<RefineEvent> trace;
    OrderedForest final_forest;
};

Lemma4Report lemma4_check(const Graph& g, VertexId pivot, const std::vector<VertexId>& order,
                          std::size_t max_n = oracle_limit());

}  // namespace mdtool
