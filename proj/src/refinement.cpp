#include "mdtool/refinement.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mdtool/errors.hpp"

namespace mdtool {

int OrderedForest::add_node(ForestNode n) {
    arena_.push_back(std::move(n));
    return static_cast<int>(arena_.size() - 1);
}

void OrderedForest::push_entry_left(int root) {
    entries_.insert(entries_.begin() + static_cast<std::ptrdiff_t>(pivot_pos_), root);
    ++pivot_pos_;
}

void OrderedForest::push_entry_right(int root) { entries_.push_back(root); }

void OrderedForest::replace_entry(std::size_t position, int first, int second) {
    entries_.at(position) = first;
    entries_.insert(entries_.begin() + static_cast<std::ptrdiff_t>(position) + 1, second);
    if (position < pivot_pos_) ++pivot_pos_;
}

std::size_t OrderedForest::entry_position(int root) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] == root) return i;
    throw std::logic_error("node is not a forest entry");
}

VertexMask OrderedForest::node_leafset(int id) const {
    const ForestNode& n = node(id);
    if (n.kind == NodeKind::Leaf) return VertexMask{1} << n.leaf;
    VertexMask m = 0;
    for (int c : n.children) m |= node_leafset(c);
    return m;
}

std::size_t OrderedForest::entry_of_vertex(VertexId v) const {
    if (v == pivot_) return pivot_pos_;
    const VertexMask bit = VertexMask{1} << v;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] == kPivotSlot) continue;
        if (node_leafset(entries_[i]) & bit) return i;
    }
    throw std::invalid_argument("vertex is not a leaf of the forest");
}

namespace {

void collect_leaves(const OrderedForest& f, int id, std::vector<VertexId>& out) {
    const ForestNode& n = f.node(id);
    if (n.kind == NodeKind::Leaf) {
        out.push_back(n.leaf);
        return;
    }
    for (int c : n.children) collect_leaves(f, c, out);
}

}  // namespace

std::vector<VertexId> OrderedForest::leaves_in_order() const {
    std::vector<VertexId> out;
    for (int e : entries_)
        if (e != kPivotSlot) collect_leaves(*this, e, out);
    return out;
}

VertexMask OrderedForest::leaves_left_of_pivot() const {
    VertexMask m = 0;
    for (std::size_t i = 0; i < pivot_pos_; ++i)
        if (entries_[i] != kPivotSlot) m |= node_leafset(entries_[i]);
    return m;
}

VertexMask OrderedForest::leaves_right_of_pivot() const {
    VertexMask m = 0;
    for (std::size_t i = pivot_pos_ + 1; i < entries_.size(); ++i)
        if (entries_[i] != kPivotSlot) m |= node_leafset(entries_[i]);
    return m;
}

namespace {

void collect_nodes(const OrderedForest& f, int id, std::vector<int>& out) {
    out.push_back(id);
    for (int c : f.node(id).children) collect_nodes(f, c, out);
}

}  // namespace

std::vector<int> OrderedForest::reachable_nodes() const {
    std::vector<int> out;
    for (int e : entries_)
        if (e != kPivotSlot) collect_nodes(*this, e, out);
    return out;
}

bool OrderedForest::has_marked_child(int id) const {
    for (int c : node(id).children)
        if (node(c).marks != 0) return true;
    return false;
}

std::vector<MarkBits> OrderedForest::mark_snapshot() const {
    std::vector<MarkBits> out;
    out.reserve(arena_.size());
    for (const auto& n : arena_) out.push_back(n.marks);
    return out;
}

namespace {

std::string mark_suffix(MarkBits m) {
    switch (m & (kLeft | kRight)) {
        case kLeft: return "*L";
        case kRight: return "*R";
        case kLeft | kRight: return "*LR";
        default: return "";
    }
}

void render_node(const Graph& g, const OrderedForest& f, int id, std::ostringstream& out) {
    const ForestNode& n = f.node(id);
    if (n.kind == NodeKind::Leaf) {
        out << g.label(n.leaf) << mark_suffix(n.marks);
        return;
    }
    out << '(' << kind_name(n.kind) << mark_suffix(n.marks);
    for (int c : n.children) {
        out << ' ';
        render_node(g, f, c, out);
    }
    out << ')';
}

}  // namespace

std::string render_forest(const Graph& g, const OrderedForest& f) {
    std::ostringstream out;
    bool first = true;
    for (int e : f.entries()) {
        if (!first) out << ' ';
        first = false;
        if (e == OrderedForest::kPivotSlot) out << '[' << g.label(f.pivot()) << ']';
        else render_node(g, f, e, out);
    }
    return out.str();
}

std::string format_event(const Graph& g, const RefineEvent& e, std::size_t step) {
    std::ostringstream out;
    out << step << ' ';
    switch (e.kind) {
        case EventKind::VertexProcessed:
            out << "vertex-processed v=" << g.label(e.vertex) << " X=" << format_set(g, e.set);
            break;
        case EventKind::SubtreeIdentified:
            out << "subtree-identified root=" << format_set(g, e.set);
            break;
        case EventKind::SplitApplied:
            out << "split-applied parent=" << format_set(g, e.parent_set)
                << " A=" << format_set(g, e.a_set) << " B=" << format_set(g, e.b_set)
                << " dir=" << (e.dir == kLeft ? "L" : "R")
                << " at-root=" << (e.at_root ? "yes" : "no");
            break;
        case EventKind::NodeMarked:
            out << "node-marked node=" << format_set(g, e.set)
                << " dir=" << (e.dir == kLeft ? "L" : "R");
            break;
        case EventKind::PrimePropagation:
            out << "prime-propagation parent=" << format_set(g, e.parent_set)
                << " child=" << format_set(g, e.set) << " dir=" << (e.dir == kLeft ? "L" : "R");
            break;
    }
    return out.str();
}

std::string format_trace(const Graph& g, const std::vector<RefineEvent>& events) {
    std::ostringstream out;
    for (std::size_t i = 0; i < events.size(); ++i)
        out << format_event(g, events[i], i + 1) << '\n';
    return out.str();
}

namespace {

// Converts an oracle tree into arena nodes, mapping induced-subgraph leaf
// ids back to the host graph's ids.
int insert_tree(OrderedForest& f, const MDNode& n, const std::vector<VertexId>& orig_ids) {
    ForestNode fn;
    fn.kind = n.kind;
    if (n.is_leaf()) {
        fn.leaf = orig_ids.at(static_cast<std::size_t>(n.leaf));
        return f.add_node(std::move(fn));
    }
    const int id = f.add_node(std::move(fn));
    for (const auto& c : n.children) {
        const int child = insert_tree(f, c, orig_ids);
        f.mutable_node(child).parent = id;
        f.mutable_node(id).children.push_back(child);
    }
    return id;
}

}  // namespace

OrderedForest build_ordered_forest(const Graph& g, VertexId pivot, std::size_t max_n) {
    if (pivot < 0 || static_cast<std::size_t>(pivot) >= g.size())
        throw std::invalid_argument("unknown pivot vertex id");
    full_mask(g);  // bitmask size guard
    OrderedForest forest(pivot);
    const auto layers = bfs_layers(g, pivot);
    const bool has_neighbourhood = !layers.empty() && g.adjacent(pivot, layers[0][0]);
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const MDTree t = build_md_tree(induced_subgraph(g, layers[i]), max_n);
        const int root = insert_tree(forest, t.root, layers[i]);
        if (i == 0 && has_neighbourhood) forest.push_entry_left(root);
        else forest.push_entry_right(root);
    }
    return forest;
}

ActiveEdgeSet active_edges(const Graph& g, VertexId pivot) {
    const auto layers = bfs_layers(g, pivot);
    std::vector<int> layer_of(g.size(), -1);
    for (std::size_t i = 0; i < layers.size(); ++i)
        for (VertexId v : layers[i]) layer_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
    ActiveEdgeSet out;
    for (auto [u, v] : g.edges()) {
        if (u == pivot || v == pivot ||
            layer_of[static_cast<std::size_t>(u)] != layer_of[static_cast<std::size_t>(v)])
            out.edges.emplace_back(u, v);
    }
    return out;
}

namespace {

struct Refiner {
    OrderedForest& f;
    std::vector<RefineEvent>& events;
    Direction side;

    void mark(int id, int propagated_from) {
        ForestNode& n = f.mutable_node(id);
        if (n.marks & side) return;
        const VertexMask set = f.node_leafset(id);
        n.marks |= side;
        RefineEvent e;
        e.dir = side;
        e.set = set;
        if (propagated_from < 0) {
            e.kind = EventKind::NodeMarked;
        } else {
            e.kind = EventKind::PrimePropagation;
            e.parent_set = f.node_leafset(propagated_from);
        }
        events.push_back(e);
        // A prime node passes any new mark on to all of its children.
        if (n.kind == NodeKind::Prime)
            for (int c : f.node(id).children) mark(c, id);
    }

    void mark_ancestors(int id) {
        for (int a = f.node(id).parent; a >= 0; a = f.node(a).parent) mark(a, -1);
    }

    // Single tree in `part` stays as is; several are unified under a new
    // root carrying the split parent's kind.
    int unify(const std::vector<int>& part, NodeKind kind) {
        if (part.size() == 1) return part[0];
        ForestNode fresh;
        fresh.kind = kind;
        fresh.children = part;
        const int id = f.add_node(std::move(fresh));
        for (int c : part) f.mutable_node(c).parent = id;
        return id;
    }

    void run(VertexMask x_set) {
        // Maximal subtrees whose leaves all lie in X, in traversal order.
        std::vector<int> maximal;
        for (int e : f.entries()) {
            if (e == OrderedForest::kPivotSlot) continue;
            find_maximal(e, x_set, maximal);
        }
        std::vector<int> parents;
        std::vector<std::vector<int>> grouped;
        for (int t : maximal) {
            const int p = f.node(t).parent;
            if (p < 0) continue;  // a whole entry inside X: nothing to split
            const auto it = std::find(parents.begin(), parents.end(), p);
            if (it == parents.end()) {
                parents.push_back(p);
                grouped.push_back({t});
            } else {
                grouped[static_cast<std::size_t>(it - parents.begin())].push_back(t);
            }
        }
        for (std::size_t i = 0; i < parents.size(); ++i)
            if (f.node(parents[i]).kind != NodeKind::Prime) split(parents[i], grouped[i]);
        for (std::size_t i = 0; i < parents.size(); ++i) {
            const int p = parents[i];
            if (f.node(p).kind != NodeKind::Prime) continue;
            mark(p, -1);
            for (int c : f.node(p).children) mark(c, -1);
            mark_ancestors(p);
        }
    }

    void find_maximal(int id, VertexMask x_set, std::vector<int>& maximal) {
        const VertexMask set = f.node_leafset(id);
        if ((set & x_set) == 0) return;
        if ((set & ~x_set) == 0) {
            maximal.push_back(id);
            RefineEvent e;
            e.kind = EventKind::SubtreeIdentified;
            e.set = set;
            events.push_back(e);
            return;
        }
        for (int c : f.node(id).children) find_maximal(c, x_set, maximal);
    }

    void split(int p, const std::vector<int>& in_x) {
        const VertexMask parent_set = f.node_leafset(p);
        const NodeKind parent_kind = f.node(p).kind;
        const bool at_root = f.node(p).parent < 0;
        std::vector<int> a_part;
        std::vector<int> b_part;
        for (int c : f.node(p).children) {
            if (std::find(in_x.begin(), in_x.end(), c) != in_x.end()) a_part.push_back(c);
            else b_part.push_back(c);
        }
        // B cannot be empty: a parent with every child inside X would itself
        // be a maximal subtree, not a parent of one.
        const int ta = unify(a_part, parent_kind);
        const int tb = unify(b_part, parent_kind);
        const int first = (side == kLeft) ? ta : tb;
        const int second = (side == kLeft) ? tb : ta;
        if (at_root) {
            f.replace_entry(f.entry_position(p), first, second);
            f.mutable_node(ta).parent = -1;
            f.mutable_node(tb).parent = -1;
            f.mutable_node(p).alive = false;
            f.mutable_node(p).children.clear();
        } else {
            f.mutable_node(p).children = {first, second};
            f.mutable_node(ta).parent = p;
            f.mutable_node(tb).parent = p;
        }
        RefineEvent e;
        e.kind = EventKind::SplitApplied;
        e.parent_set = parent_set;
        e.a_set = f.node_leafset(ta);
        e.b_set = f.node_leafset(tb);
        e.dir = side;
        e.at_root = at_root;
        events.push_back(e);
        mark(ta, -1);
        mark(tb, -1);
        mark_ancestors(ta);
    }
};

}  // namespace

void refine_by_set(OrderedForest& forest, VertexMask x_set, Direction side,
                   std::vector<RefineEvent>& events) {
    if (x_set == 0) throw std::invalid_argument("refinement set is empty");
    if (x_set & (VertexMask{1} << forest.pivot()))
        throw std::invalid_argument("refinement set contains the pivot");
    Refiner{forest, events, side}.run(x_set);
}

RefineRun::RefineRun(const Graph& g, VertexId pivot, std::vector<VertexId> order,
                     std::size_t max_n)
    : forest_(build_ordered_forest(g, pivot, max_n)), order_(std::move(order)) {
    if (order_.empty()) order_ = default_order(forest_);
    std::vector<bool> seen(g.size(), false);
    for (VertexId v : order_) {
        if (v < 0 || static_cast<std::size_t>(v) >= g.size() || v == pivot || seen[v])
            throw std::invalid_argument("order is not a permutation of the non-pivot vertices");
        seen[static_cast<std::size_t>(v)] = true;
    }
    if (order_.size() != g.size() - 1)
        throw std::invalid_argument("order is not a permutation of the non-pivot vertices");
    active_targets_.assign(g.size(), 0);
    for (auto [u, v] : active_edges(g, pivot).edges) {
        active_targets_[static_cast<std::size_t>(u)] |= VertexMask{1} << v;
        active_targets_[static_cast<std::size_t>(v)] |= VertexMask{1} << u;
    }
}

bool RefineRun::step() {
    if (done()) return false;
    const VertexId v = order_[next_++];
    const VertexMask pivot_bit = VertexMask{1} << forest_.pivot();
    const VertexMask x_set = active_targets_[static_cast<std::size_t>(v)] & ~pivot_bit;
    RefineEvent e;
    e.kind = EventKind::VertexProcessed;
    e.vertex = v;
    e.set = x_set;
    events_.push_back(e);
    if (x_set == 0) return !done();
    const bool v_left = forest_.entry_of_vertex(v) < forest_.pivot_position();
    if (v_left) {
        refine_by_set(forest_, x_set, kLeft, events_);
    } else {
        const VertexMask left = x_set & forest_.leaves_left_of_pivot();
        const VertexMask right = x_set & forest_.leaves_right_of_pivot();
        if (left) refine_by_set(forest_, left, kLeft, events_);
        if (right) refine_by_set(forest_, right, kRight, events_);
    }
    return !done();
}

std::vector<VertexId> default_order(const OrderedForest& f) { return f.leaves_in_order(); }

RefineResult refine_all(const Graph& g, VertexId pivot, const std::vector<VertexId>& order,
                        std::size_t max_n) {
    RefineRun run(g, pivot, order, max_n);
    run.run();
    return RefineResult{run.forest(), run.events()};
}

Lemma4Report lemma4_check(const Graph& g, VertexId pivot, const std::vector<VertexId>& order,
                          std::size_t max_n) {
    RefineRun run(g, pivot, order, max_n);
    run.run();
    const OrderedForest& forest = run.forest();

    const VertexMask pivot_bit = VertexMask{1} << pivot;
    std::vector<VertexMask> target;
    for (VertexMask m : strong_modules(g, max_n))
        if (!(m & pivot_bit)) target.push_back(m);

    std::vector<VertexMask> unmarked;
    std::vector<VertexMask> all_node_sets;
    for (int id : forest.reachable_nodes()) {
        const VertexMask set = forest.node_leafset(id);
        all_node_sets.push_back(set);
        if (!forest.has_marked_child(id)) unmarked.push_back(set);
    }
    std::sort(unmarked.begin(), unmarked.end());

    std::vector<VertexMask> necessary;
    for (VertexMask m : target) {
        const auto it = std::find(all_node_sets.begin(), all_node_sets.end(), m);
        if (it == all_node_sets.end()) continue;
        if (std::find(unmarked.begin(), unmarked.end(), m) == unmarked.end())
            necessary.push_back(m);
    }

    std::vector<Lemma4Report::ExactItem> exact;
    for (VertexMask m : unmarked)
        if (std::find(target.begin(), target.end(), m) == target.end())
            exact.push_back({m, false});
    for (VertexMask m : target)
        if (std::find(unmarked.begin(), unmarked.end(), m) == unmarked.end())
            exact.push_back({m, true});

    return Lemma4Report{std::move(unmarked), std::move(target), std::move(necessary),
                        std::move(exact), run.events(), forest};
}

}  // namespace mdtool
