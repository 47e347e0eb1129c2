#include "mdtool/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "mdtool/errors.hpp"

namespace mdtool {

std::size_t oracle_limit() {
    static const std::size_t limit = [] {
        const char* env = std::getenv("MDTOOL_MAX_N");
        if (!env || !*env) return kDefaultOracleLimit;
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0') return kDefaultOracleLimit;
        if (v < 1) return std::size_t{1};
        if (v > static_cast<long>(kHardOracleLimit)) return kHardOracleLimit;
        return static_cast<std::size_t>(v);
    }();
    return limit;
}

VertexMask full_mask(const Graph& g) {
    if (g.size() > 64) throw SizeLimitError("vertex sets support at most 64 vertices");
    if (g.size() == 64) return ~VertexMask{0};
    return (VertexMask{1} << g.size()) - 1;
}

VertexMask labels_to_mask(const Graph& g, const std::vector<std::string>& labels) {
    VertexMask m = 0;
    for (const auto& l : labels) {
        VertexId v = g.require(l);
        if (v >= 64) throw SizeLimitError("vertex sets support at most 64 vertices");
        m |= VertexMask{1} << v;
    }
    return m;
}

std::vector<VertexId> mask_vertices(VertexMask m) {
    std::vector<VertexId> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

std::vector<std::string> mask_labels(const Graph& g, VertexMask m) {
    std::vector<std::string> out;
    for (VertexId v : mask_vertices(m)) out.push_back(g.label(v));
    return out;
}

std::string format_set(const Graph& g, VertexMask m) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (VertexId v : mask_vertices(m)) {
        if (!first) out << ',';
        out << g.label(v);
        first = false;
    }
    out << '}';
    return out.str();
}

namespace {

// Adjacency rows as bitmasks; requires n <= 64.
std::vector<VertexMask> adjacency_masks(const Graph& g) {
    full_mask(g);  // size guard
    std::vector<VertexMask> rows(g.size(), 0);
    for (auto [u, v] : g.edges()) {
        rows[static_cast<std::size_t>(u)] |= VertexMask{1} << v;
        rows[static_cast<std::size_t>(v)] |= VertexMask{1} << u;
    }
    return rows;
}

void check_enumerable(const Graph& g, std::size_t max_n) {
    const std::size_t cap = std::min(max_n, kHardOracleLimit);
    if (g.size() > cap)
        throw SizeLimitError("graph has " + std::to_string(g.size()) +
                             " vertices; enumeration limit is " + std::to_string(cap));
}

bool overlaps(VertexMask a, VertexMask b) {
    VertexMask i = a & b;
    return i != 0 && i != a && i != b;
}

}  // namespace

std::optional<Distinguisher> find_distinguisher(const Graph& g, VertexMask m) {
    if (m == 0) throw std::invalid_argument("empty vertex set");
    const VertexMask full = full_mask(g);
    if ((m & ~full) != 0) throw std::invalid_argument("set contains unknown vertices");
    const auto rows = adjacency_masks(g);
    for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v) {
        if (m & (VertexMask{1} << v)) continue;
        const VertexMask hit = rows[static_cast<std::size_t>(v)] & m;
        if (hit != 0 && hit != m) {
            return Distinguisher{v, std::countr_zero(hit), std::countr_zero(m & ~hit)};
        }
    }
    return std::nullopt;
}

bool is_module(const Graph& g, VertexMask m) { return !find_distinguisher(g, m).has_value(); }

std::vector<VertexMask> all_modules(const Graph& g, std::size_t max_n) {
    check_enumerable(g, max_n);
    const auto rows = adjacency_masks(g);
    const VertexMask full = full_mask(g);
    std::vector<VertexMask> out;
    for (VertexMask m = 1; m <= full && m != 0; ++m) {
        bool module = true;
        for (VertexId v = 0; module && v < static_cast<VertexId>(g.size()); ++v) {
            if (m & (VertexMask{1} << v)) continue;
            const VertexMask hit = rows[static_cast<std::size_t>(v)] & m;
            if (hit != 0 && hit != m) module = false;
        }
        if (module) out.push_back(m);
    }
    return out;
}

std::vector<VertexMask> strong_modules(const Graph& g, std::size_t max_n) {
    const auto modules = all_modules(g, max_n);
    std::vector<VertexMask> out;
    for (VertexMask m : modules) {
        bool strong = true;
        for (VertexMask other : modules) {
            if (overlaps(m, other)) {
                strong = false;
                break;
            }
        }
        if (strong) out.push_back(m);
    }
    return out;
}

NodeKind quotient_kind(const Graph& g, const std::vector<VertexMask>& parts) {
    if (parts.size() < 2) throw std::invalid_argument("quotient needs at least two parts");
    VertexMask whole = 0;
    for (VertexMask p : parts) {
        if (p == 0) throw std::invalid_argument("empty part");
        if (p & whole) throw std::invalid_argument("parts are not disjoint");
        whole |= p;
    }
    if ((whole & ~full_mask(g)) != 0) throw std::invalid_argument("parts contain unknown vertices");
    const auto rows = adjacency_masks(g);
    for (VertexMask p : parts) {
        for (VertexId v : mask_vertices(whole & ~p)) {
            const VertexMask hit = rows[static_cast<std::size_t>(v)] & p;
            if (hit != 0 && hit != p)
                throw std::invalid_argument("part " + format_set(g, p) +
                                            " is not a module of the induced subgraph");
        }
    }
    bool any_edge = false;
    bool all_edges = true;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            const VertexId u = std::countr_zero(parts[i]);
            const VertexId v = std::countr_zero(parts[j]);
            if (g.adjacent(u, v)) any_edge = true;
            else all_edges = false;
        }
    }
    if (all_edges) return NodeKind::Series;
    if (!any_edge) return NodeKind::Parallel;
    return NodeKind::Prime;
}

namespace {

MDNode build_node(const Graph& g, VertexMask set,
                  const std::vector<std::vector<VertexMask>>& children_of,
                  const std::vector<VertexMask>& sets, std::size_t index) {
    if (std::popcount(set) == 1) {
        MDNode leaf;
        leaf.kind = NodeKind::Leaf;
        leaf.leaf = std::countr_zero(set);
        return leaf;
    }
    MDNode node;
    node.kind = quotient_kind(g, children_of[index]);
    for (VertexMask child : children_of[index]) {
        const auto it = std::find(sets.begin(), sets.end(), child);
        node.children.push_back(
            build_node(g, child, children_of, sets, static_cast<std::size_t>(it - sets.begin())));
    }
    return node;
}

}  // namespace

MDTree build_md_tree(const Graph& g, std::size_t max_n) {
    if (g.size() == 0) throw std::invalid_argument("empty graph has no decomposition tree");
    auto sets = strong_modules(g, max_n);
    // Parent of S = the smallest strong module properly containing S; the
    // supersets of S in a laminar family form a chain, so it is unique.
    std::vector<std::vector<VertexMask>> children_of(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::size_t parent = sets.size();
        int parent_size = -1;
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (i == j || (sets[i] & sets[j]) != sets[i] || sets[i] == sets[j]) continue;
            const int size = std::popcount(sets[j]);
            if (parent == sets.size() || size < parent_size) {
                parent = j;
                parent_size = size;
            }
        }
        if (parent != sets.size()) children_of[parent].push_back(sets[i]);
    }
    for (auto& kids : children_of)
        std::sort(kids.begin(), kids.end(), [](VertexMask a, VertexMask b) {
            return std::countr_zero(a) < std::countr_zero(b);
        });
    const VertexMask full = full_mask(g);
    const auto root_it = std::find(sets.begin(), sets.end(), full);
    return MDTree{build_node(g, full, children_of, sets,
                             static_cast<std::size_t>(root_it - sets.begin()))};
}

std::string_view violation_code_name(ViolationCode c) {
    switch (c) {
        case ViolationCode::LeavesNotV: return "LEAVES_NOT_V";
        case ViolationCode::NotAModule: return "NOT_A_MODULE";
        case ViolationCode::WrongKind: return "WRONG_KIND";
        case ViolationCode::NotMaximal: return "NOT_MAXIMAL";
        case ViolationCode::Arity: return "ARITY";
    }
    return "?";
}

namespace {

void collect_leaf_counts(const MDNode& n, std::vector<int>& counts) {
    if (n.is_leaf()) {
        if (n.leaf >= 0 && static_cast<std::size_t>(n.leaf) < counts.size())
            ++counts[static_cast<std::size_t>(n.leaf)];
        return;
    }
    for (const auto& c : n.children) collect_leaf_counts(c, counts);
}

// Smallest module containing a seed pair, grown by adding every outside
// vertex that distinguishes the current set. Any module containing the
// seed must contain the closure, so a proper closure is a nontrivial module.
VertexMask pair_module_closure(const std::vector<VertexMask>& rows, VertexMask full,
                               VertexMask seed) {
    VertexMask s = seed;
    bool grew = true;
    while (grew) {
        grew = false;
        for (VertexId v : mask_vertices(full & ~s)) {
            const VertexMask hit = rows[static_cast<std::size_t>(v)] & s;
            if (hit != 0 && hit != s) {
                s |= VertexMask{1} << v;
                grew = true;
            }
        }
    }
    return s;
}

// Nontrivial module of the quotient graph over representatives, if any.
std::optional<std::vector<VertexId>> quotient_nontrivial_module(const Graph& g,
                                                                const std::vector<VertexId>& reps) {
    const std::size_t k = reps.size();
    std::vector<VertexMask> rows(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && g.adjacent(reps[i], reps[j])) rows[i] |= VertexMask{1} << j;
    const VertexMask full = (k == 64) ? ~VertexMask{0} : (VertexMask{1} << k) - 1;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const VertexMask seed = (VertexMask{1} << i) | (VertexMask{1} << j);
            const VertexMask closure = pair_module_closure(rows, full, seed);
            if (closure != full) {
                std::vector<VertexId> witness;
                for (VertexId q : mask_vertices(closure)) witness.push_back(reps[q]);
                return witness;
            }
        }
    }
    return std::nullopt;
}

struct TreeValidator {
    const Graph& g;
    std::vector<Violation> out;

    void check_node(const MDNode& n) {
        if (n.is_leaf()) return;
        const VertexMask set = leafset(n);
        if (n.children.size() < 2) {
            out.push_back({ViolationCode::Arity, set, {},
                           std::string(violation_code_name(ViolationCode::Arity)) + " " +
                               format_set(g, set) + ": internal node with " +
                               std::to_string(n.children.size()) + " child"});
        }
        if (auto d = find_distinguisher(g, set)) {
            out.push_back({ViolationCode::NotAModule, set,
                           {d->outside, d->adjacent_to, d->non_adjacent_to},
                           std::string(violation_code_name(ViolationCode::NotAModule)) + " " +
                               format_set(g, set) + ": " + g.label(d->outside) +
                               " is adjacent to " + g.label(d->adjacent_to) + " but not to " +
                               g.label(d->non_adjacent_to)});
        }
        check_kind(n, set);
        for (const auto& c : n.children) {
            if (!c.is_leaf() && c.kind == n.kind &&
                (n.kind == NodeKind::Series || n.kind == NodeKind::Parallel)) {
                out.push_back({ViolationCode::NotMaximal, leafset(c), {},
                               std::string(violation_code_name(ViolationCode::NotMaximal)) + " " +
                                   format_set(g, leafset(c)) + ": " +
                                   std::string(kind_name(c.kind)) + " child of a " +
                                   std::string(kind_name(n.kind)) + " parent"});
            }
            check_node(c);
        }
    }

    void check_kind(const MDNode& n, VertexMask set) {
        if (n.children.size() < 2) return;
        // The quotient is only well defined over disjoint child modules;
        // other violations already cover the remaining cases.
        std::vector<VertexMask> parts;
        VertexMask seen = 0;
        for (const auto& c : n.children) {
            const VertexMask m = leafset(c);
            if (m & seen) return;
            seen |= m;
            parts.push_back(m);
        }
        const auto rows = adjacency_masks(g);
        for (VertexMask p : parts)
            for (VertexId v : mask_vertices(set & ~p)) {
                const VertexMask hit = rows[static_cast<std::size_t>(v)] & p;
                if (hit != 0 && hit != p) return;  // child NOT_A_MODULE fires instead
            }
        std::vector<VertexId> reps;
        for (VertexMask p : parts) reps.push_back(std::countr_zero(p));
        switch (n.kind) {
            case NodeKind::Series: {
                std::vector<std::pair<VertexId, VertexId>> missing;
                for (std::size_t i = 0; i < reps.size(); ++i)
                    for (std::size_t j = i + 1; j < reps.size(); ++j)
                        if (!g.adjacent(reps[i], reps[j])) missing.emplace_back(reps[i], reps[j]);
                if (!missing.empty()) {
                    std::ostringstream msg;
                    msg << violation_code_name(ViolationCode::WrongKind) << ' '
                        << format_set(g, set)
                        << ": series node's quotient is not complete; non-adjacent pairs:";
                    std::vector<VertexId> witnesses;
                    for (auto [u, v] : missing) {
                        msg << " (" << g.label(u) << ',' << g.label(v) << ')';
                        witnesses.push_back(u);
                        witnesses.push_back(v);
                    }
                    out.push_back({ViolationCode::WrongKind, set, witnesses, msg.str()});
                }
                break;
            }
            case NodeKind::Parallel: {
                std::vector<std::pair<VertexId, VertexId>> present;
                for (std::size_t i = 0; i < reps.size(); ++i)
                    for (std::size_t j = i + 1; j < reps.size(); ++j)
                        if (g.adjacent(reps[i], reps[j])) present.emplace_back(reps[i], reps[j]);
                if (!present.empty()) {
                    std::ostringstream msg;
                    msg << violation_code_name(ViolationCode::WrongKind) << ' '
                        << format_set(g, set)
                        << ": parallel node's quotient is not edgeless; adjacent pairs:";
                    std::vector<VertexId> witnesses;
                    for (auto [u, v] : present) {
                        msg << " (" << g.label(u) << ',' << g.label(v) << ')';
                        witnesses.push_back(u);
                        witnesses.push_back(v);
                    }
                    out.push_back({ViolationCode::WrongKind, set, witnesses, msg.str()});
                }
                break;
            }
            case NodeKind::Prime: {
                const NodeKind qk = quotient_kind(g, parts);
                if (qk != NodeKind::Prime) {
                    out.push_back({ViolationCode::WrongKind, set, {},
                                   std::string(violation_code_name(ViolationCode::WrongKind)) +
                                       " " + format_set(g, set) + ": prime node's quotient is " +
                                       (qk == NodeKind::Series ? "complete" : "edgeless")});
                } else if (auto w = quotient_nontrivial_module(g, reps)) {
                    VertexMask wm = 0;
                    for (VertexId v : *w) wm |= VertexMask{1} << v;
                    out.push_back({ViolationCode::WrongKind, set, *w,
                                   std::string(violation_code_name(ViolationCode::WrongKind)) +
                                       " " + format_set(g, set) +
                                       ": prime node's quotient has a nontrivial module " +
                                       format_set(g, wm)});
                }
                break;
            }
            default: break;
        }
    }
};

}  // namespace

std::vector<Violation> validate_tree(const Graph& g, const MDTree& t) {
    TreeValidator v{g, {}};
    std::vector<int> counts(g.size(), 0);
    collect_leaf_counts(t.root, counts);
    std::vector<VertexId> missing;
    std::vector<VertexId> repeated;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) missing.push_back(static_cast<VertexId>(i));
        if (counts[i] > 1) repeated.push_back(static_cast<VertexId>(i));
    }
    if (!missing.empty() || !repeated.empty()) {
        std::ostringstream msg;
        msg << violation_code_name(ViolationCode::LeavesNotV)
            << " : leaves do not cover every vertex exactly once;";
        std::vector<VertexId> witnesses;
        if (!missing.empty()) {
            msg << " missing:";
            for (VertexId u : missing) {
                msg << ' ' << g.label(u);
                witnesses.push_back(u);
            }
        }
        if (!repeated.empty()) {
            msg << " repeated:";
            for (VertexId u : repeated) {
                msg << ' ' << g.label(u);
                witnesses.push_back(u);
            }
        }
        v.out.push_back({ViolationCode::LeavesNotV, leafset(t.root), witnesses, msg.str()});
    }
    v.check_node(t.root);
    return std::move(v.out);
}

bool dual_check(const Graph& g, std::size_t max_n) {
    const MDTree mine = build_md_tree(g, max_n);
    const MDTree co = build_md_tree(complement(g), max_n);
    return tree_equal(swap_series_parallel(mine), co);
}

}  // namespace mdtool
