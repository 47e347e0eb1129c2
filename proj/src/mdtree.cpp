#include "mdtool/mdtree.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mdtool/errors.hpp"

namespace mdtool {

std::string_view kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::Leaf: return "leaf";
        case NodeKind::Series: return "series";
        case NodeKind::Parallel: return "parallel";
        case NodeKind::Prime: return "prime";
    }
    return "?";
}

std::uint64_t leafset(const MDNode& n) {
    if (n.is_leaf()) {
        if (n.leaf < 0 || n.leaf >= 64) throw SizeLimitError("leaf id out of bitmask range");
        return std::uint64_t{1} << n.leaf;
    }
    std::uint64_t m = 0;
    for (const auto& c : n.children) m |= leafset(c);
    return m;
}

VertexId min_leaf(const MDNode& n) {
    if (n.is_leaf()) return n.leaf;
    VertexId best = -1;
    for (const auto& c : n.children) {
        VertexId m = min_leaf(c);
        if (best < 0 || m < best) best = m;
    }
    return best;
}

std::size_t leaf_count(const MDNode& n) {
    if (n.is_leaf()) return 1;
    std::size_t total = 0;
    for (const auto& c : n.children) total += leaf_count(c);
    return total;
}

void canonicalize(MDNode& n) {
    for (auto& c : n.children) canonicalize(c);
    std::stable_sort(n.children.begin(), n.children.end(),
                     [](const MDNode& a, const MDNode& b) { return min_leaf(a) < min_leaf(b); });
}

MDTree canonical(const MDTree& t) {
    MDTree out = t;
    canonicalize(out.root);
    return out;
}

namespace {

bool node_equal(const MDNode& a, const MDNode& b) {
    if (a.kind != b.kind || a.leaf != b.leaf || a.children.size() != b.children.size())
        return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!node_equal(a.children[i], b.children[i])) return false;
    return true;
}

MDNode swap_node(const MDNode& n) {
    MDNode out = n;
    if (n.kind == NodeKind::Series) out.kind = NodeKind::Parallel;
    else if (n.kind == NodeKind::Parallel) out.kind = NodeKind::Series;
    out.children.clear();
    for (const auto& c : n.children) out.children.push_back(swap_node(c));
    return out;
}

}  // namespace

bool tree_equal(const MDTree& a, const MDTree& b) {
    MDTree ca = canonical(a);
    MDTree cb = canonical(b);
    return node_equal(ca.root, cb.root);
}

MDTree swap_series_parallel(const MDTree& t) { return MDTree{swap_node(t.root)}; }

namespace {

std::vector<std::string> tokenize_tree(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (c == '(' || c == ')') {
            if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
            tokens.emplace_back(1, c);
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

MDNode parse_node(const std::vector<std::string>& tokens, std::size_t& i, const Graph& g) {
    if (i >= tokens.size()) throw ParseError("unexpected end of tree text");
    if (tokens[i] == ")") throw ParseError("unexpected ')'");
    if (tokens[i] == "(") {
        ++i;
        if (i >= tokens.size()) throw ParseError("missing node kind after '('");
        std::string kind = lowercase(tokens[i]);
        MDNode node;
        if (kind == "series") node.kind = NodeKind::Series;
        else if (kind == "parallel") node.kind = NodeKind::Parallel;
        else if (kind == "prime") node.kind = NodeKind::Prime;
        else throw ParseError("unknown node kind '" + tokens[i] + "'");
        ++i;
        while (i < tokens.size() && tokens[i] != ")") node.children.push_back(parse_node(tokens, i, g));
        if (i >= tokens.size()) throw ParseError("missing ')'");
        ++i;  // consume ')'
        if (node.children.empty()) throw ParseError("internal node without children");
        return node;
    }
    auto v = g.find(tokens[i]);
    if (!v) throw ParseError("unknown leaf label '" + tokens[i] + "'");
    MDNode leaf;
    leaf.kind = NodeKind::Leaf;
    leaf.leaf = *v;
    ++i;
    return leaf;
}

void serialize_node(const MDNode& n, const Graph& g, std::ostringstream& out) {
    if (n.is_leaf()) {
        out << g.label(n.leaf);
        return;
    }
    out << '(' << kind_name(n.kind);
    for (const auto& c : n.children) {
        out << ' ';
        serialize_node(c, g, out);
    }
    out << ')';
}

}  // namespace

MDTree parse_tree(std::string_view text, const Graph& g) {
    auto tokens = tokenize_tree(text);
    if (tokens.empty()) throw ParseError("empty tree text");
    std::size_t i = 0;
    MDTree t{parse_node(tokens, i, g)};
    if (i != tokens.size()) throw ParseError("trailing tokens after tree");
    return t;
}

std::string serialize_tree(const MDTree& t, const Graph& g) {
    std::ostringstream out;
    serialize_node(t.root, g, out);
    return out.str();
}

std::string serialize_tree_canonical(const MDTree& t, const Graph& g) {
    return serialize_tree(canonical(t), g);
}

namespace {

// Fig-style colouring: series blue, parallel red, prime green.
const char* kind_color(NodeKind k) {
    switch (k) {
        case NodeKind::Series: return "lightblue";
        case NodeKind::Parallel: return "lightcoral";
        case NodeKind::Prime: return "lightgreen";
        default: return "white";
    }
}

void dot_node(const MDNode& n, const Graph& g, std::ostringstream& out, int& next_id,
              int parent_id) {
    int id = next_id++;
    if (n.is_leaf()) {
        out << "  n" << id << " [label=\"" << g.label(n.leaf) << "\"];\n";
    } else {
        out << "  n" << id << " [shape=box, style=filled, fillcolor=\"" << kind_color(n.kind)
            << "\", label=\"" << kind_name(n.kind) << "\"];\n";
    }
    if (parent_id >= 0) out << "  n" << parent_id << " -> n" << id << ";\n";
    for (const auto& c : n.children) dot_node(c, g, out, next_id, id);
}

nlohmann::json json_node(const MDNode& n, const Graph& g) {
    nlohmann::json j;
    j["kind"] = std::string(kind_name(n.kind));
    if (n.is_leaf()) {
        j["leaf"] = g.label(n.leaf);
    } else {
        nlohmann::json kids = nlohmann::json::array();
        for (const auto& c : n.children) kids.push_back(json_node(c, g));
        j["children"] = std::move(kids);
    }
    return j;
}

}  // namespace

std::string tree_to_dot(const MDTree& t, const Graph& g) {
    std::ostringstream out;
    out << "digraph mdtree {\n";
    int next_id = 0;
    dot_node(t.root, g, out, next_id, -1);
    out << "}\n";
    return out.str();
}

std::string tree_to_json(const MDTree& t, const Graph& g) {
    return json_node(t.root, g).dump();
}

}  // namespace mdtool
