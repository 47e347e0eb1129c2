#include "mdtool/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "mdtool/errors.hpp"

namespace mdtool {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

void check_label(const std::string& label, std::size_t line_no) {
    for (char c : label) {
        if (c == '(' || c == ')' || c == '#') {
            throw ParseError("line " + std::to_string(line_no) + ": invalid character '" +
                             std::string(1, c) + "' in label '" + label + "'");
        }
    }
}

}  // namespace

Graph::Graph(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        auto [it, inserted] = index_.emplace(labels_[i], static_cast<VertexId>(i));
        if (!inserted) throw std::invalid_argument("duplicate vertex label '" + labels_[i] + "'");
    }
    adj_.assign(labels_.size() * labels_.size(), 0);
}

const std::string& Graph::label(VertexId v) const {
    check_vertex(v);
    return labels_[static_cast<std::size_t>(v)];
}

std::optional<VertexId> Graph::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VertexId Graph::require(std::string_view label) const {
    auto v = find(label);
    if (!v) throw std::invalid_argument("unknown vertex '" + std::string(label) + "'");
    return *v;
}

void Graph::check_vertex(VertexId v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= labels_.size())
        throw std::invalid_argument("vertex id out of range");
}

bool Graph::adjacent(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    return adj_[static_cast<std::size_t>(u) * labels_.size() + static_cast<std::size_t>(v)] != 0;
}

void Graph::add_edge(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at '" + labels_[u] + "'");
    adj_[static_cast<std::size_t>(u) * labels_.size() + static_cast<std::size_t>(v)] = 1;
    adj_[static_cast<std::size_t>(v) * labels_.size() + static_cast<std::size_t>(u)] = 1;
}

void Graph::add_edge(std::string_view a, std::string_view b) {
    add_edge(require(a), require(b));
}

std::size_t Graph::degree(VertexId v) const {
    check_vertex(v);
    std::size_t d = 0;
    for (std::size_t u = 0; u < labels_.size(); ++u)
        d += adj_[static_cast<std::size_t>(v) * labels_.size() + u];
    return d;
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (auto b : adj_) twice += b;
    return twice / 2;
}

std::vector<VertexId> Graph::neighbours(VertexId v) const {
    check_vertex(v);
    std::vector<VertexId> out;
    for (std::size_t u = 0; u < labels_.size(); ++u)
        if (adj_[static_cast<std::size_t>(v) * labels_.size() + u])
            out.push_back(static_cast<VertexId>(u));
    return out;
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (std::size_t u = 0; u < labels_.size(); ++u)
        for (std::size_t v = u + 1; v < labels_.size(); ++v)
            if (adj_[u * labels_.size() + v])
                out.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    return out;
}

bool Graph::operator==(const Graph& other) const {
    return labels_ == other.labels_ && adj_ == other.adj_;
}

Graph parse_graph(std::string_view text) {
    Graph g;
    bool have_header = false;
    std::size_t line_no = 0;
    for (std::size_t pos = 0; pos < text.size();) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (!have_header) {
            if (tokens[0] != "vertices:")
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'vertices: <label> ...' header");
            std::vector<std::string> labels(tokens.begin() + 1, tokens.end());
            for (const auto& l : labels) check_label(l, line_no);
            try {
                g = Graph(std::move(labels));
            } catch (const std::invalid_argument& e) {
                throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
            have_header = true;
        } else {
            if (tokens.size() != 2)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected '<label> <label>' edge line");
            auto u = g.find(tokens[0]);
            auto v = g.find(tokens[1]);
            if (!u) throw ParseError("line " + std::to_string(line_no) + ": unknown vertex '" +
                                     tokens[0] + "'");
            if (!v) throw ParseError("line " + std::to_string(line_no) + ": unknown vertex '" +
                                     tokens[1] + "'");
            if (*u == *v)
                throw ParseError("line " + std::to_string(line_no) + ": self-loop at '" +
                                 tokens[0] + "'");
            g.add_edge(*u, *v);
        }
    }
    if (!have_header) throw ParseError("missing 'vertices:' header");
    return g;
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "vertices:";
    for (const auto& l : g.labels()) out << ' ' << l;
    out << '\n';
    for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
    return out.str();
}

Graph complement(const Graph& g) {
    Graph out(g.labels());
    const auto n = static_cast<VertexId>(g.size());
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v)) out.add_edge(u, v);
    return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep) {
    std::vector<bool> in(g.size(), false);
    for (VertexId v : keep) {
        if (v < 0 || static_cast<std::size_t>(v) >= g.size())
            throw std::invalid_argument("vertex id out of range");
        in[static_cast<std::size_t>(v)] = true;
    }
    std::vector<VertexId> ordered;
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (in[v]) {
            ordered.push_back(static_cast<VertexId>(v));
            labels.push_back(g.label(static_cast<VertexId>(v)));
        }
    }
    Graph out(std::move(labels));
    for (std::size_t i = 0; i < ordered.size(); ++i)
        for (std::size_t j = i + 1; j < ordered.size(); ++j)
            if (g.adjacent(ordered[i], ordered[j]))
                out.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<std::string>& labels) {
    std::vector<VertexId> keep;
    keep.reserve(labels.size());
    for (const auto& l : labels) keep.push_back(g.require(l));
    return induced_subgraph(g, keep);
}

namespace {

Graph combine(const Graph& g1, const Graph& g2, bool cross_edges) {
    std::vector<std::string> labels = g1.labels();
    for (const auto& l : g2.labels()) {
        if (g1.find(l)) throw std::invalid_argument("label collision on '" + l + "'");
        labels.push_back(l);
    }
    Graph out(std::move(labels));
    const auto n1 = static_cast<VertexId>(g1.size());
    for (auto [u, v] : g1.edges()) out.add_edge(u, v);
    for (auto [u, v] : g2.edges()) out.add_edge(u + n1, v + n1);
    if (cross_edges)
        for (VertexId u = 0; u < n1; ++u)
            for (VertexId v = 0; v < static_cast<VertexId>(g2.size()); ++v)
                out.add_edge(u, v + n1);
    return out;
}

}  // namespace

Graph join(const Graph& g1, const Graph& g2) { return combine(g1, g2, true); }

Graph disjoint_union(const Graph& g1, const Graph& g2) { return combine(g1, g2, false); }

std::vector<std::vector<VertexId>> bfs_layers(const Graph& g, VertexId x) {
    if (x < 0 || static_cast<std::size_t>(x) >= g.size())
        throw std::invalid_argument("unknown pivot vertex id");
    std::vector<int> dist(g.size(), -1);
    dist[static_cast<std::size_t>(x)] = 0;
    std::deque<VertexId> queue{x};
    int max_dist = 0;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        for (VertexId u : g.neighbours(v)) {
            if (dist[static_cast<std::size_t>(u)] < 0) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                max_dist = std::max(max_dist, dist[static_cast<std::size_t>(u)]);
                queue.push_back(u);
            }
        }
    }
    std::vector<std::vector<VertexId>> layers;
    for (int d = 1; d <= max_dist; ++d) {
        std::vector<VertexId> layer;
        for (std::size_t v = 0; v < g.size(); ++v)
            if (dist[v] == d) layer.push_back(static_cast<VertexId>(v));
        if (!layer.empty()) layers.push_back(std::move(layer));
    }
    std::vector<VertexId> unreachable;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (dist[v] < 0) unreachable.push_back(static_cast<VertexId>(v));
    if (!unreachable.empty()) layers.push_back(std::move(unreachable));
    return layers;
}

}  // namespace mdtool
