#include <doctest.h>

#include <map>

#include "mdtool/errors.hpp"
#include "mdtool/graph.hpp"
#include "mdtool/rng.hpp"
#include "test_support.hpp"

using namespace mdtool;
using testsupport::data_path;
using testsupport::read_file;

namespace {

Graph fixture_g() { return parse_graph(read_file(data_path("g.mdg"))); }

}  // namespace

TEST_CASE("parse fixture graph") {
    const Graph g = fixture_g();
    CHECK(g.size() == 9);
    CHECK(g.labels() == std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g", "h", "i"});
    CHECK(g.edge_count() == 28);
    const std::map<std::string, std::size_t> expected{{"a", 7}, {"b", 7}, {"c", 6},
                                                      {"d", 7}, {"e", 5}, {"f", 5},
                                                      {"g", 6}, {"h", 6}, {"i", 7}};
    for (const auto& [label, deg] : expected) CHECK(g.degree(g.require(label)) == deg);
}

TEST_CASE("parse single vertex") {
    const Graph g = parse_graph("vertices: a\n");
    CHECK(g.size() == 1);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("parse ignores comments and blank lines") {
    const Graph g = parse_graph("# heading\n\nvertices: x y # trailing\n\nx y # edge\n");
    CHECK(g.size() == 2);
    CHECK(g.adjacent(0, 1));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_graph("vertices: a b\na z\n"), ParseError);     // unknown vertex
    CHECK_THROWS_AS(parse_graph("vertices: a a\n"), ParseError);          // duplicate vertex
    CHECK_THROWS_AS(parse_graph("vertices: a b\na a\n"), ParseError);     // self-loop
    CHECK_THROWS_AS(parse_graph("vertices: a b\na b c\n"), ParseError);   // malformed line
    CHECK_THROWS_AS(parse_graph("a b\n"), ParseError);                    // missing header
    CHECK_THROWS_AS(parse_graph(""), ParseError);
    CHECK_THROWS_AS(parse_graph("vertices: a(b\n"), ParseError);          // bad label
}

TEST_CASE("serialize round trip") {
    const Graph g = fixture_g();
    const std::string text = serialize_graph(g);
    CHECK(parse_graph(text) == g);
    CHECK(serialize_graph(parse_graph(text)) == text);

    SplitMix64 rng(7);
    for (int i = 0; i < 40; ++i) {
        const Graph r = testsupport::random_graph(rng, 1 + static_cast<int>(rng.next_below(8)));
        CHECK(parse_graph(serialize_graph(r)) == r);
        CHECK(complement(complement(r)) == r);
    }
}

TEST_CASE("complement") {
    Graph k3(testsupport::letter_labels(3));
    k3.add_edge(0, 1);
    k3.add_edge(0, 2);
    k3.add_edge(1, 2);
    CHECK(complement(k3).edge_count() == 0);

    const Graph g = fixture_g();
    CHECK(complement(g).edge_count() == 8);  // C(9,2) - 28
    CHECK(complement(complement(g)) == g);
    CHECK(complement(g).labels() == g.labels());
}

TEST_CASE("induced subgraph") {
    const Graph g = fixture_g();
    const Graph sub = induced_subgraph(g, std::vector<std::string>{"a", "b", "c", "d", "e", "g", "h"});
    CHECK(sub.size() == 7);
    CHECK(sub.degree(sub.require("a")) == 6);
    CHECK(sub.degree(sub.require("d")) == 6);

    CHECK(induced_subgraph(g, std::vector<VertexId>{}).size() == 0);

    const Graph gh = induced_subgraph(g, std::vector<std::string>{"g", "h"});
    CHECK(gh.size() == 2);
    CHECK(gh.edge_count() == 0);

    CHECK_THROWS_AS(induced_subgraph(g, std::vector<std::string>{"z"}), std::invalid_argument);
}

TEST_CASE("induced subgraph keeps vertex order") {
    const Graph g = fixture_g();
    const Graph sub = induced_subgraph(g, std::vector<std::string>{"h", "a", "c"});
    CHECK(sub.labels() == std::vector<std::string>{"a", "c", "h"});
}

TEST_CASE("bfs layers") {
    const Graph g = fixture_g();
    const auto layers = bfs_layers(g, g.require("i"));
    REQUIRE(layers.size() == 2);
    CHECK(layers[0].size() == 7);  // a b c d e g h
    CHECK(layers[1] == std::vector<VertexId>{g.require("f")});

    Graph k2(std::vector<std::string>{"u", "v"});
    k2.add_edge(0, 1);
    CHECK(bfs_layers(k2, 0) == std::vector<std::vector<VertexId>>{{1}});

    Graph path(std::vector<std::string>{"u", "v", "w", "z"});
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    CHECK(bfs_layers(path, 0) == std::vector<std::vector<VertexId>>{{1}, {2}, {3}});

    CHECK_THROWS_AS(bfs_layers(k2, 5), std::invalid_argument);
}

TEST_CASE("bfs groups unreachable vertices into the final layer") {
    Graph g(std::vector<std::string>{"u", "v", "z"});
    g.add_edge(0, 1);
    CHECK(bfs_layers(g, 0) == std::vector<std::vector<VertexId>>{{1}, {2}});
    // isolated pivot: everything else is unreachable
    Graph iso(std::vector<std::string>{"u", "v", "w"});
    iso.add_edge(1, 2);
    CHECK(bfs_layers(iso, 0) == std::vector<std::vector<VertexId>>{{1, 2}});
}

TEST_CASE("bfs layers partition the other vertices") {
    SplitMix64 rng(11);
    for (int i = 0; i < 60; ++i) {
        const int n = 1 + static_cast<int>(rng.next_below(8));
        const Graph g = testsupport::random_graph(rng, n);
        for (VertexId x = 0; x < n; ++x) {
            std::vector<bool> seen(static_cast<std::size_t>(n), false);
            seen[static_cast<std::size_t>(x)] = true;
            for (const auto& layer : bfs_layers(g, x)) {
                for (VertexId v : layer) {
                    CHECK(!seen[static_cast<std::size_t>(v)]);
                    seen[static_cast<std::size_t>(v)] = true;
                }
            }
            for (bool s : seen) CHECK(s);
        }
    }
}

TEST_CASE("join and disjoint union") {
    Graph k1(std::vector<std::string>{"f"});
    Graph tri(std::vector<std::string>{"a", "i", "d"});
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(0, 2);
    Graph c4e(std::vector<std::string>{"b", "g", "c", "h", "e"});
    c4e.add_edge("b", "g");
    c4e.add_edge("g", "c");
    c4e.add_edge("c", "h");
    c4e.add_edge("h", "b");
    c4e.add_edge("b", "e");

    const Graph built = join(disjoint_union(k1, tri), c4e);
    CHECK(built.edge_count() == 28);
    // Same adjacency as the fixture, vertex order aside.
    const Graph g = fixture_g();
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t v = u + 1; v < g.size(); ++v) {
            const auto bu = built.require(g.label(static_cast<VertexId>(u)));
            const auto bv = built.require(g.label(static_cast<VertexId>(v)));
            CHECK(built.adjacent(bu, bv) ==
                  g.adjacent(static_cast<VertexId>(u), static_cast<VertexId>(v)));
        }

    Graph u1(std::vector<std::string>{"x"});
    Graph u2(std::vector<std::string>{"y"});
    CHECK(disjoint_union(u1, u2).edge_count() == 0);
    CHECK(join(u1, u2).edge_count() == 1);
    CHECK_THROWS_AS(join(u1, u1), std::invalid_argument);
}

TEST_CASE("join and union edge counts") {
    SplitMix64 rng(13);
    for (int i = 0; i < 30; ++i) {
        const int n1 = 1 + static_cast<int>(rng.next_below(5));
        const int n2 = 1 + static_cast<int>(rng.next_below(5));
        Graph g1(testsupport::letter_labels(n1));
        for (int u = 0; u < n1; ++u)
            for (int v = u + 1; v < n1; ++v)
                if (rng.chance(0.5)) g1.add_edge(u, v);
        std::vector<std::string> labels2;
        for (int k = 0; k < n2; ++k) labels2.push_back("q" + std::to_string(k));
        Graph g2(labels2);
        for (int u = 0; u < n2; ++u)
            for (int v = u + 1; v < n2; ++v)
                if (rng.chance(0.5)) g2.add_edge(u, v);
        CHECK(disjoint_union(g1, g2).edge_count() == g1.edge_count() + g2.edge_count());
        CHECK(join(g1, g2).edge_count() ==
              g1.edge_count() + g2.edge_count() + static_cast<std::size_t>(n1) * n2);
    }
}
