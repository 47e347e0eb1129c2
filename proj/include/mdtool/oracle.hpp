#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdtool/graph.hpp"
#include "mdtool/mdtree.hpp"

namespace mdtool {

// Vertex sets over a single graph, one bit per vertex id.
using VertexMask = std::uint64_t;

constexpr std::size_t kDefaultOracleLimit = 16;
// Subset enumeration becomes useless well before masks run out of bits.
constexpr std::size_t kHardOracleLimit = 24;

// Effective limit for the enumeration-based operations below. Reads the
// MDTOOL_MAX_N environment variable once; values are clamped to
// [1, kHardOracleLimit], anything unparsable falls back to the default.
std::size_t oracle_limit();

VertexMask full_mask(const Graph& g);
VertexMask labels_to_mask(const Graph& g, const std::vector<std::string>& labels);
std::vector<VertexId> mask_vertices(VertexMask m);
std::vector<std::string> mask_labels(const Graph& g, VertexMask m);
// "{a,b,c}" in vertex order; "{}" for the empty set.
std::string format_set(const Graph& g, VertexMask m);

// Witness that m is not a module: an outside vertex adjacent to one member
// and not another.
struct Distinguisher {
    VertexId outside;
    VertexId adjacent_to;
    VertexId non_adjacent_to;
};

std::optional<Distinguisher> find_distinguisher(const Graph& g, VertexMask m);
bool is_module(const Graph& g, VertexMask m);

// Every nonempty subset passing is_module, by exhaustive enumeration.
// This module is deliberately brute force: it is the ground truth the
// refinement machinery is judged against, so it shares no code with it.
std::vector<VertexMask> all_modules(const Graph& g, std::size_t max_n = oracle_limit());

// The modules overlapping no other module. The result is laminar.
std::vector<VertexMask> strong_modules(const Graph& g, std::size_t max_n = oracle_limit());

// Kind of the quotient over one representative per part: series if the
// quotient is complete, parallel if edgeless, prime otherwise. Each part
// must be a module of the subgraph induced by their union.
NodeKind quotient_kind(const Graph& g, const std::vector<VertexMask>& parts);

// Tree over the strong-module family nested by inclusion; children ordered
// by minimum leaf id.
MDTree build_md_tree(const Graph& g, std::size_t max_n = oracle_limit());

enum class ViolationCode { LeavesNotV, NotAModule, WrongKind, NotMaximal, Arity };

std::string_view violation_code_name(ViolationCode c);

struct Violation {
    ViolationCode code;
    VertexMask subject = 0;
    std::vector<VertexId> witnesses;
    std::string message;
};

// Independent checks against an arbitrary claimed tree; empty result iff
// the tree equals build_md_tree(g) up to child reordering.
std::vector<Violation> validate_tree(const Graph& g, const MDTree& t);

// True iff the complement's tree is g's tree with series and parallel
// exchanged, compared up to child reordering.
bool dual_check(const Graph& g, std::size_t max_n = oracle_limit());

}  // namespace mdtool
