#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdtool/graph.hpp"
#include "mdtool/oracle.hpp"
#include "mdtool/refinement.hpp"

namespace mdtool {

struct SearchSpec {
    enum class Mode { Exhaustive, Random };
    enum class Pivots { All, First };
    enum class Orders { Default, AllPermutations };

    Mode mode = Mode::Random;
    int n_min = 4;
    int n_max = 8;
    std::uint64_t instance_count = 100;  // random mode only
    std::uint64_t seed = 1;
    Pivots pivots = Pivots::All;
    Orders orders = Orders::Default;
    double edge_prob = 0.5;
};

// Exhaustive mode walks every labeled graph; all-permutations walks every
// processing order. Both explode quickly, hence the caps.
constexpr int kExhaustiveCap = 6;
constexpr int kAllPermutationsCap = 7;

// A self-contained, replayable violation instance.
struct Finding {
    std::string graph_text;  // .mdg serialization
    std::string pivot;
    std::vector<std::string> order;
    std::vector<std::vector<std::string>> violations;  // label sets, vertex order
    std::uint64_t seed = 0;
    std::uint64_t instance_index = 0;
};

std::string finding_to_json(const Finding& f);
Finding finding_from_json(const std::string& line);

// Re-runs lemma4_check on the finding's own serialized inputs.
Lemma4Report replay(const Finding& f, std::size_t max_n = oracle_limit());

// The bundled 9-vertex counterexample graph (vertex order a..i).
Graph counterexample_graph();
// Runs the checker on it with pivot i and f processed first.
Finding run_paper_fixture();

// Sweeps pivots and orders of a single graph through the checker.
std::vector<Finding> sweep_graph(const Graph& g, SearchSpec::Pivots pivots,
                                 SearchSpec::Orders orders, std::uint64_t seed,
                                 std::uint64_t instance_index,
                                 std::size_t max_n = oracle_limit());

// Deterministic given the spec; every returned finding replays.
std::vector<Finding> search(const SearchSpec& spec, std::size_t max_n = oracle_limit());

// Greedily deletes vertices (never the pivot) while some necessary-mode
// violation persists; the result is vertex-minimal under single deletions.
Finding minimize(const Finding& f, std::size_t max_n = oracle_limit());

}  // namespace mdtool
