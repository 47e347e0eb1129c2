#include "mdtool/falsifier.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "mdtool/errors.hpp"
#include "mdtool/rng.hpp"

namespace mdtool {

namespace {

const char* const kCounterexampleText =
    "vertices: a b c d e f g h i\n"
    "a b\na c\na d\na e\na g\na h\na i\n"
    "b d\nb e\nb f\nb g\nb h\nb i\n"
    "c d\nc f\nc g\nc h\nc i\n"
    "d e\nd g\nd h\nd i\n"
    "e f\ne i\n"
    "f g\nf h\n"
    "g i\nh i\n";

std::vector<std::vector<std::string>> violation_labels(const Graph& g,
                                                       const std::vector<VertexMask>& sets) {
    std::vector<std::vector<std::string>> out;
    for (VertexMask m : sets) out.push_back(mask_labels(g, m));
    return out;
}

Finding make_finding(const Graph& g, VertexId pivot, const std::vector<VertexId>& order,
                     const std::vector<VertexMask>& violations, std::uint64_t seed,
                     std::uint64_t instance_index) {
    Finding f;
    f.graph_text = serialize_graph(g);
    f.pivot = g.label(pivot);
    for (VertexId v : order) f.order.push_back(g.label(v));
    f.violations = violation_labels(g, violations);
    f.seed = seed;
    f.instance_index = instance_index;
    return f;
}

std::vector<std::string> make_labels(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
        if (n <= 26) labels.emplace_back(1, static_cast<char>('a' + i));
        else labels.push_back("v" + std::to_string(i));
    }
    return labels;
}

Graph graph_from_edge_mask(int n, std::uint64_t mask) {
    Graph g(make_labels(n));
    int bit = 0;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v, ++bit)
            if (mask & (std::uint64_t{1} << bit)) g.add_edge(u, v);
    return g;
}

Graph random_graph(SplitMix64& rng, int n, double edge_prob) {
    Graph g(make_labels(n));
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (rng.chance(edge_prob)) g.add_edge(u, v);
    return g;
}

}  // namespace

std::string finding_to_json(const Finding& f) {
    nlohmann::json j;
    j["graph"] = f.graph_text;
    j["pivot"] = f.pivot;
    j["order"] = f.order;
    j["violations"] = f.violations;
    j["seed"] = f.seed;
    j["instance_index"] = f.instance_index;
    return j.dump();
}

Finding finding_from_json(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad finding JSON: ") + e.what());
    }
    Finding f;
    try {
        f.graph_text = j.at("graph").get<std::string>();
        f.pivot = j.at("pivot").get<std::string>();
        f.order = j.at("order").get<std::vector<std::string>>();
        f.violations = j.at("violations").get<std::vector<std::vector<std::string>>>();
        f.seed = j.value("seed", std::uint64_t{0});
        f.instance_index = j.value("instance_index", std::uint64_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad finding JSON: ") + e.what());
    }
    return f;
}

Lemma4Report replay(const Finding& f, std::size_t max_n) {
    const Graph g = parse_graph(f.graph_text);
    const VertexId pivot = g.require(f.pivot);
    std::vector<VertexId> order;
    for (const auto& l : f.order) order.push_back(g.require(l));
    return lemma4_check(g, pivot, order, max_n);
}

Graph counterexample_graph() { return parse_graph(kCounterexampleText); }

Finding run_paper_fixture() {
    const Graph g = counterexample_graph();
    const VertexId pivot = g.require("i");
    const VertexId first = g.require("f");
    std::vector<VertexId> order{first};
    for (VertexId v : default_order(build_ordered_forest(g, pivot)))
        if (v != first) order.push_back(v);
    const Lemma4Report report = lemma4_check(g, pivot, order);
    return make_finding(g, pivot, order, report.violations_necessary, 0, 0);
}

std::vector<Finding> sweep_graph(const Graph& g, SearchSpec::Pivots pivots,
                                 SearchSpec::Orders orders, std::uint64_t seed,
                                 std::uint64_t instance_index, std::size_t max_n) {
    if (orders == SearchSpec::Orders::AllPermutations &&
        g.size() > static_cast<std::size_t>(kAllPermutationsCap))
        throw SizeLimitError("all-permutations sweep capped at " +
                             std::to_string(kAllPermutationsCap) + " vertices");
    std::vector<Finding> out;
    const int n = static_cast<int>(g.size());
    const int pivot_end = (pivots == SearchSpec::Pivots::First) ? std::min(1, n) : n;
    for (VertexId pivot = 0; pivot < pivot_end; ++pivot) {
        std::vector<std::vector<VertexId>> order_list;
        if (orders == SearchSpec::Orders::Default) {
            order_list.push_back(default_order(build_ordered_forest(g, pivot, max_n)));
        } else {
            std::vector<VertexId> perm;
            for (VertexId v = 0; v < n; ++v)
                if (v != pivot) perm.push_back(v);
            do {
                order_list.push_back(perm);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        for (const auto& order : order_list) {
            const Lemma4Report report = lemma4_check(g, pivot, order, max_n);
            if (!report.violations_necessary.empty())
                out.push_back(make_finding(g, pivot, order, report.violations_necessary, seed,
                                           instance_index));
        }
    }
    return out;
}

std::vector<Finding> search(const SearchSpec& spec, std::size_t max_n) {
    if (spec.n_min < 1 || spec.n_min > spec.n_max)
        throw std::invalid_argument("bad vertex-count range");
    if (spec.orders == SearchSpec::Orders::AllPermutations && spec.n_max > kAllPermutationsCap)
        throw SizeLimitError("all-permutations sweep capped at " +
                             std::to_string(kAllPermutationsCap) + " vertices");
    std::vector<Finding> out;
    if (spec.mode == SearchSpec::Mode::Exhaustive) {
        if (spec.n_max > kExhaustiveCap)
            throw SizeLimitError("exhaustive search capped at " +
                                 std::to_string(kExhaustiveCap) + " vertices");
        std::uint64_t index = 0;
        for (int n = spec.n_min; n <= spec.n_max; ++n) {
            const int pairs = n * (n - 1) / 2;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask, ++index) {
                auto found = sweep_graph(graph_from_edge_mask(n, mask), spec.pivots, spec.orders,
                                         spec.seed, index, max_n);
                out.insert(out.end(), found.begin(), found.end());
            }
        }
    } else {
        if (static_cast<std::size_t>(spec.n_max) > max_n)
            throw SizeLimitError("random search range exceeds the oracle limit");
        SplitMix64 rng(spec.seed);
        for (std::uint64_t index = 0; index < spec.instance_count; ++index) {
            const int n = spec.n_min +
                          static_cast<int>(rng.next_below(
                              static_cast<std::uint64_t>(spec.n_max - spec.n_min + 1)));
            auto found = sweep_graph(random_graph(rng, n, spec.edge_prob), spec.pivots,
                                     spec.orders, spec.seed, index, max_n);
            out.insert(out.end(), found.begin(), found.end());
        }
    }
    return out;
}

Finding minimize(const Finding& f, std::size_t max_n) {
    Graph g = parse_graph(f.graph_text);
    VertexId pivot = g.require(f.pivot);
    std::vector<VertexId> order;
    for (const auto& l : f.order) order.push_back(g.require(l));
    if (lemma4_check(g, pivot, order, max_n).violations_necessary.empty())
        throw std::invalid_argument("finding does not violate; nothing to minimize");

    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (VertexId victim = 0; victim < static_cast<VertexId>(g.size()); ++victim) {
            if (victim == pivot) continue;
            std::vector<VertexId> keep;
            for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v)
                if (v != victim) keep.push_back(v);
            const Graph candidate = induced_subgraph(g, keep);
            const VertexId new_pivot = candidate.require(g.label(pivot));
            std::vector<VertexId> new_order;
            for (VertexId v : order)
                if (v != victim) new_order.push_back(candidate.require(g.label(v)));
            if (!lemma4_check(candidate, new_pivot, new_order, max_n)
                     .violations_necessary.empty()) {
                g = candidate;
                pivot = new_pivot;
                order = std::move(new_order);
                shrunk = true;
                break;
            }
        }
    }
    const Lemma4Report report = lemma4_check(g, pivot, order, max_n);
    return make_finding(g, pivot, order, report.violations_necessary, f.seed, f.instance_index);
}

}  // namespace mdtool
