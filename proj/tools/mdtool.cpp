#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdtool/errors.hpp"
#include "mdtool/falsifier.hpp"
#include "mdtool/graph.hpp"
#include "mdtool/mdtree.hpp"
#include "mdtool/oracle.hpp"
#include "mdtool/refinement.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mdtool::ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Accepts a full permutation of the non-pivot vertices or a prefix of one;
// a prefix is completed with the remaining vertices in default order.
std::vector<mdtool::VertexId> resolve_order(const mdtool::Graph& g, mdtool::VertexId pivot,
                                            const std::string& order_flag) {
    using namespace mdtool;
    std::vector<VertexId> prefix;
    std::vector<bool> used(g.size(), false);
    for (const auto& label : split_commas(order_flag)) {
        const VertexId v = g.require(label);
        if (v == pivot) throw std::invalid_argument("order must not contain the pivot");
        if (used[static_cast<std::size_t>(v)])
            throw std::invalid_argument("order repeats vertex '" + label + "'");
        used[static_cast<std::size_t>(v)] = true;
        prefix.push_back(v);
    }
    for (VertexId v : default_order(build_ordered_forest(g, pivot)))
        if (!used[static_cast<std::size_t>(v)]) prefix.push_back(v);
    return prefix;
}

int cmd_decompose(const std::string& graph_file, const std::string& format) {
    using namespace mdtool;
    const Graph g = parse_graph(read_input(graph_file));
    const MDTree t = build_md_tree(g);
    if (format == "dot") std::cout << tree_to_dot(t, g);
    else if (format == "json") std::cout << tree_to_json(t, g) << '\n';
    else std::cout << serialize_tree_canonical(t, g) << '\n';
    return kExitOk;
}

int cmd_validate(const std::string& graph_file, const std::string& tree_file) {
    using namespace mdtool;
    const Graph g = parse_graph(read_input(graph_file));
    const MDTree t = parse_tree(read_input(tree_file), g);
    const auto violations = validate_tree(g, t);
    if (violations.empty()) {
        std::cout << "OK\n";
        return kExitOk;
    }
    for (const auto& v : violations) std::cout << v.message << '\n';
    return kExitViolation;
}

int cmd_lemma4(const std::string& graph_file, const std::string& pivot_label,
               const std::string& order_flag, bool trace, bool exact) {
    using namespace mdtool;
    const Graph g = parse_graph(read_input(graph_file));
    const VertexId pivot = g.require(pivot_label);
    const std::vector<VertexId> order =
        order_flag.empty() ? std::vector<VertexId>{} : resolve_order(g, pivot, order_flag);
    const Lemma4Report report = lemma4_check(g, pivot, order);
    if (trace) {
        std::cout << format_trace(g, report.trace);
        std::cout << "forest: " << render_forest(g, report.final_forest) << '\n';
    }
    for (VertexMask m : report.violations_necessary)
        std::cout << "violation: " << format_set(g, m) << '\n';
    if (exact) {
        for (const auto& item : report.violations_exact)
            std::cout << (item.missing ? "exact-missing: " : "exact-extra: ")
                      << format_set(g, item.set) << '\n';
    }
    return report.violations_necessary.empty() ? kExitOk : kExitViolation;
}

int cmd_dual_check(const std::string& graph_file) {
    using namespace mdtool;
    const Graph g = parse_graph(read_input(graph_file));
    if (dual_check(g)) {
        std::cout << "ok\n";
        return kExitOk;
    }
    std::cout << "fail\n";
    std::cerr << "tree:            " << serialize_tree_canonical(build_md_tree(g), g) << '\n';
    const Graph co = complement(g);
    std::cerr << "complement tree: " << serialize_tree_canonical(build_md_tree(co), co) << '\n';
    return kExitViolation;
}

int cmd_complement(const std::string& graph_file) {
    using namespace mdtool;
    std::cout << serialize_graph(complement(parse_graph(read_input(graph_file))));
    return kExitOk;
}

int cmd_falsify(const mdtool::SearchSpec& spec, const std::string& replay_arg, bool minimize_flag) {
    using namespace mdtool;
    std::vector<Finding> findings;
    if (!replay_arg.empty()) {
        if (replay_arg == "paper-fixture") {
            findings.push_back(run_paper_fixture());
        } else {
            std::istringstream lines(read_input(replay_arg));
            std::string line;
            while (std::getline(lines, line)) {
                if (line.empty()) continue;
                Finding f = finding_from_json(line);
                const Lemma4Report report = replay(f);
                const Graph g = parse_graph(f.graph_text);
                f.violations.clear();
                for (VertexMask m : report.violations_necessary)
                    f.violations.push_back(mask_labels(g, m));
                if (!f.violations.empty()) findings.push_back(std::move(f));
            }
        }
    } else {
        findings = search(spec);
    }
    if (minimize_flag) {
        for (auto& f : findings) f = minimize(f);
    }
    for (const auto& f : findings) std::cout << finding_to_json(f) << '\n';
    std::cerr << findings.size() << " finding(s)\n";
    return findings.empty() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular decomposition toolkit: brute-force decomposition oracle and "
                 "ordered-forest refinement checker"};
    app.require_subcommand(1);

    std::string graph_file;
    std::string tree_file;
    std::string format = "tree";
    std::string pivot_label;
    std::string order_flag;
    bool trace = false;
    bool exact = false;

    auto* decompose = app.add_subcommand("decompose", "print the modular decomposition tree");
    decompose->add_option("graph", graph_file, "graph file ('-' for stdin)")->required();
    decompose->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"tree", "dot", "json"}));

    auto* validate = app.add_subcommand("validate", "check a claimed decomposition tree");
    validate->add_option("graph", graph_file, "graph file ('-' for stdin)")->required();
    validate->add_option("tree", tree_file, "tree file ('-' for stdin)")->required();

    auto* lemma4 = app.add_subcommand(
        "lemma4", "refine around a pivot and report strong modules with marked children");
    lemma4->add_option("graph", graph_file, "graph file ('-' for stdin)")->required();
    lemma4->add_option("--pivot", pivot_label, "pivot vertex")->required();
    lemma4->add_option("--order", order_flag,
                       "comma-separated processing order (a prefix is completed in default "
                       "order)");
    lemma4->add_flag("--trace", trace, "print the event trace and the marked final forest");
    lemma4->add_flag("--exact", exact, "also print the informational exact-mode report");

    auto* dualcheck = app.add_subcommand(
        "dual-check", "verify the complement's tree is the series/parallel-swapped tree");
    dualcheck->add_option("graph", graph_file, "graph file ('-' for stdin)")->required();

    auto* comp = app.add_subcommand("complement", "print the complement graph");
    comp->add_option("graph", graph_file, "graph file ('-' for stdin)")->required();

    mdtool::SearchSpec spec;
    std::string mode = "random";
    std::string pivots = "all";
    std::string orders = "default";
    std::string replay_arg;
    bool minimize_flag = false;
    auto* falsify = app.add_subcommand("falsify", "sweep graphs through the checker");
    falsify->add_option("--mode", mode, "search mode")
        ->check(CLI::IsMember({"random", "exhaustive"}));
    falsify->add_option("--n-min", spec.n_min, "smallest vertex count");
    falsify->add_option("--n-max", spec.n_max, "largest vertex count");
    falsify->add_option("--count", spec.instance_count, "instances (random mode)");
    falsify->add_option("--seed", spec.seed, "PRNG seed");
    falsify->add_option("--edge-prob", spec.edge_prob, "edge probability (random mode)");
    falsify->add_option("--pivots", pivots, "pivots to sweep")
        ->check(CLI::IsMember({"all", "first"}));
    falsify->add_option("--orders", orders, "orders to sweep")
        ->check(CLI::IsMember({"default", "all-permutations"}));
    falsify->add_option("--replay", replay_arg,
                        "replay 'paper-fixture' or a findings JSON-lines file instead of "
                        "searching");
    falsify->add_flag("--minimize", minimize_flag, "greedily shrink each finding");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (decompose->parsed()) return cmd_decompose(graph_file, format);
        if (validate->parsed()) return cmd_validate(graph_file, tree_file);
        if (lemma4->parsed()) return cmd_lemma4(graph_file, pivot_label, order_flag, trace, exact);
        if (dualcheck->parsed()) return cmd_dual_check(graph_file);
        if (comp->parsed()) return cmd_complement(graph_file);
        if (falsify->parsed()) {
            spec.mode = (mode == "exhaustive") ? mdtool::SearchSpec::Mode::Exhaustive
                                               : mdtool::SearchSpec::Mode::Random;
            spec.pivots = (pivots == "first") ? mdtool::SearchSpec::Pivots::First
                                              : mdtool::SearchSpec::Pivots::All;
            spec.orders = (orders == "all-permutations")
                              ? mdtool::SearchSpec::Orders::AllPermutations
                              : mdtool::SearchSpec::Orders::Default;
            return cmd_falsify(spec, replay_arg, minimize_flag);
        }
    } catch (const mdtool::SizeLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitLimit;
    } catch (const mdtool::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
