#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "mdtool/falsifier.hpp"
#include "test_support.hpp"

using testsupport::data_path;
using testsupport::read_file;
using testsupport::run_command;
using testsupport::shell_quote;

namespace {

#ifndef MDTOOL_BIN
#define MDTOOL_BIN "mdtool"
#endif

std::string tool() { return shell_quote(MDTOOL_BIN); }

std::string g_file() { return shell_quote(data_path("g.mdg")); }

}  // namespace

TEST_CASE("decompose emits the golden tree") {
    const auto r = run_command(tool() + " decompose " + g_file());
    CHECK(r.exit_code == 0);
    CHECK(r.output == read_file(data_path("g_tree_golden.txt")));
}

TEST_CASE("decompose single vertex") {
    const auto r = run_command(tool() + " decompose " + shell_quote(data_path("k1.mdg")));
    CHECK(r.exit_code == 0);
    CHECK(r.output == "a\n");
}

TEST_CASE("decompose reads stdin") {
    const auto r = run_command("cat " + g_file() + " | " + tool() + " decompose -");
    CHECK(r.exit_code == 0);
    CHECK(r.output == read_file(data_path("g_tree_golden.txt")));
}

TEST_CASE("decompose json format") {
    const auto json = run_command(tool() + " decompose --format json " + g_file());
    CHECK(json.exit_code == 0);
    const auto parsed = nlohmann::json::parse(json.output);
    CHECK(parsed.at("kind") == "series");
    CHECK(parsed.at("children").size() == 2);
    CHECK(parsed.at("children")[0].at("kind") == "parallel");
}

TEST_CASE("decompose dot format") {
    const auto dot = run_command(tool() + " decompose --format dot " + g_file());
    CHECK(dot.exit_code == 0);
    CHECK(dot.output.find("digraph mdtree {") == 0);
    CHECK(dot.output.find("lightgreen") != std::string::npos);  // the prime node
}

TEST_CASE("validate accepts and rejects") {
    auto r = run_command(tool() + " validate " + g_file() + " " +
                         shell_quote(data_path("g_tree_golden.txt")));
    CHECK(r.exit_code == 0);
    CHECK(r.output == "OK\n");

    r = run_command(tool() + " validate " + g_file() + " " +
                    shell_quote(data_path("g_buggy_tree.txt")));
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("WRONG_KIND") != std::string::npos);
    CHECK(r.output.find("(b,c)") != std::string::npos);

    r = run_command("printf 'a' | " + tool() + " validate " +
                    shell_quote(data_path("k1.mdg")) + " -");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "OK\n");
}

TEST_CASE("decompose output validates") {
    const auto r = run_command(tool() + " decompose " + g_file() + " | " + tool() +
                               " validate " + g_file() + " -");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "OK\n");
}

TEST_CASE("decompose output validates on random graphs") {
    mdtool::SplitMix64 rng(97);
    const std::string path = "/tmp/mdtool_cli_roundtrip.mdg";
    for (int i = 0; i < 12; ++i) {
        const int n = 1 + static_cast<int>(rng.next_below(8));
        const mdtool::Graph g = testsupport::random_graph(rng, n);
        std::ofstream(path) << mdtool::serialize_graph(g);
        const auto r = run_command(tool() + " decompose " + shell_quote(path) + " | " + tool() +
                                   " validate " + shell_quote(path) + " -");
        CHECK(r.exit_code == 0);
        CHECK(r.output == "OK\n");
    }
    std::remove(path.c_str());
}

TEST_CASE("lemma4 fixture run") {
    const auto r = run_command(tool() + " lemma4 " + g_file() + " --pivot i --order f 2>/dev/null");
    CHECK(r.exit_code == 1);
    CHECK(r.output == "violation: {b,c,e,g,h}\n");
}

TEST_CASE("lemma4 trace matches the golden file") {
    const auto r =
        run_command(tool() + " lemma4 " + g_file() + " --pivot i --trace 2>/dev/null");
    CHECK(r.exit_code == 1);
    CHECK(r.output == read_file(data_path("g_lemma4_trace_golden.txt")));
}

TEST_CASE("lemma4 clean on K2") {
    const auto r = run_command(tool() + " lemma4 " + shell_quote(data_path("k2.mdg")) +
                               " --pivot u");
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
}

TEST_CASE("lemma4 usage errors") {
    auto r = run_command(tool() + " lemma4 " + g_file() + " --pivot zz 2>/dev/null");
    CHECK(r.exit_code == 2);
    r = run_command(tool() + " lemma4 " + g_file() + " --pivot i --order i 2>/dev/null");
    CHECK(r.exit_code == 2);
    r = run_command(tool() + " lemma4 " + g_file() + " --pivot i --order f,f 2>/dev/null");
    CHECK(r.exit_code == 2);
}

TEST_CASE("dual-check") {
    auto r = run_command(tool() + " dual-check " + g_file());
    CHECK(r.exit_code == 0);
    CHECK(r.output == "ok\n");
    r = run_command(tool() + " dual-check " + shell_quote(data_path("k1.mdg")));
    CHECK(r.exit_code == 0);
}

TEST_CASE("complement pipes into decompose") {
    const auto r = run_command(tool() + " complement " + g_file() + " | " + tool() +
                               " decompose -");
    CHECK(r.exit_code == 0);
    CHECK(r.output == read_file(data_path("g_complement_tree_golden.txt")));
}

TEST_CASE("complement is an involution") {
    const auto twice = run_command(tool() + " complement " + g_file() + " | " + tool() +
                                   " complement -");
    const auto canonical = run_command(tool() + " complement " + g_file() + " | " + tool() +
                                       " complement - | " + tool() + " complement - | " + tool() +
                                       " complement -");
    CHECK(twice.exit_code == 0);
    CHECK(twice.output == canonical.output);
}

TEST_CASE("falsify replays the built-in fixture") {
    const auto r = run_command(tool() + " falsify --replay paper-fixture 2>/dev/null");
    CHECK(r.exit_code == 1);
    const auto parsed = nlohmann::json::parse(r.output);
    CHECK(parsed.at("pivot") == "i");
    CHECK(parsed.at("violations") ==
          nlohmann::json::parse(R"([["b","c","e","g","h"]])"));
}

TEST_CASE("falsify exhaustive tiny range is quiet") {
    const auto r = run_command(tool() +
                               " falsify --mode exhaustive --n-min 1 --n-max 3 2>/dev/null");
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
}

TEST_CASE("falsify minimize stays violating") {
    const auto r = run_command(tool() + " falsify --replay paper-fixture --minimize 2>/dev/null");
    CHECK(r.exit_code == 1);
    const auto f = mdtool::finding_from_json(r.output);
    const mdtool::Graph g = mdtool::parse_graph(f.graph_text);
    CHECK(g.size() <= 9);
    CHECK(!mdtool::replay(f).violations_necessary.empty());
}

TEST_CASE("falsify cap exceeds exit 3") {
    const auto r = run_command(tool() +
                               " falsify --mode exhaustive --n-min 1 --n-max 7 2>/dev/null");
    CHECK(r.exit_code == 3);
}

TEST_CASE("exit codes for bad input") {
    auto r = run_command("printf 'nonsense' | " + tool() + " decompose - 2>/dev/null");
    CHECK(r.exit_code == 2);
    r = run_command(tool() + " decompose /no/such/file 2>/dev/null");
    CHECK(r.exit_code == 2);
    r = run_command(tool() + " no-such-command 2>/dev/null");
    CHECK(r.exit_code == 2);
    r = run_command(tool() + " 2>/dev/null");
    CHECK(r.exit_code == 2);
}

TEST_CASE("oracle limit respects MDTOOL_MAX_N") {
    // 17 labels, no edges: fine by default, too big with MDTOOL_MAX_N=4
    std::string file = "vertices:";
    for (int i = 0; i < 17; ++i) file += " v" + std::to_string(i);
    file += "\n";
    const std::string path = "/tmp/mdtool_cli_test_big.mdg";
    std::ofstream(path) << file;

    auto r = run_command(std::string("MDTOOL_MAX_N=4 ") + tool() + " decompose " +
                         shell_quote(path) + " 2>/dev/null");
    CHECK(r.exit_code == 3);
    r = run_command(std::string("MDTOOL_MAX_N=18 ") + tool() + " decompose " +
                    shell_quote(path));
    CHECK(r.exit_code == 0);
    r = run_command(tool() + " decompose " + shell_quote(path) + " 2>/dev/null");
    CHECK(r.exit_code == 3);  // default limit is 16
    std::remove(path.c_str());
}
