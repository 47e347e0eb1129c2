#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "mdtool/graph.hpp"
#include "mdtool/rng.hpp"

namespace testsupport {

#ifndef MDTOOL_DATA_DIR
#define MDTOOL_DATA_DIR "tests/data"
#endif

inline std::string data_path(const std::string& name) {
    return std::string(MDTOOL_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CommandResult {
    int exit_code;
    std::string output;  // stdout only
};

// Runs a shell command, capturing stdout; stderr passes through.
inline CommandResult run_command(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    std::string output;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, output};
}

inline std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    out += "'";
    return out;
}

inline std::vector<std::string> letter_labels(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
    return labels;
}

inline mdtool::Graph random_graph(mdtool::SplitMix64& rng, int n, double p = 0.5) {
    mdtool::Graph g(letter_labels(n));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p)) g.add_edge(u, v);
    return g;
}

inline std::vector<mdtool::Graph> all_labeled_graphs(int n) {
    std::vector<mdtool::Graph> out;
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
        mdtool::Graph g(letter_labels(n));
        int bit = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v, ++bit)
                if (mask & (std::uint64_t{1} << bit)) g.add_edge(u, v);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace testsupport
