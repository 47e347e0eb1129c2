#pragma once

#include <stdexcept>
#include <string>

namespace mdtool {

// Malformed graph or tree text. The CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Input exceeds an enumeration cap. The CLI maps this to exit code 3.
struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mdtool
