#pragma once

#include <stdexcept>
#include <string>

namespace baire {

// Exit-code ladder for the CLI: 0 ok / 1 check failed / 2 input / 3 io / 4 fault.

struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when strategy synthesis cannot produce a legal move. `depth_exhausted`
// distinguishes "the stored tree is too shallow" from "no stored child can
// serve the condition at all".
struct synthesis_fault : std::runtime_error {
    bool depth_exhausted;
    synthesis_fault(const std::string& what, bool depth_exhausted_)
        : std::runtime_error(what), depth_exhausted(depth_exhausted_) {}
};

struct resource_error : std::runtime_error {
    std::size_t frontier_count;
    resource_error(const std::string& what, std::size_t frontier)
        : std::runtime_error(what), frontier_count(frontier) {}
};

struct parse_error : input_error {
    int line;
    int column;
    parse_error(const std::string& what, int line_, int column_)
        : input_error(what + " (line " + std::to_string(line_) + ", column " +
                      std::to_string(column_) + ")"),
          line(line_), column(column_) {}
};

} // namespace baire
