#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "moebius/census.hpp"

namespace moebius::cli {

enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,
    kUsage = 2,
};

// Entry point for the `moebius` tool: census | verify | trace | bench.
// Never returns anything other than 0, 1 or 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct BenchRow {
    std::string method;
    Census value;
    double median_ms = 0.0;
};

// Prints the timing table (csv or json) only when every row carries the same
// census; otherwise writes the disagreement to `err`, prints nothing to `out`
// and returns kCheckFailed.
int emit_bench(std::span<const BenchRow> rows, std::uint64_t repetitions, bool json, std::ostream& out,
               std::ostream& err);

} // namespace moebius::cli
