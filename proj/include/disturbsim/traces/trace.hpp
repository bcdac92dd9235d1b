#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disturbsim/core/data_line.hpp"

namespace disturbsim {

enum class TraceOp { Read, Write };

/// One host request. `data` is present iff op == Write.
struct TraceRecord {
    std::uint64_t time_ns = 0;
    TraceOp op = TraceOp::Read;
    std::uint64_t byte_addr = 0;
    std::optional<DataLine> data;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;

    static TraceRecord read(std::uint64_t t, std::uint64_t addr) { return {t, TraceOp::Read, addr, {}}; }
    static TraceRecord write(std::uint64_t t, std::uint64_t addr, const DataLine& d) {
        return {t, TraceOp::Write, addr, d};
    }
};

using Trace = std::vector<TraceRecord>;

/// 128 hex digits, most significant first: word 7 leads, word 0 ends the string.
std::string format_line_hex(const DataLine& d);

/// Strict text parser for `<time_ns> <R|W> 0x<addr> [0x<128 hex digits>]` records.
/// `#` starts a comment; blank lines are ignored. Throws ParseError with the 1-based
/// line and column of the first defect.
Trace parse_trace(std::istream& in);
Trace parse_trace(std::string_view text);

/// Emits the canonical form accepted by parse_trace.
void write_trace(std::ostream& out, const Trace& trace);
std::string format_trace(const Trace& trace);

/// File helpers; a `.gz` suffix selects gzip transparently.
Trace load_trace(const std::filesystem::path& path);
void save_trace(const std::filesystem::path& path, const Trace& trace);

}  // namespace disturbsim
