#include <zlib.h>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "disturbsim/core/error.hpp"
#include "disturbsim/traces/trace.hpp"

namespace disturbsim {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

struct Token {
    std::string_view text;
    std::size_t column = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size() || line[i] == '#') break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

// Returns the offending offset within the token, or npos on success.
std::size_t parse_hex_u64(std::string_view digits, std::uint64_t& value) {
    if (digits.empty() || digits.size() > 16) return 0;
    value = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const int v = hex_value(digits[i]);
        if (v < 0) return i;
        value = (value << 4) | static_cast<std::uint64_t>(v);
    }
    return std::string_view::npos;
}

DataLine parse_line_hex(const Token& tok, std::size_t lineno) {
    if (tok.text.size() < 2 || tok.text[0] != '0' || (tok.text[1] != 'x' && tok.text[1] != 'X'))
        throw ParseError(lineno, tok.column, "write data must start with 0x");
    const std::string_view digits = tok.text.substr(2);
    if (digits.size() != kLineBits / 4)
        throw ParseError(lineno, tok.column + 2,
                         "write data must have exactly 128 hex digits, got " +
                             std::to_string(digits.size()));
    DataLine d;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const int v = hex_value(digits[i]);
        if (v < 0) throw ParseError(lineno, tok.column + 2 + i, "malformed hex digit in write data");
        const std::size_t nibble = digits.size() - 1 - i;  // 0 = least significant
        d.words[nibble / 16] |= static_cast<std::uint64_t>(v) << ((nibble % 16) * 4);
    }
    return d;
}

}  // namespace

std::string format_line_hex(const DataLine& d) {
    std::string s;
    s.reserve(kLineBits / 4);
    for (std::size_t w = kWordsPerLine; w-- > 0;)
        for (int shift = 60; shift >= 0; shift -= 4) s.push_back(kHexDigits[(d.words[w] >> shift) & 0xf]);
    return s;
}

Trace parse_trace(std::istream& in) {
    Trace out;
    std::string line;
    std::size_t lineno = 0;
    std::uint64_t last_time = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokenize(line);
        if (toks.empty()) continue;

        TraceRecord rec;
        const Token& t0 = toks[0];
        const auto [p, ec] = std::from_chars(t0.text.data(), t0.text.data() + t0.text.size(), rec.time_ns);
        if (ec != std::errc{} || p != t0.text.data() + t0.text.size())
            throw ParseError(lineno, t0.column, "malformed time");
        if (!out.empty() && rec.time_ns < last_time)
            throw ParseError(lineno, t0.column, "decreasing time");

        if (toks.size() < 2) throw ParseError(lineno, line.size() + 1, "missing operation");
        const Token& t1 = toks[1];
        if (t1.text == "R")
            rec.op = TraceOp::Read;
        else if (t1.text == "W")
            rec.op = TraceOp::Write;
        else
            throw ParseError(lineno, t1.column, "operation must be R or W");

        if (toks.size() < 3) throw ParseError(lineno, line.size() + 1, "missing address");
        const Token& t2 = toks[2];
        if (t2.text.size() < 3 || t2.text[0] != '0' || (t2.text[1] != 'x' && t2.text[1] != 'X'))
            throw ParseError(lineno, t2.column, "address must be 0x-prefixed hex");
        if (const auto bad = parse_hex_u64(t2.text.substr(2), rec.byte_addr); bad != std::string_view::npos)
            throw ParseError(lineno, t2.column + 2 + bad, "malformed hex address");

        if (rec.op == TraceOp::Write) {
            if (toks.size() < 4) throw ParseError(lineno, line.size() + 1, "missing write data");
            rec.data = parse_line_hex(toks[3], lineno);
            if (toks.size() > 4) throw ParseError(lineno, toks[4].column, "unexpected trailing field");
        } else if (toks.size() > 3) {
            throw ParseError(lineno, toks[3].column, "read records carry no data");
        }
        last_time = rec.time_ns;
        out.push_back(std::move(rec));
    }
    return out;
}

Trace parse_trace(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_trace(in);
}

void write_trace(std::ostream& out, const Trace& trace) {
    for (const auto& r : trace) {
        out << r.time_ns << (r.op == TraceOp::Read ? " R 0x" : " W 0x");
        char buf[17];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, r.byte_addr, 16);
        (void)ec;
        out.write(buf, end - buf);
        if (r.data) out << " 0x" << format_line_hex(*r.data);
        out << '\n';
    }
}

std::string format_trace(const Trace& trace) {
    std::ostringstream out;
    write_trace(out, trace);
    return out.str();
}

namespace {

bool is_gzip(const std::filesystem::path& p) { return p.extension() == ".gz"; }

}  // namespace

Trace load_trace(const std::filesystem::path& path) {
    if (!is_gzip(path)) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open trace '" + path.string() + "'");
        return parse_trace(in);
    }
    gzFile gz = gzopen(path.c_str(), "rb");
    if (!gz) throw ConfigError("cannot open trace '" + path.string() + "'");
    std::string text;
    char buf[1 << 16];
    int n;
    while ((n = gzread(gz, buf, sizeof buf)) > 0) text.append(buf, static_cast<std::size_t>(n));
    const bool failed = n < 0;
    gzclose(gz);
    if (failed) throw ConfigError("corrupt gzip trace '" + path.string() + "'");
    return parse_trace(std::string_view(text));
}

void save_trace(const std::filesystem::path& path, const Trace& trace) {
    const std::string text = format_trace(trace);
    if (!is_gzip(path)) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write trace '" + path.string() + "'");
        out << text;
        return;
    }
    gzFile gz = gzopen(path.c_str(), "wb");
    if (!gz) throw ConfigError("cannot write trace '" + path.string() + "'");
    const int written = text.empty() ? 0 : gzwrite(gz, text.data(), static_cast<unsigned>(text.size()));
    gzclose(gz);
    if (!text.empty() && written <= 0) throw ConfigError("gzip write failed for '" + path.string() + "'");
}

}  // namespace disturbsim
