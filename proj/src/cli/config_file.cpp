#include "disturbsim/cli/config_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "disturbsim/core/error.hpp"

namespace disturbsim::cli {

namespace {

struct Setting {
    std::string_view section;
    std::string_view name;
    std::function<void(SimConfig&, std::string_view)> set;
    std::function<std::string(const SimConfig&)> get;

    std::string key() const {
        return section.empty() ? std::string(name) : std::string(section) + "." + std::string(name);
    }
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view value, std::string_view expected) {
    throw ConfigError("invalid value '" + std::string(value) + "': expected " + std::string(expected));
}

std::uint64_t to_u64(std::string_view v) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || p != v.data() + v.size()) bad_value(v, "a non-negative integer");
    return out;
}

std::uint32_t to_u32(std::string_view v) {
    const std::uint64_t x = to_u64(v);
    if (x > std::numeric_limits<std::uint32_t>::max()) bad_value(v, "an integer below 2^32");
    return static_cast<std::uint32_t>(x);
}

double to_double(std::string_view v) {
    double out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || p != v.data() + v.size() || out < 0) bad_value(v, "a non-negative number");
    return out;
}

bool to_bool(std::string_view v) {
    if (v == "true") return true;
    if (v == "false") return false;
    bad_value(v, "true or false");
}

Rational to_rational(std::string_view v) {
    const auto slash = v.find('/');
    if (slash == std::string_view::npos) return {to_u64(v), 1};
    const Rational r{to_u64(v.substr(0, slash)), to_u64(v.substr(slash + 1))};
    if (r.den == 0) bad_value(v, "a fraction with a non-zero denominator");
    return r;
}

std::string rational_text(const Rational& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

std::string double_text(double d) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, d);
    (void)ec;
    return std::string(buf, p);
}

#define DS_U32(sec, nm, field)                                                                 \
    Setting{sec, #nm, [](SimConfig& c, std::string_view v) { c.field = to_u32(v); },           \
            [](const SimConfig& c) { return std::to_string(c.field); }}
#define DS_U64(sec, nm, field)                                                                 \
    Setting{sec, #nm, [](SimConfig& c, std::string_view v) { c.field = to_u64(v); },           \
            [](const SimConfig& c) { return std::to_string(c.field); }}
#define DS_F64(sec, nm, field)                                                                 \
    Setting{sec, #nm, [](SimConfig& c, std::string_view v) { c.field = to_double(v); },        \
            [](const SimConfig& c) { return double_text(c.field); }}
#define DS_RAT(sec, nm, field)                                                                 \
    Setting{sec, #nm, [](SimConfig& c, std::string_view v) { c.field = to_rational(v); },      \
            [](const SimConfig& c) { return rational_text(c.field); }}

const std::vector<Setting>& settings() {
    static const std::vector<Setting> table = {
        Setting{"", "strategy", [](SimConfig& c, std::string_view v) { c.strategy = parse_strategy(v); },
                [](const SimConfig& c) { return std::string(to_string(c.strategy)); }},
        DS_U64("", seed, seed),

        DS_U32("geometry", ranks, geometry.ranks),
        DS_U32("geometry", banks_per_rank, geometry.banks_per_rank),
        DS_U32("geometry", rows_per_bank, geometry.rows_per_bank),
        DS_U32("geometry", cols_per_row, geometry.cols_per_row),

        DS_U64("timing", read_ns, timing.read_ns),
        DS_U64("timing", set_ns, timing.set_ns),
        DS_U64("timing", reset_ns, timing.reset_ns),

        DS_U32("media", disturb_limit, disturb_limit),
        Setting{"media", "initial_fill",
                [](SimConfig& c, std::string_view v) {
                    if (v == "ones")
                        c.initial_fill = InitialFill::Ones;
                    else if (v == "zeros")
                        c.initial_fill = InitialFill::Zeros;
                    else
                        bad_value(v, "ones or zeros");
                },
                [](const SimConfig& c) { return std::string(c.initial_fill == InitialFill::Ones ? "ones" : "zeros"); }},

        DS_U32("imdb", threshold, threshold),
        DS_RAT("imdb", insert_prob, insert_prob),
        DS_U32("imdb", n_mt, n_mt),
        DS_U32("imdb", n_b, n_b),
        DS_U32("imdb", n_groups, n_groups),
        Setting{"imdb", "prior_knowledge", [](SimConfig& c, std::string_view v) { c.prior_knowledge = to_bool(v); },
                [](const SimConfig& c) { return std::string(c.prior_knowledge ? "true" : "false"); }},
        DS_U32("imdb", hit_cycles, hit_cycles),
        DS_U32("imdb", insert_cycles, insert_cycles),

        DS_U32("controller", queue_depth, queue_depth),
        Setting{"controller", "drain_low_watermark",
                [](SimConfig& c, std::string_view v) {
                    if (v == "auto")
                        c.drain_low_watermark.reset();
                    else
                        c.drain_low_watermark = to_u32(v);
                },
                [](const SimConfig& c) {
                    return c.drain_low_watermark ? std::to_string(*c.drain_low_watermark) : std::string("auto");
                }},
        DS_U64("controller", clock_hz, controller_clock_hz),

        DS_F64("energy", pcm_read_pj, energy.pcm_read_pj),
        DS_F64("energy", pcm_set_pj_per_bit, energy.pcm_set_pj_per_bit),
        DS_F64("energy", pcm_reset_pj_per_bit, energy.pcm_reset_pj_per_bit),
        DS_F64("energy", sram_search_pj, energy.sram_search_pj),
        DS_F64("energy", sram_access_pj, energy.sram_access_pj),
        DS_F64("energy", bb_access_pj, energy.bb_access_pj),

        DS_RAT("siwc", q_insert, siwc.q_insert),
        DS_RAT("siwc", q_evict, siwc.q_evict),
        DS_U32("siwc", entries, siwc.entries),
        Setting{"siwc", "parity",
                [](SimConfig& c, std::string_view v) {
                    if (v == "entry")
                        c.siwc.parity = SiwcParity::Entry;
                    else if (v == "size")
                        c.siwc.parity = SiwcParity::Size;
                    else
                        bad_value(v, "entry or size");
                },
                [](const SimConfig& c) { return std::string(c.siwc.parity == SiwcParity::Entry ? "entry" : "size"); }},
    };
    return table;
}

#undef DS_U32
#undef DS_U64
#undef DS_F64
#undef DS_RAT

const Setting& find_setting(std::string_view key) {
    const Setting* match = nullptr;
    const bool qualified = key.find('.') != std::string_view::npos;
    for (const auto& s : settings()) {
        if (qualified ? s.key() == key : s.name == key) {
            if (match) throw ConfigError("ambiguous key '" + std::string(key) + "'");
            match = &s;
        }
    }
    if (!match) throw ConfigError("unknown key '" + std::string(key) + "'");
    return *match;
}

}  // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& s : settings()) keys.push_back(s.key());
    return keys;
}

void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value) {
    const Setting& s = find_setting(trim(key));
    try {
        s.set(cfg, trim(value));
    } catch (const ConfigError& e) {
        throw ConfigError(s.key() + ": " + e.what());
    }
}

void apply_override(SimConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("override '" + std::string(assignment) + "' is not key=value");
    apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

SimConfig parse_config(std::istream& in, SimConfig base) {
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view text = line;
        if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        const std::string_view body = trim(text);
        if (body.empty()) continue;
        const std::size_t column = static_cast<std::size_t>(body.data() - line.data()) + 1;
        if (body.front() == '[') {
            if (body.back() != ']' || body.size() < 3) throw ParseError(lineno, column, "malformed section header");
            section = std::string(trim(body.substr(1, body.size() - 2)));
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ParseError(lineno, column, "expected key = value");
        const std::string_view name = trim(body.substr(0, eq));
        if (name.empty()) throw ParseError(lineno, column, "missing key");
        const std::string key = section.empty() ? std::string(name) : section + "." + std::string(name);
        try {
            apply_setting(base, key, body.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ParseError(lineno, column, e.what());
        }
    }
    return base;
}

SimConfig parse_config(std::string_view text, SimConfig base) {
    std::istringstream in{std::string(text)};
    return parse_config(in, std::move(base));
}

SimConfig load_config(const std::filesystem::path& path, SimConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    return parse_config(in, std::move(base));
}

std::string format_config(const SimConfig& cfg) {
    std::ostringstream out;
    std::string_view section = "";
    bool first = true;
    for (const auto& s : settings()) {
        if (s.section != section || first) {
            if (s.section != section) out << "\n[" << s.section << "]\n";
            section = s.section;
            first = false;
        }
        out << s.name << " = " << s.get(cfg) << '\n';
    }
    return out.str();
}

}  // namespace disturbsim::cli
