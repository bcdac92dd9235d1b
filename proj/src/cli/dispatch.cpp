#include "disturbsim/cli/dispatch.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "disturbsim/baselines/siwc.hpp"
#include "disturbsim/cli/config_file.hpp"
#include "disturbsim/controller/engine.hpp"
#include "disturbsim/core/error.hpp"
#include "disturbsim/metrics/report.hpp"
#include "disturbsim/traces/generators.hpp"

namespace disturbsim::cli {

namespace {

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_path;
    std::string format = "csv";
};

struct GenOptions {
    std::string kind;
    std::string config_path;
    std::uint64_t rounds = 0;
    std::string target = "0x0";
    std::uint64_t gap_ns = 10;
    std::uint64_t n = 0;
    std::uint32_t victims = 1;
    std::uint32_t interleave = 0;
    std::uint32_t flip_bits = 8;
    std::uint32_t aggressor_zero_bits = 32;
    std::uint32_t pressure_zero_bits = 4;
    std::uint32_t pressure_lines = 4096;
    std::uint32_t bank = 0;
    std::uint64_t footprint = 1u << 16;
    std::uint32_t read_percent = 0;
    std::uint64_t seed = 1;
    std::string output_path;
};

struct SweepOptions {
    std::vector<std::string> params;
    bool baseline = false;
    unsigned jobs = 1;
};

const std::vector<std::string_view> kUnavailableStrategies = {"lazy-correction", "adam"};

std::uint64_t parse_address(const std::string& text) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(text, &used, 0);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) throw ConfigError("malformed address '" + text + "'");
    return v;
}

SimConfig resolve_config(const CommonOptions& o) {
    SimConfig cfg;
    if (!o.config_path.empty()) cfg = load_config(o.config_path);
    if (const char* seed = std::getenv("DISTURBSIM_SEED")) apply_setting(cfg, "seed", seed);
    for (const auto& ov : o.overrides) apply_override(cfg, ov);
    cfg.validate();
    return cfg;
}

/// Writes to `-o` when given, otherwise to `out`.
template <typename Fn>
void with_output(const std::string& path, std::ostream& out, Fn&& fn) {
    if (path.empty()) {
        fn(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot write '" + path + "'");
    fn(file);
    if (!file) throw ConfigError("write to '" + path + "' failed");
}

std::string report_notes(const SimConfig& cfg, const std::vector<Strategy>& strategies,
                         const std::vector<std::string>& unavailable) {
    std::ostringstream n;
    n << "energy per-event values are taken from the config (source=config) and default to 0 placeholders";
    for (Strategy s : strategies)
        if (s == Strategy::Siwc) {
            n << "; siwc: fully associative write cache of " << siwc_entries(cfg)
              << " entries per bank, insert coin " << cfg.siwc.q_insert.num << '/' << cfg.siwc.q_insert.den
              << ", evict coin " << cfg.siwc.q_evict.num << '/' << cfg.siwc.q_evict.den
              << " (approximation: assumed probabilities)";
            break;
        }
    for (const auto& u : unavailable) n << "; " << u << ": unavailable";
    return n.str();
}

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config_path, "Configuration file");
    cmd->add_option("--set", o.overrides, "Override a config key (key=value), repeatable");
    cmd->add_option("-o,--output", o.output_path, "Output file (default stdout)");
    cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

void run_gen(const GenOptions& g, std::ostream& out) {
    SimConfig cfg;
    if (!g.config_path.empty()) cfg = load_config(g.config_path);
    cfg.geometry.validate();
    Rng rng(g.seed);
    Trace trace;
    if (g.kind == "hammer") {
        trace = gen_hammer(parse_address(g.target), g.rounds, g.gap_ns);
    } else if (g.kind == "slow-flip") {
        SlowFlipParams p;
        p.victims = g.victims;
        p.interleave = g.interleave;
        p.rounds = static_cast<std::uint32_t>(g.rounds);
        p.flip_bits = g.flip_bits;
        p.aggressor_zero_bits = g.aggressor_zero_bits;
        p.pressure_zero_bits = g.pressure_zero_bits;
        p.pressure_lines = g.pressure_lines;
        p.bank = g.bank;
        p.gap_ns = g.gap_ns;
        trace = gen_slow_flip(p, cfg.geometry, rng);
    } else {
        SyntheticParams p;
        p.kind = parse_synthetic_kind(g.kind);
        p.n = g.n;
        p.footprint_lines = g.footprint;
        p.read_percent = g.read_percent;
        p.gap_ns = g.gap_ns;
        trace = gen_synthetic(p, cfg.geometry, rng);
    }
    if (g.output_path.empty())
        write_trace(out, trace);
    else
        save_trace(g.output_path, trace);
}

void run_single(const CommonOptions& o, const std::string& trace_path, std::ostream& out) {
    const SimConfig cfg = resolve_config(o);
    const ReportFormat fmt = parse_report_format(o.format);
    const Trace trace = load_trace(trace_path);
    const RunStats stats = run_to_completion(cfg, trace);
    const std::vector<LabeledStats> rows = {{std::string(to_string(cfg.strategy)), cfg.strategy, stats}};
    const std::string notes = report_notes(cfg, {cfg.strategy}, {});
    with_output(o.output_path, out, [&](std::ostream& s) { emit_stats_report(s, rows, fmt, notes); });
}

void run_compare(const CommonOptions& o, const std::string& trace_path, const std::string& list,
                 std::ostream& out) {
    const SimConfig base = resolve_config(o);
    const ReportFormat fmt = parse_report_format(o.format);
    std::vector<Strategy> strategies;
    std::vector<std::string> unavailable;
    std::stringstream ss(list);
    for (std::string name; std::getline(ss, name, ',');) {
        if (std::find(kUnavailableStrategies.begin(), kUnavailableStrategies.end(), name) !=
            kUnavailableStrategies.end()) {
            unavailable.push_back(name);
            continue;
        }
        strategies.push_back(parse_strategy(name));
    }
    if (strategies.empty()) throw ConfigError("no strategies to compare");

    const Trace trace = load_trace(trace_path);
    std::vector<LabeledStats> rows;
    for (Strategy s : strategies) {
        SimConfig cfg = base;
        cfg.strategy = s;
        rows.push_back({std::string(to_string(s)), s, run_to_completion(cfg, trace)});
    }
    const std::string notes = report_notes(base, strategies, unavailable);
    with_output(o.output_path, out, [&](std::ostream& s) { emit_stats_report(s, rows, fmt, notes); });
}

struct SweepPoint {
    std::string label;
    SimConfig config;
};

std::vector<SweepPoint> expand_sweep(const SimConfig& base, const SweepOptions& so) {
    std::vector<SweepPoint> points = {{"", base}};
    for (const auto& param : so.params) {
        const auto eq = param.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == param.size())
            throw ConfigError("sweep parameter '" + param + "' is not key=v1,v2,...");
        const std::string key = param.substr(0, eq);
        std::vector<std::string> values;
        std::stringstream ss(param.substr(eq + 1));
        for (std::string v; std::getline(ss, v, ',');) values.push_back(v);

        std::vector<SweepPoint> next;
        for (const auto& p : points)
            for (const auto& v : values) {
                SweepPoint q = p;
                apply_setting(q.config, key, v);
                q.label += (q.label.empty() ? "" : " ") + key + "=" + v;
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }
    if (so.baseline) {
        SweepPoint b{"baseline", base};
        b.config.strategy = Strategy::None;
        points.insert(points.begin(), std::move(b));
    }
    for (auto& p : points) {
        if (p.label.empty()) p.label = std::string(to_string(p.config.strategy));
        p.config.validate();
    }
    return points;
}

void run_sweep(const CommonOptions& o, const std::string& trace_path, const SweepOptions& so,
               std::ostream& out) {
    const SimConfig base = resolve_config(o);
    const ReportFormat fmt = parse_report_format(o.format);
    const std::vector<SweepPoint> points = expand_sweep(base, so);
    const bool has_baseline = std::any_of(points.begin(), points.end(),
                                          [](const SweepPoint& p) { return p.config.strategy == Strategy::None; });
    if (!has_baseline) throw ReportError("missing baseline");

    const Trace trace = load_trace(trace_path);
    std::vector<SweepEntry> entries(points.size());
    std::vector<std::exception_ptr> failures(points.size());
    auto run_one = [&](std::size_t i) {
        try {
            entries[i] = {points[i].label, points[i].config, run_to_completion(points[i].config, trace)};
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(so.jobs, static_cast<unsigned>(points.size())));
    if (jobs == 1) {
        for (std::size_t i = 0; i < points.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (std::size_t i; (i = cursor.fetch_add(1)) < points.size();) run_one(i);
            });
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    const auto rows = tradeoff_report(entries);
    with_output(o.output_path, out, [&](std::ostream& s) { emit_tradeoff_report(s, rows, fmt); });
}

int fail(std::ostream& err, int code, std::string_view what) {
    err << "E:" << code << ':' << what << '\n';
    return code;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trace-driven PCM write-disturbance simulator", "disturbsim"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic trace");
    gen_cmd->add_option("--kind", gen.kind, "Trace kind")
        ->required()
        ->check(CLI::IsMember({"hammer", "slow-flip", "uniform", "hotspot", "pmix-proxy"}));
    gen_cmd->add_option("--config", gen.config_path, "Configuration file supplying the geometry");
    gen_cmd->add_option("--rounds", gen.rounds, "Hammer or slow-flip rounds");
    gen_cmd->add_option("--target", gen.target, "Hammer target byte address");
    gen_cmd->add_option("--gap", gen.gap_ns, "Nanoseconds between records");
    gen_cmd->add_option("--n", gen.n, "Record count for synthetic kinds");
    gen_cmd->add_option("--victims", gen.victims, "Slow-flip aggressor lines");
    gen_cmd->add_option("--interleave", gen.interleave, "Slow-flip pressure writes per visit");
    gen_cmd->add_option("--flip-bits", gen.flip_bits, "Slow-flip bits cleared per visit");
    gen_cmd->add_option("--aggressor-zero-bits", gen.aggressor_zero_bits, "Zero bits per word at rest");
    gen_cmd->add_option("--pressure-zero-bits", gen.pressure_zero_bits, "Zero bits per word of pressure data");
    gen_cmd->add_option("--pressure-lines", gen.pressure_lines, "Distinct pressure lines");
    gen_cmd->add_option("--bank", gen.bank, "Flat bank index for slow-flip lines");
    gen_cmd->add_option("--footprint", gen.footprint, "Synthetic footprint in lines");
    gen_cmd->add_option("--read-percent", gen.read_percent, "Share of reads in synthetic traces")
        ->check(CLI::Range(0u, 100u));
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("-o,--output", gen.output_path, "Output trace (.gz compresses)");

    CommonOptions run_opts;
    std::string run_trace;
    auto* run_cmd = app.add_subcommand("run", "Simulate one trace");
    add_common(run_cmd, run_opts);
    run_cmd->add_option("--trace", run_trace, "Input trace")->required();

    CommonOptions cmp_opts;
    std::string cmp_trace;
    std::string cmp_list = "none,vnc,siwc,imdb";
    auto* cmp_cmd = app.add_subcommand("compare", "Simulate one trace under several strategies");
    add_common(cmp_cmd, cmp_opts);
    cmp_cmd->add_option("--trace", cmp_trace, "Input trace")->required();
    cmp_cmd->add_option("--strategies", cmp_list, "Comma-separated strategy list");

    CommonOptions sw_opts;
    std::string sw_trace;
    SweepOptions sweep;
    auto* sw_cmd = app.add_subcommand("sweep", "Design-parameter sweep with a trade-off table");
    add_common(sw_cmd, sw_opts);
    sw_cmd->add_option("--trace", sw_trace, "Input trace")->required();
    sw_cmd->add_option("--param", sweep.params, "key=v1,v2,... (repeatable; cartesian product)");
    sw_cmd->add_flag("--baseline", sweep.baseline, "Prepend a strategy=none run");
    sw_cmd->add_option("--jobs", sweep.jobs, "Concurrent simulations")->check(CLI::PositiveNumber);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("disturbsim");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return fail(err, kExitUsage, e.what());
    }

    try {
        if (gen_cmd->parsed())
            run_gen(gen, out);
        else if (run_cmd->parsed())
            run_single(run_opts, run_trace, out);
        else if (cmp_cmd->parsed())
            run_compare(cmp_opts, cmp_trace, cmp_list, out);
        else
            run_sweep(sw_opts, sw_trace, sweep, out);
    } catch (const ParseError& e) {
        return fail(err, kExitInput, e.what());
    } catch (const ConfigError& e) {
        return fail(err, kExitInput, e.what());
    } catch (const RangeError& e) {
        return fail(err, kExitInput, e.what());
    } catch (const ReportError& e) {
        return fail(err, kExitInput, e.what());
    } catch (const std::exception& e) {
        return fail(err, kExitInternal, e.what());
    }
    return kExitOk;
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace disturbsim::cli
