// One line per acceptance criterion; exits non-zero if any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "disturbsim/cli/dispatch.hpp"
#include "disturbsim/controller/engine.hpp"
#include "disturbsim/imdb/tables.hpp"
#include "disturbsim/imdb/victim.hpp"
#include "disturbsim/traces/generators.hpp"
#include "support/lru_policy.hpp"
#include "support/oracle.hpp"

namespace ds = disturbsim;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* what, const std::function<Verdict()>& check) {
    Verdict v;
    try {
        v = check();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s (%s)\n", id, v.pass ? "PASS" : "FAIL", what, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
}

std::string str(std::uint64_t v) { return std::to_string(v); }

// Uniform random reads and sparse-zero writes over the whole module.
ds::Trace random_trace(std::uint64_t seed, std::size_t n, const ds::Geometry& g) {
    ds::Rng rng(seed);
    ds::Trace t;
    std::uint64_t now = 0;
    for (std::size_t i = 0; i < n; ++i) {
        now += rng.uniform(30);
        const std::uint64_t a = rng.uniform(g.capacity_bytes()) & ~std::uint64_t{63};
        if (rng.uniform(4) == 0) {
            t.push_back(ds::TraceRecord::read(now, a));
        } else {
            ds::DataLine d;
            for (auto& w : d.words) w = rng.uniform(2) ? rng.next() | rng.next() : rng.next();
            t.push_back(ds::TraceRecord::write(now, a, d));
        }
    }
    return t;
}

// Scaled-down module and disturbance limit shared by the workload criteria. The
// threshold stays above any prior-knowledge count of a resting aggressor pattern.
ds::SimConfig workload_config() {
    ds::SimConfig c;
    c.geometry = ds::small_geometry(512, 64);
    c.disturb_limit = 128;
    c.threshold = 63;
    c.initial_fill = ds::InitialFill::Zeros;
    return c;
}

// More aggressors than a write cache of equal entry count can hold.
ds::SlowFlipParams composite_params() {
    ds::SlowFlipParams p;
    p.victims = 384;
    p.interleave = 4;
    p.rounds = 256;
    p.pressure_lines = 2048;
    return p;
}

// Few aggressors drowned in pressure writes, for a 16-entry main table.
ds::SlowFlipParams policy_params() {
    ds::SlowFlipParams p;
    p.victims = 16;
    p.interleave = 8;
    p.rounds = 256;
    p.pressure_lines = 2048;
    return p;
}

ds::SimConfig policy_config() {
    ds::SimConfig c = workload_config();
    c.strategy = ds::Strategy::Imdb;
    c.insert_prob = {1, 16};
    c.n_mt = 16;
    c.n_b = 0;
    c.n_groups = 8;
    return c;
}

ds::Trace append(ds::Trace a, const ds::Trace& b) {
    const std::uint64_t base = a.empty() ? 0 : a.back().time_ns + 10;
    for (auto r : b) {
        r.time_ns += base;
        a.push_back(r);
    }
    return a;
}

ds::Trace composite(const ds::SimConfig& cfg, std::uint64_t seed) {
    ds::Rng rng(seed);
    const ds::Trace sf = ds::gen_slow_flip(composite_params(), cfg.geometry, rng);
    const std::uint64_t hammer_target =
        ds::compose_address({0, 0, cfg.geometry.rows_per_bank - 2, static_cast<std::uint32_t>(seed % 64)}, cfg.geometry);
    return append(sf, ds::gen_hammer(hammer_target, 4 * cfg.disturb_limit));
}

ds::EngineHooks lru_hooks() {
    ds::EngineHooks h;
    h.policy_factory = [](const ds::SimConfig& c) { return std::make_unique<ds::testing::LruPolicy>(c.n_mt); };
    return h;
}

Verdict a1() {
    std::uint64_t runs = 0, mismatches = 0, events = 0;
    for (std::uint32_t limit : {2u, 4u, 8u}) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            ds::SimConfig cfg;
            cfg.geometry = ds::small_geometry(8, 1);
            cfg.disturb_limit = limit;
            cfg.threshold = 0;
            cfg.strategy = ds::Strategy::None;
            cfg.initial_fill = seed % 2 ? ds::InitialFill::Zeros : ds::InitialFill::Ones;
            const ds::Trace t = random_trace(seed * 31 + limit, 500, cfg.geometry);
            const auto got = ds::run_to_completion(cfg, t).wde_raw;
            const auto want = ds::testing::oracle_wde(cfg, t);
            mismatches += got != want;
            events += want;
            ++runs;
        }
    }
    return {mismatches == 0 && events > 0, str(runs) + " runs, " + str(mismatches) + " mismatches, " + str(events) +
                                               " oracle events"};
}

Verdict a2() {
    ds::SimConfig cfg;
    cfg.disturb_limit = 64;
    cfg.threshold = 31;
    cfg.insert_prob = {1, 1};
    cfg.initial_fill = ds::InitialFill::Zeros;
    // An interior row so both neighbours are idle victims.
    const std::uint64_t target = ds::compose_address({0, 0, 100, 3}, cfg.geometry);
    const ds::Trace t = ds::gen_hammer(target, 4 * cfg.disturb_limit);

    cfg.strategy = ds::Strategy::None;
    const auto none = ds::run_to_completion(cfg, t).wde_raw;
    const auto oracle = ds::testing::oracle_wde(cfg, t);
    // Every all-zeros write after an all-ones one is one effective pulse; each idle
    // neighbour cell flips once, after L of them, and then stores a 1.
    const std::uint64_t pulses = 4 * cfg.disturb_limit;
    const std::uint64_t expect = 2 * 512 * std::min<std::uint64_t>(1, pulses / cfg.disturb_limit);

    bool ok = none == oracle && none == expect;
    std::string detail = "none=" + str(none) + " oracle=" + str(oracle) + " expected=" + str(expect);
    cfg.strategy = ds::Strategy::Imdb;
    for (std::uint32_t n_mt : {1u, 16u, 256u}) {
        cfg.n_mt = n_mt;
        cfg.n_groups = std::min(n_mt, 8u);
        const auto w = ds::run_to_completion(cfg, t).wde_raw;
        ok = ok && w == 0;
        detail += " imdb(n_mt=" + str(n_mt) + ")=" + str(w);
    }
    return {ok, detail};
}

Verdict a3() {
    ds::SimConfig cfg = policy_config();
    std::uint64_t proposed = 0, lru = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        ds::Rng rng(seed);
        const ds::Trace t = ds::gen_slow_flip(policy_params(), cfg.geometry, rng);
        proposed += ds::run_to_completion(cfg, t).wde_raw;
        lru += ds::run_to_completion(cfg, t, lru_hooks()).wde_raw;
    }
    return {proposed < lru, "proposed=" + str(proposed) + " lru=" + str(lru) + " over 5 seeds"};
}

Verdict a4() {
    ds::SimConfig cfg = workload_config();
    cfg.strategy = ds::Strategy::Imdb;
    cfg.n_mt = 256;
    cfg.insert_prob = {1, 64};
    ds::SlowFlipParams p = composite_params();
    p.victims = 320;
    p.interleave = 2;
    p.aggressor_zero_bits = 40;
    bool ok = true;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        cfg.seed = seed;
        ds::Rng rng(seed);
        const ds::Trace t = ds::gen_slow_flip(p, cfg.geometry, rng);
        cfg.prior_knowledge = true;
        const auto with = ds::run_to_completion(cfg, t).wde_raw;
        cfg.prior_knowledge = false;
        const auto without = ds::run_to_completion(cfg, t).wde_raw;
        ok = ok && without > 0 && 2 * with <= without;
        detail += (seed > 1 ? "; " : "") + std::string("seed ") + str(seed) + ": with=" + str(with) +
                  " without=" + str(without);
    }
    return {ok, detail};
}

ds::imdb::MainTable random_table(ds::Rng& gen, std::size_t n) {
    ds::imdb::MainTable mt(n);
    for (std::size_t i = 0; i < n; ++i) {
        ds::imdb::MainTableEntry e;
        e.row_col = static_cast<std::uint32_t>(i);
        ds::imdb::ZfcArray z{};
        for (auto& v : z) v = static_cast<std::uint16_t>(gen.uniform(n == 8 ? 3 : 64));
        e.reset_counters(z);
        e.rewrite_cntr = static_cast<std::uint8_t>(gen.uniform(3));
        mt.put(i, e);
    }
    return mt;
}

Verdict a5() {
    // (a) one comparator per entry must reproduce the exact victim.
    std::uint64_t tables = 0, mismatches = 0;
    ds::Rng rng(55);
    {
        std::vector<int> digits(8, 0);
        for (;;) {
            ds::imdb::MainTable mt(8);
            for (int i = 0; i < 8; ++i) {
                ds::imdb::MainTableEntry e;
                e.row_col = static_cast<std::uint32_t>(i);
                ds::imdb::ZfcArray z{};
                z[static_cast<std::size_t>(i) % z.size()] = static_cast<std::uint16_t>(digits[i] / 2);
                e.reset_counters(z);
                e.rewrite_cntr = static_cast<std::uint8_t>(digits[i] % 2);
                mt.put(static_cast<std::size_t>(i), e);
            }
            mismatches += ds::imdb::select_victim_apple(mt, 8, rng) != ds::imdb::select_victim_exact(mt);
            ++tables;
            int i = 0;
            while (i < 8 && ++digits[i] == 6) digits[i++] = 0;
            if (i == 8) break;
        }
    }
    ds::Rng gen(56);
    for (int t = 0; t < 10000; ++t) {
        const auto mt = random_table(gen, 256);
        mismatches += ds::imdb::select_victim_apple(mt, 256, rng) != ds::imdb::select_victim_exact(mt);
        ++tables;
    }

    // (b) fewer groups sample fewer candidates and evict worse.
    ds::SimConfig cfg = policy_config();
    std::uint64_t one = 0, eight = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        ds::Rng r(seed);
        const ds::Trace t = ds::gen_slow_flip(policy_params(), cfg.geometry, r);
        cfg.n_groups = 1;
        one += ds::run_to_completion(cfg, t).wde_raw;
        cfg.n_groups = 8;
        eight += ds::run_to_completion(cfg, t).wde_raw;
    }
    return {mismatches == 0 && one > eight, str(tables) + " tables, " + str(mismatches) +
                                                " mismatches; n_groups=1 " + str(one) + " vs n_groups=8 " + str(eight)};
}

struct Totals {
    std::uint64_t wde = 0;
    std::uint64_t exposed = 0;
    std::uint64_t media_reads = 0;
    ds::TimePs time = 0;
};

Totals composite_totals(ds::Strategy s) {
    ds::SimConfig cfg = workload_config();
    cfg.strategy = s;
    Totals out;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        const auto st = ds::run_to_completion(cfg, composite(cfg, seed));
        out.wde += st.wde_raw;
        out.exposed += st.wde_exposed;
        out.media_reads += st.media_reads;
        out.time += st.completion_time_ps;
    }
    return out;
}

Verdict a6() {
    const auto imdb = composite_totals(ds::Strategy::Imdb).wde;
    const auto siwc = composite_totals(ds::Strategy::Siwc).wde;
    const auto none = composite_totals(ds::Strategy::None).wde;
    return {imdb < siwc && siwc < none, "imdb=" + str(imdb) + " siwc=" + str(siwc) + " none=" + str(none)};
}

Verdict a7() {
    bool ok = true;
    std::string detail;
    std::uint64_t exposed = 0, short_reads = 0;
    auto check = [&](ds::SimConfig cfg, const ds::Trace& t) {
        std::uint64_t interior = 0;
        for (const auto& r : t)
            if (r.op == ds::TraceOp::Write) {
                const auto row = ds::decompose_address(r.byte_addr, cfg.geometry).row;
                interior += row > 0 && row + 1 < cfg.geometry.rows_per_bank;
            }
        cfg.strategy = ds::Strategy::None;
        const auto none = ds::run_to_completion(cfg, t);
        cfg.strategy = ds::Strategy::Vnc;
        const auto vnc = ds::run_to_completion(cfg, t);
        exposed += vnc.wde_exposed;
        short_reads += vnc.media_reads < none.media_reads + 4 * interior;
    };
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ds::SimConfig cfg;
        cfg.geometry = ds::small_geometry(8, 2, 1, 2);
        cfg.disturb_limit = 2 + static_cast<std::uint32_t>(seed % 4);
        cfg.threshold = 0;
        cfg.initial_fill = seed % 2 ? ds::InitialFill::Zeros : ds::InitialFill::Ones;
        check(cfg, random_trace(seed, 2000, cfg.geometry));
    }
    check(workload_config(), composite(workload_config(), 1));
    ok = exposed == 0 && short_reads == 0;
    const auto vnc = composite_totals(ds::Strategy::Vnc);
    const auto imdb = composite_totals(ds::Strategy::Imdb);
    ok = ok && vnc.exposed == 0 && vnc.time > imdb.time;
    detail = "exposed=" + str(exposed + vnc.exposed) + ", traces short of reads=" + str(short_reads) +
             ", composite time vnc=" + str(static_cast<std::uint64_t>(vnc.time / 1000)) +
             "ns imdb=" + str(static_cast<std::uint64_t>(imdb.time / 1000)) + "ns";
    return {ok, detail};
}

Verdict a8() {
    const auto c = ds::imdb::sram_capacity(256, 8, 4);
    const bool ok = c.main_table_bits_per_bank == 27648 && c.barrier_bits_per_bank == 4424 &&
                    c.total_bits() == 128288 && c.total_bits() / 8 / 1024 == 15;
    return {ok, "main table " + str(c.main_table_bits_per_bank) + " bits, barrier buffer " +
                    str(c.barrier_bits_per_bank) + " bits per bank, total " + str(c.total_bits()) + " bits"};
}

std::string run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    if (ds::cli::dispatch(args, out, err) != 0) throw std::runtime_error("cli failed: " + err.str());
    return out.str();
}

Verdict a9() {
    const char* tmp = std::getenv("DISTURBSIM_TEST_TMP");
    const auto dir = std::filesystem::path(tmp ? tmp : std::filesystem::temp_directory_path().string());
    const std::string trace = (dir / "acceptance_a9.txt.gz").string();
    run_cli({"gen", "--kind", "hotspot", "--n", "20000", "--read-percent", "20", "--seed", "9", "-o", trace});
    bool identical = true;
    for (const char* s : {"none", "vnc", "siwc", "imdb"}) {
        const std::vector<std::string> args = {"run", "--trace", trace, "--set", std::string("strategy=") + s,
                                               "--set", "insert_prob=1/4", "--format", "json"};
        identical = identical && run_cli(args) == run_cli(args);
    }

    std::uint64_t schedules = 0, violations = 0, contested = 0;
    for (std::uint64_t seed = 1; seed <= 10000; ++seed) {
        ds::SimConfig cfg;
        cfg.geometry = ds::small_geometry(6, 2, 1, 1 + static_cast<std::uint32_t>(seed % 2));
        cfg.disturb_limit = 8;
        cfg.threshold = 1 + static_cast<std::uint32_t>(seed % 3);
        cfg.insert_prob = {1, 1 + seed % 3};
        cfg.n_mt = 4;
        cfg.n_b = static_cast<std::uint32_t>(seed % 3);
        cfg.n_groups = 2;
        cfg.queue_depth = 2 + static_cast<std::uint32_t>(seed % 6);
        cfg.strategy = ds::Strategy::Imdb;
        cfg.seed = seed;
        ds::EngineHooks hooks;
        hooks.on_issue = [&](std::uint32_t, const ds::Command& c, const ds::BankQueues& q) {
            if (c.kind != ds::CommandKind::PreWriteRead) return;
            for (const auto& w : q.writes)
                if (w.kind == ds::CommandKind::Rewrite) {
                    ++violations;
                    return;
                }
        };
        hooks.on_issue = [&, inner = hooks.on_issue](std::uint32_t b, const ds::Command& c, const ds::BankQueues& q) {
            for (const auto& w : q.writes) contested += w.kind == ds::CommandKind::Rewrite && !q.reads.empty();
            inner(b, c, q);
        };
        ds::run_to_completion(cfg, random_trace(seed, 60, cfg.geometry), hooks);
        ++schedules;
    }
    return {identical && violations == 0 && contested > 0,
            std::string(identical ? "reports byte-identical" : "reports differ") + "; " + str(schedules) +
                " schedules, " + str(violations) + " violations, " + str(contested) + " contested picks"};
}

}  // namespace

int main() {
    report("A1", "engine matches per-cell pulse oracle", a1);
    report("A2", "hammer is fully blocked by the barrier", a2);
    report("A3", "proposed victim policy beats LRU", a3);
    report("A4", "prior knowledge at least halves WDEs", a4);
    report("A5", "AppLE degeneracy and group trend", a5);
    report("A6", "imdb < siwc < none on composite", a6);
    report("A7", "VnC exposes nothing and pays in reads and time", a7);
    report("A8", "SRAM capacity arithmetic", a8);
    report("A9", "determinism and scheduling priority", a9);
    return failures == 0 ? 0 : 1;
}
