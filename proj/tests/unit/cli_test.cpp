#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "disturbsim/cli/config_file.hpp"
#include "disturbsim/cli/dispatch.hpp"
#include "disturbsim/core/error.hpp"
#include "disturbsim/traces/trace.hpp"
#include "json.hpp"

namespace disturbsim {
namespace {

std::string scratch(const std::string& name) {
    const char* dir = std::getenv("DISTURBSIM_TEST_TMP");
    return (std::filesystem::path(dir ? dir : std::filesystem::temp_directory_path().string()) / name).string();
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
}

TEST(Cli, GenHammerWritesFourRecords) {
    const std::string path = scratch("cli_hammer.txt");
    const Result r = cli({"gen", "--kind", "hammer", "--rounds", "2", "--target", "64", "-o", path});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const Trace t = load_trace(path);
    ASSERT_EQ(t.size(), 4u);
    EXPECT_EQ(t[0].byte_addr, 64u);
}

TEST(Cli, RunOnEmptyTraceReportsZeros) {
    const std::string path = scratch("cli_empty.txt");
    write_file(path, "");
    const Result r = cli({"run", "--trace", path, "--format", "json"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["rows"].size(), 1u);
    EXPECT_EQ(doc["rows"][0]["wde_raw"], 0);
    EXPECT_EQ(doc["rows"][0]["host_writes"], 0);
    EXPECT_EQ(doc["rows"][0]["completion_time_ns"], 0.0);
}

TEST(Cli, SweepWithoutBaselineIsAnInputError) {
    const std::string path = scratch("cli_sweep.txt");
    write_file(path, "0 R 0x0\n");
    const Result r = cli({"sweep", "--trace", path, "--set", "strategy=imdb", "--param", "n_mt=16,32"});
    EXPECT_EQ(r.code, cli::kExitInput);
    EXPECT_EQ(r.err, "E:2:missing baseline\n");
}

TEST(Cli, SweepWithBaselineLabelsPoints) {
    const std::string path = scratch("cli_sweep2.txt");
    write_file(path, "0 W 0x0 0x" + std::string(128, '0') + "\n5 R 0x40\n");
    const Result r = cli({"sweep", "--trace", path, "--set", "strategy=imdb", "--param", "n_mt=16,32",
                          "--param", "n_groups=1,2", "--baseline", "--jobs", "3"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    std::istringstream in(r.out);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    ASSERT_EQ(lines.size(), 6u);
    EXPECT_NE(lines[1].find(",baseline,none,"), std::string::npos);
    EXPECT_NE(lines[2].find("n_mt=16 n_groups=1"), std::string::npos);
    EXPECT_NE(lines[5].find("n_mt=32 n_groups=2"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, cli::kExitUsage);
    EXPECT_EQ(cli({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(cli({"run"}).code, cli::kExitUsage);
    EXPECT_EQ(cli({"gen", "--kind", "zipf"}).code, cli::kExitUsage);
}

TEST(Cli, BadInputsAreInputErrors) {
    const std::string path = scratch("cli_one.txt");
    write_file(path, "0 R 0x0\n");
    Result r = cli({"run", "--trace", path, "--set", "no_such_key=1"});
    EXPECT_EQ(r.code, cli::kExitInput);
    EXPECT_EQ(r.err.rfind("E:2:", 0), 0u);
    r = cli({"run", "--trace", scratch("missing_trace.txt")});
    EXPECT_EQ(r.code, cli::kExitInput);
    const std::string bad = scratch("cli_bad.txt");
    write_file(bad, "0 R 0x0\n1 Q 0x0\n");
    r = cli({"run", "--trace", bad});
    EXPECT_EQ(r.code, cli::kExitInput);
    EXPECT_NE(r.err.find("line 2"), std::string::npos);
    const std::string far = scratch("cli_far.txt");
    write_file(far, "0 R 0xffffffffffff\n");
    EXPECT_EQ(cli({"run", "--trace", far}).code, cli::kExitInput);
    EXPECT_EQ(cli({"run", "--trace", path, "--format", "xml"}).code, cli::kExitUsage);
}

TEST(Cli, CompareMarksUnavailableStrategies) {
    const std::string path = scratch("cli_cmp.txt");
    write_file(path, "0 W 0x0 0x" + std::string(128, '0') + "\n");
    const Result r = cli({"compare", "--trace", path, "--strategies", "none,imdb,adam", "--format", "json"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["rows"].size(), 2u);
    EXPECT_NE(doc["notes"].get<std::string>().find("adam: unavailable"), std::string::npos);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
    const std::string trace = scratch("cli_rep.txt");
    ASSERT_EQ(cli({"gen", "--kind", "uniform", "--n", "2000", "--seed", "5", "-o", trace}).code, 0);
    const Result a = cli({"compare", "--trace", trace});
    const Result b = cli({"compare", "--trace", trace});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(ConfigFile, ParsesSectionsAndBareKeys) {
    const SimConfig c = cli::parse_config(
        "# comment\nstrategy = vnc\n[geometry]\nrows_per_bank = 128\n[imdb]\nn_mt = 64\ninsert_prob = 1/4\n"
        "n_b = 2 # trailing\n");
    EXPECT_EQ(c.strategy, Strategy::Vnc);
    EXPECT_EQ(c.geometry.rows_per_bank, 128u);
    EXPECT_EQ(c.n_mt, 64u);
    EXPECT_EQ(c.insert_prob.num, 1u);
    EXPECT_EQ(c.insert_prob.den, 4u);
    EXPECT_EQ(c.n_b, 2u);
}

TEST(ConfigFile, ErrorsCarryLines) {
    try {
        cli::parse_config("seed = 1\n[imdb]\nnope = 3\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(cli::parse_config("seed 1\n"), ParseError);
    EXPECT_THROW(cli::parse_config("[geometry\n"), ParseError);
    SimConfig c;
    EXPECT_THROW(cli::apply_override(c, "n_mt"), ConfigError);
    EXPECT_THROW(cli::apply_setting(c, "media.initial_fill", "halves"), ConfigError);
    EXPECT_THROW(cli::apply_setting(c, "threshold", "-1"), ConfigError);
}

TEST(ConfigFile, FormatRoundTrips) {
    SimConfig c;
    c.strategy = Strategy::Siwc;
    c.seed = 99;
    c.geometry = small_geometry(64, 8, 2, 2);
    c.disturb_limit = 64;
    c.threshold = 31;
    c.insert_prob = {3, 7};
    c.prior_knowledge = false;
    c.initial_fill = InitialFill::Zeros;
    c.drain_low_watermark = 5;
    c.energy.pcm_read_pj = 1.25;
    c.siwc.parity = SiwcParity::Size;
    const SimConfig back = cli::parse_config(cli::format_config(c));
    EXPECT_EQ(cli::format_config(back), cli::format_config(c));
    EXPECT_EQ(back.geometry.banks(), 4u);
    EXPECT_EQ(back.insert_prob.den, 7u);
    EXPECT_DOUBLE_EQ(back.energy.pcm_read_pj, 1.25);
    for (const auto& key : cli::config_keys()) EXPECT_NE(cli::format_config(c).find(key.substr(key.find('.') + 1)), std::string::npos) << key;
}

}  // namespace
}  // namespace disturbsim
