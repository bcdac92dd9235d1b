#include <gtest/gtest.h>

#include <tuple>

#include "disturbsim/core/error.hpp"
#include "disturbsim/imdb/victim.hpp"
#include "support/scripted_source.hpp"

namespace disturbsim::imdb {
namespace {

using disturbsim::testing::ScriptedSource;

MainTable table_with(const std::vector<std::uint16_t>& max_zfc, const std::vector<std::uint8_t>& rewrites = {}) {
    MainTable mt(max_zfc.size());
    for (std::size_t i = 0; i < max_zfc.size(); ++i) {
        MainTableEntry e;
        e.row_col = static_cast<std::uint32_t>(i);
        // Spread the maximum to a varying word so the key does not depend on word 0.
        ZfcArray z{};
        z[i % kWordsPerLine] = max_zfc[i];
        e.reset_counters(z);
        e.rewrite_cntr = rewrites.empty() ? 0 : rewrites[i];
        mt.put(i, e);
    }
    return mt;
}

// Independent reference: lexicographic minimum of (max sub-counter, rewrite counter, slot).
std::size_t brute_force_victim(const MainTable& mt) {
    std::tuple<std::uint32_t, std::uint32_t, std::size_t> best{~0u, ~0u, 0};
    for (std::size_t i = 0; i < mt.capacity(); ++i) {
        const auto& e = mt[i];
        const auto m = *std::max_element(e.zfc.begin(), e.zfc.end());
        best = std::min(best, std::tuple<std::uint32_t, std::uint32_t, std::size_t>{m, e.rewrite_cntr, i});
    }
    return std::get<2>(best);
}

TEST(ExactVictim, UniqueMinimum) { EXPECT_EQ(select_victim_exact(table_with({5, 3, 7})), 1u); }

TEST(ExactVictim, RewriteCounterBreaksTies) {
    const MainTable mt = table_with({5, 3, 3}, {0, 2, 1});
    EXPECT_EQ(select_victim_exact(mt), 2u);
    EXPECT_EQ(brute_force_victim(mt), 2u);
}

TEST(ExactVictim, AllEqualPicksSlotZero) { EXPECT_EQ(select_victim_exact(table_with({4, 4, 4, 4})), 0u); }

TEST(ExactVictim, RequiresAFullTable) {
    MainTable mt = table_with({1, 2, 3});
    mt.invalidate(1);
    EXPECT_THROW(select_victim_exact(mt), PreconditionError);
    Rng rng(1);
    EXPECT_THROW(select_victim_apple(mt, 3, rng), PreconditionError);
}

TEST(AppleVictim, RecordedDrawsExample) {
    const MainTable mt = table_with({9, 1, 5, 5, 2, 7, 3, 8});
    ScriptedSource draws({1, 0, 1, 0});
    EXPECT_EQ(select_victim_apple(mt, 4, draws), 1u);
    EXPECT_EQ(draws.consumed(), 4u);
}

TEST(AppleVictim, ConsumesExactlyOneDrawPerGroup) {
    const MainTable mt = table_with(std::vector<std::uint16_t>(32, 3));
    for (std::uint32_t groups : {1u, 2u, 4u, 8u, 16u, 32u}) {
        ScriptedSource draws(std::vector<std::uint64_t>(groups, 0));
        select_victim_apple(mt, groups, draws);
        EXPECT_EQ(draws.consumed(), groups);
    }
}

TEST(AppleVictim, GroupsMustDivideTheTable) {
    const MainTable mt = table_with(std::vector<std::uint16_t>(8, 1));
    Rng rng(2);
    EXPECT_THROW(select_victim_apple(mt, 3, rng), PreconditionError);
}

TEST(AppleVictim, DegeneratesToExactOnEveryEightEntryTable) {
    // Every table over max-zfc {0,1,2} x rewrite {0,1}: 6^8 states.
    constexpr int kStates = 6;
    std::vector<int> digits(8, 0);
    std::size_t mismatches = 0, tables = 0;
    Rng rng(3);
    for (;;) {
        std::vector<std::uint16_t> zfc(8);
        std::vector<std::uint8_t> rw(8);
        for (int i = 0; i < 8; ++i) {
            zfc[i] = static_cast<std::uint16_t>(digits[i] / 2);
            rw[i] = static_cast<std::uint8_t>(digits[i] % 2);
        }
        const MainTable mt = table_with(zfc, rw);
        const std::size_t exact = select_victim_exact(mt);
        if (select_victim_apple(mt, 8, rng) != exact || brute_force_victim(mt) != exact) ++mismatches;
        ++tables;
        int i = 0;
        while (i < 8 && ++digits[i] == kStates) digits[i++] = 0;
        if (i == 8) break;
    }
    EXPECT_EQ(tables, 1679616u);
    EXPECT_EQ(mismatches, 0u);
}

TEST(AppleVictim, DegeneratesToExactOnRandomFullSizeTables) {
    Rng gen(4), rng(5);
    std::size_t mismatches = 0;
    for (int t = 0; t < 10000; ++t) {
        std::vector<std::uint16_t> zfc(256);
        std::vector<std::uint8_t> rw(256);
        for (int i = 0; i < 256; ++i) {
            zfc[i] = static_cast<std::uint16_t>(gen.uniform(t % 2 ? 8 : 512));
            rw[i] = static_cast<std::uint8_t>(gen.uniform(4));
        }
        const MainTable mt = table_with(zfc, rw);
        if (select_victim_apple(mt, 256, rng) != select_victim_exact(mt)) ++mismatches;
    }
    EXPECT_EQ(mismatches, 0u);
}

// Records what the selector drew so the result can be checked against every sample.
class RecordingSource {
public:
    explicit RecordingSource(std::uint64_t seed) : rng_(seed) {}
    std::uint64_t uniform(std::uint64_t bound) { return draws.emplace_back(rng_.uniform(bound)); }
    std::vector<std::uint64_t> draws;

private:
    Rng rng_;
};

TEST(AppleVictim, ResultIsNoWorseThanAnySample) {
    Rng gen(6);
    for (int t = 0; t < 2000; ++t) {
        std::vector<std::uint16_t> zfc(64);
        for (auto& v : zfc) v = static_cast<std::uint16_t>(gen.uniform(20));
        const MainTable mt = table_with(zfc);
        RecordingSource src(static_cast<std::uint64_t>(t));
        const std::size_t got = select_victim_apple(mt, 8, src);
        ASSERT_EQ(src.draws.size(), 8u);
        bool sampled = false;
        for (std::size_t g = 0; g < 8; ++g) {
            const std::size_t slot = g * 8 + src.draws[g];
            ASSERT_LE(victim_key(mt, got), victim_key(mt, slot));
            sampled |= slot == got;
        }
        ASSERT_TRUE(sampled);
    }
}

TEST(AppleVictim, SingleGroupIsUniform) {
    const MainTable mt = table_with(std::vector<std::uint16_t>(16, 0));
    Rng rng(7);
    std::vector<int> hist(16, 0);
    for (int i = 0; i < 32000; ++i) ++hist[select_victim_apple(mt, 1, rng)];
    for (int h : hist) EXPECT_NEAR(h, 2000, 250);
}

TEST(ComparatorLatency, TreeDepth) {
    EXPECT_EQ(comparator_latency_cycles(1), 0u);
    EXPECT_EQ(comparator_latency_cycles(2), 1u);
    EXPECT_EQ(comparator_latency_cycles(8), 3u);
    EXPECT_EQ(comparator_latency_cycles(32), 5u);
    EXPECT_EQ(comparator_latency_cycles(33), 6u);
    EXPECT_EQ(comparator_latency_cycles(256), 8u);
}

TEST(Policies, ReportTheirLatency) {
    EXPECT_EQ(ExactPolicy(256).latency_cycles(), 8u);
    EXPECT_EQ(ApplePolicy(8).latency_cycles(), 3u);
}

}  // namespace
}  // namespace disturbsim::imdb
