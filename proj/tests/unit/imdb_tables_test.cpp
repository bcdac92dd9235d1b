#include <gtest/gtest.h>

#include "disturbsim/core/error.hpp"
#include "disturbsim/core/rng.hpp"
#include "disturbsim/imdb/tables.hpp"

namespace disturbsim::imdb {
namespace {

MainTableEntry mt_entry(std::uint32_t row_col) {
    MainTableEntry e;
    e.row_col = row_col;
    return e;
}

BarrierEntry bb_entry(std::uint32_t row_col) {
    BarrierEntry e;
    e.row_col = row_col;
    return e;
}

TEST(PriorInit, CountsZerosPerWord) {
    EXPECT_EQ(prior_init(DataLine::ones()), ZfcArray{});
    ZfcArray all64;
    all64.fill(64);
    EXPECT_EQ(prior_init(DataLine::zeros()), all64);
    DataLine d = DataLine::ones();
    d.words[0] = 0xffffffff00000000ull;
    EXPECT_EQ(prior_init(d), (ZfcArray{32, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(PriorInit, InitialKeyIsTheWorstWord) {
    Rng rng(4);
    for (int i = 0; i < 1000; ++i) {
        DataLine d;
        for (auto& w : d.words) w = rng.next() | (rng.next() & rng.next());
        MainTableEntry e;
        e.reset_counters(prior_init(d));
        std::uint32_t expect = 0;
        for (auto w : d.words) expect = std::max<std::uint32_t>(expect, 64 - std::popcount(w));
        ASSERT_EQ(e.max_zfc(), expect);
    }
    MainTableEntry ones;
    ones.reset_counters(prior_init(DataLine::ones()));
    EXPECT_EQ(ones.max_zfc(), 0u);
}

TEST(MainTableEntry, AccumulateSaturatesAndTracksMax) {
    MainTableEntry e;
    e.reset_counters({1, 2, 510, 3, 0, 0, 0, 0});
    EXPECT_EQ(e.max_zfc_idx, 2);
    e.accumulate({0, 0, 1, 0, 0, 0, 0, 0});
    EXPECT_EQ(e.zfc[2], 511);
    e.accumulate({0, 0, 64, 0, 0, 0, 0, 64});
    EXPECT_EQ(e.zfc[2], 511);
    EXPECT_EQ(e.zfc[7], 64);
    e.accumulate({0, 0, 0, 0, 0, 0, 0, 64 * 8});
    EXPECT_EQ(e.zfc[7], 511);
    EXPECT_EQ(e.max_zfc_idx, 2);  // lowest index among equal maxima
}

TEST(MainTableEntry, MaxIndexAlwaysPointsAtAMaximum) {
    Rng rng(8);
    MainTableEntry e;
    for (int i = 0; i < 20000; ++i) {
        WordCounts f{};
        for (auto& v : f) v = static_cast<std::uint32_t>(rng.uniform(65));
        e.accumulate(f);
        const auto m = *std::max_element(e.zfc.begin(), e.zfc.end());
        ASSERT_EQ(e.max_zfc(), m);
        ASSERT_LE(m, kZfcMax);
        if (rng.uniform(50) == 0) e.reset_counters({});
    }
}

TEST(Lookup, MissHitAndPrecedence) {
    MainTable mt(4);
    BarrierBuffer bb(2);
    EXPECT_EQ(lookup(mt, bb, 5).kind, LookupResult::Kind::Miss);
    mt.put(2, mt_entry(5));
    auto r = lookup(mt, bb, 5);
    EXPECT_EQ(r.kind, LookupResult::Kind::MainTableHit);
    EXPECT_EQ(r.slot, 2u);
    bb.put(1, bb_entry(6));
    r = lookup(mt, bb, 6);
    EXPECT_EQ(r.kind, LookupResult::Kind::BarrierHit);
    EXPECT_EQ(r.slot, 1u);
}

TEST(Lookup, AddressInBothTablesIsInconsistent) {
    MainTable mt(2);
    BarrierBuffer bb(2);
    mt.put(0, mt_entry(9));
    bb.put(0, bb_entry(9));
    EXPECT_THROW(lookup(mt, bb, 9), ConsistencyError);
}

TEST(Table, DuplicateAddressIsRejected) {
    MainTable mt(3);
    mt.put(0, mt_entry(1));
    EXPECT_THROW(mt.put(1, mt_entry(1)), ConsistencyError);
    EXPECT_NO_THROW(mt.put(0, mt_entry(1)));  // same slot overwrite
}

TEST(Table, FreeSlotsAndInvalidation) {
    BarrierBuffer bb(3);
    EXPECT_EQ(*bb.free_slot(), 0u);
    bb.put(0, bb_entry(1));
    bb.put(1, bb_entry(2));
    EXPECT_EQ(*bb.free_slot(), 2u);
    bb.invalidate(0);
    EXPECT_EQ(*bb.free_slot(), 0u);
    EXPECT_FALSE(bb.find(1));
    EXPECT_EQ(bb.occupancy(), 1u);
    bb.put(0, bb_entry(3));
    bb.put(2, bb_entry(4));
    EXPECT_TRUE(bb.full());
    EXPECT_FALSE(bb.free_slot());
}

TEST(Table, ReplacingASlotReindexes) {
    MainTable mt(1);
    mt.put(0, mt_entry(10));
    mt.put(0, mt_entry(11));
    EXPECT_FALSE(mt.find(10));
    EXPECT_EQ(*mt.find(11), 0u);
}

TEST(SramCapacity, EntryBudgets) {
    EXPECT_EQ(kMainEntryBits, 25u + 8 + 72 + 3);
    EXPECT_EQ(kBarrierEntryBits, 512u + 25 + 8 + 8);
    const auto c = sram_capacity(256, 8, 4);
    EXPECT_EQ(c.main_table_bits_per_bank, 27648u);
    EXPECT_EQ(c.barrier_bits_per_bank, 4424u);
    EXPECT_EQ(c.total_bits(), 128288u);
    EXPECT_EQ(sram_capacity(0, 0, 4).total_bits(), 0u);
    EXPECT_EQ(sram_capacity(16, 1, 1).total_bits(), 2281u);
}

}  // namespace
}  // namespace disturbsim::imdb
