#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "disturbsim/core/data_line.hpp"

namespace disturbsim::imdb {

inline constexpr std::uint32_t kRowColBits = 25;
inline constexpr std::uint32_t kZfcBits = 9;
inline constexpr std::uint32_t kZfcMax = (1u << kZfcBits) - 1;  // 511
inline constexpr std::uint32_t kCounter8Max = 255;

/// Row&Col + RewriteCntr + 8 ZeroFlipCntr sub-counters + MaxZFCIdx.
inline constexpr std::uint32_t kMainEntryBits = kRowColBits + 8 + kWordsPerLine * kZfcBits + 3;
/// Data + Row&Col + RewriteCntr + FreqCntr.
inline constexpr std::uint32_t kBarrierEntryBits = static_cast<std::uint32_t>(kLineBits) + kRowColBits + 8 + 8;
static_assert(kMainEntryBits == 108);
static_assert(kBarrierEntryBits == 553);

using ZfcArray = std::array<std::uint16_t, kWordsPerLine>;

/// Lowest index holding the maximum.
std::uint8_t argmax_index(const ZfcArray& zfc);

/// Prior knowledge: each sub-counter starts at the number of zero bits in its word.
ZfcArray prior_init(const DataLine& data);

struct MainTableEntry {
    bool valid = false;
    std::uint32_t row_col = 0;
    ZfcArray zfc{};
    std::uint8_t max_zfc_idx = 0;
    std::uint8_t rewrite_cntr = 0;

    std::uint32_t max_zfc() const { return zfc[max_zfc_idx]; }

    /// zfc[i] += flips[i], saturating at 511, and refreshes max_zfc_idx.
    void accumulate(const WordCounts& flips);
    /// Replaces the counters and refreshes max_zfc_idx.
    void reset_counters(const ZfcArray& init);
};

struct BarrierEntry {
    bool valid = false;
    std::uint32_t row_col = 0;
    DataLine data;
    std::uint8_t rewrite_cntr = 0;
    std::uint8_t freq_cntr = 0;
};

/// Fixed-capacity table with an exact-match index standing in for the CAM.
/// An address occupies at most one valid slot; violations raise ConsistencyError.
template <typename Entry>
class Table {
public:
    explicit Table(std::size_t capacity) : slots_(capacity) {}

    std::size_t capacity() const { return slots_.size(); }
    std::size_t occupancy() const { return index_.size(); }
    bool full() const { return occupancy() == capacity(); }

    std::optional<std::size_t> find(std::uint32_t row_col) const {
        auto it = index_.find(row_col);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Lowest-index invalid slot.
    std::optional<std::size_t> free_slot() const {
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (!slots_[i].valid) return i;
        return std::nullopt;
    }

    /// Stores `e` (marked valid) in `slot`, replacing whatever was there.
    void put(std::size_t slot, Entry e);
    void invalidate(std::size_t slot);

    const Entry& operator[](std::size_t slot) const { return slots_[slot]; }
    Entry& operator[](std::size_t slot) { return slots_[slot]; }
    std::span<const Entry> entries() const { return slots_; }

private:
    std::vector<Entry> slots_;
    std::unordered_map<std::uint32_t, std::size_t> index_;
};

using MainTable = Table<MainTableEntry>;
using BarrierBuffer = Table<BarrierEntry>;

extern template class Table<MainTableEntry>;
extern template class Table<BarrierEntry>;

struct LookupResult {
    enum class Kind { Miss, MainTableHit, BarrierHit };
    Kind kind = Kind::Miss;
    std::size_t slot = 0;
};

/// The barrier buffer is searched first. An address valid in both tables raises
/// ConsistencyError.
LookupResult lookup(const MainTable& mt, const BarrierBuffer& bb, std::uint32_t row_col);

/// SRAM bits for one configuration.
struct SramCapacity {
    std::uint64_t main_table_bits_per_bank = 0;
    std::uint64_t barrier_bits_per_bank = 0;
    std::uint64_t banks = 0;

    std::uint64_t per_bank_bits() const { return main_table_bits_per_bank + barrier_bits_per_bank; }
    std::uint64_t total_bits() const { return per_bank_bits() * banks; }
};

SramCapacity sram_capacity(std::uint64_t n_mt, std::uint64_t n_b, std::uint64_t banks);

}  // namespace disturbsim::imdb
