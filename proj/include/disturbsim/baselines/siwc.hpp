#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "disturbsim/baselines/strategy.hpp"
#include "disturbsim/core/config.hpp"
#include "disturbsim/core/rng.hpp"

namespace disturbsim {

struct WriteCacheEntry {
    bool valid = false;
    LineAddress addr;
    DataLine data;
};

struct WriteCacheCounters {
    std::uint64_t hits = 0;
    std::uint64_t read_hits = 0;
    std::uint64_t insertions = 0;
    std::uint64_t evictions = 0;
    std::uint64_t bypasses = 0;
};

/// Entry count for the SIWC baseline: siwc.entries if set, otherwise n_mt + n_b
/// (entry parity) or the number of 553-bit entries that fit in the IMDB's per-bank
/// SRAM budget (size parity).
std::uint32_t siwc_entries(const SimConfig& cfg);

/// Fully associative coin-toss write cache in the style of SIWC. A miss is inserted
/// with probability q_insert; when the cache is full the insertion additionally needs
/// a q_evict coin, which evicts a uniformly chosen entry.
class WriteCache {
public:
    WriteCache(std::size_t entries, Rational q_insert, Rational q_evict, std::uint64_t seed);

    StrategyOutcome process_write(const LineAddress& addr, const DataLine& data,
                                  const Geometry& g);
    std::optional<DataLine> process_read(const LineAddress& addr, const Geometry& g);

    bool contains(const LineAddress& addr, const Geometry& g) const;
    std::size_t occupancy() const { return index_.size(); }
    std::size_t capacity() const { return slots_.size(); }
    const WriteCacheCounters& counters() const { return counters_; }

private:
    std::vector<WriteCacheEntry> slots_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    Rational q_insert_;
    Rational q_evict_;
    Rng rng_;
    WriteCacheCounters counters_;
};

}  // namespace disturbsim
