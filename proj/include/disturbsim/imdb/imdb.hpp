#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "disturbsim/core/config.hpp"
#include "disturbsim/core/geometry.hpp"
#include "disturbsim/core/rng.hpp"
#include "disturbsim/imdb/tables.hpp"
#include "disturbsim/imdb/victim.hpp"

namespace disturbsim::imdb {

enum class Classification { MainTableHit, BarrierHit, MissInserted, MissBypassed };

/// Host writes may be absorbed by the barrier buffer. Rewrites and writebacks always
/// reach the media; they update main-table counters but never trigger a rewrite.
enum class WriteSource { Host, Internal };

struct Writeback {
    LineAddress addr;
    DataLine data;
};

struct ImdbOutcome {
    Classification classification = Classification::MissBypassed;
    std::vector<LineAddress> rewrites;  ///< 0-2 neighbours, written back in full
    bool absorbed = false;
    std::optional<Writeback> writeback;
    std::uint32_t occupancy_cycles = 0;
};

struct ImdbParams {
    std::uint32_t n_mt = 256;
    std::uint32_t n_b = 8;
    std::uint32_t threshold = 511;
    Rational insert_prob{1, 128};
    bool prior_knowledge = true;
    std::uint32_t hit_cycles = 2;
    std::uint32_t insert_cycles = 2;

    static ImdbParams from(const SimConfig& cfg);
};

struct ImdbCounters {
    std::uint64_t searches = 0;
    std::uint64_t mt_accesses = 0;
    std::uint64_t bb_accesses = 0;
    std::uint64_t mt_hits = 0;
    std::uint64_t bb_hits = 0;
    std::uint64_t insertions = 0;
    std::uint64_t bypasses = 0;
    std::uint64_t evictions = 0;
    std::uint64_t promotions = 0;
    std::uint64_t demotions = 0;
    std::uint64_t rewrite_triggers = 0;
};

/// One in-module disturbance barrier; the controller keeps one per bank.
class Imdb {
public:
    /// `rank`/`bank` identify the PCM bank this instance guards; rewrite targets and
    /// writebacks are reported in that bank.
    Imdb(const ImdbParams& params, const Geometry& geometry, std::uint32_t rank,
         std::uint32_t bank, std::unique_ptr<VictimPolicy> policy, std::uint64_t seed);

    /// Builds the production policy from the config: exact when n_groups == n_mt,
    /// AppLE otherwise.
    static std::unique_ptr<VictimPolicy> default_policy(const SimConfig& cfg);

    /// Classifies a write whose previous contents were fetched by a pre-write read.
    /// Throws ProtocolError when `old_data` is absent.
    ImdbOutcome process_write(const LineAddress& addr, const std::optional<DataLine>& old_data,
                              const DataLine& new_data, WriteSource source = WriteSource::Host);

    /// Serves a read from the barrier buffer when it holds the line.
    std::optional<DataLine> process_read(const LineAddress& addr);

    /// Moves main-table slot `mt_slot` into the barrier buffer together with
    /// `write_data`. When the buffer is full, its LFU entry is demoted into the vacated
    /// main-table slot and its data returned for writing back.
    std::optional<Writeback> promote_and_demote(std::size_t mt_slot, const DataLine& write_data);

    /// Barrier-buffer membership without touching frequency counters.
    bool barrier_holds(const LineAddress& addr) const;

    /// Inserts a fresh entry for `addr`, evicting through the policy if full. Returns the
    /// slot and whether a replacement happened.
    std::pair<std::size_t, bool> insert(const LineAddress& addr, const DataLine& data);

    const MainTable& main_table() const { return mt_; }
    MainTable& main_table() { return mt_; }
    const BarrierBuffer& barrier() const { return bb_; }
    BarrierBuffer& barrier() { return bb_; }
    const ImdbCounters& counters() const { return counters_; }
    const ImdbParams& params() const { return params_; }

private:
    ZfcArray initial_counters(const DataLine& data) const;
    LineAddress unpack(std::uint32_t row_col) const;
    std::uint32_t pack(const LineAddress& addr) const;

    ImdbParams params_;
    Geometry geometry_;
    std::uint32_t rank_;
    std::uint32_t bank_;
    MainTable mt_;
    BarrierBuffer bb_;
    std::unique_ptr<VictimPolicy> policy_;
    Rng rng_;
    ImdbCounters counters_;
};

}  // namespace disturbsim::imdb
