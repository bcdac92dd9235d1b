#pragma once

#include <cstdint>

#include "disturbsim/core/time.hpp"

namespace disturbsim {

struct EnergyBreakdown {
    double pcm_read_pj = 0.0;
    double pcm_set_pj = 0.0;
    double pcm_reset_pj = 0.0;
    double sram_search_pj = 0.0;
    double sram_access_pj = 0.0;
    double bb_access_pj = 0.0;

    double total() const {
        return pcm_read_pj + pcm_set_pj + pcm_reset_pj + sram_search_pj + sram_access_pj + bb_access_pj;
    }
    friend bool operator==(const EnergyBreakdown&, const EnergyBreakdown&) = default;
};

/// Everything a run measured. wde_raw counts cell flip events; wde_exposed counts lines
/// (host reads that returned divergent data plus lines still divergent at the end).
struct RunStats {
    std::uint64_t wde_raw = 0;
    std::uint64_t wde_exposed = 0;
    std::uint64_t wde_exposed_reads = 0;
    std::uint64_t wde_exposed_scrub = 0;

    std::uint64_t host_reads = 0;
    std::uint64_t host_writes = 0;
    std::uint64_t absorbed_writes = 0;  ///< host writes kept out of the media
    std::uint64_t table_reads = 0;      ///< host reads served by a barrier buffer / write cache

    std::uint64_t rewrites = 0;  ///< rewrite requests generated
    std::uint64_t merges = 0;    ///< rewrites folded into queued writes, superseded writebacks
    std::uint64_t pre_write_reads = 0;
    std::uint64_t media_reads = 0;
    std::uint64_t media_writes = 0;
    std::uint64_t vnc_corrections = 0;

    std::uint64_t mt_hits = 0;
    std::uint64_t bb_hits = 0;  ///< barrier-buffer or write-cache hits
    std::uint64_t insertions = 0;
    std::uint64_t bypasses = 0;
    std::uint64_t evictions = 0;
    std::uint64_t writebacks = 0;

    std::uint64_t set_pulses = 0;
    std::uint64_t reset_pulses = 0;
    std::uint64_t sram_searches = 0;
    std::uint64_t sram_accesses = 0;
    std::uint64_t bb_accesses = 0;

    std::uint64_t commands_admitted = 0;
    std::uint64_t commands_serviced = 0;

    TimePs completion_time_ps = 0;
    EnergyBreakdown energy;

    double completion_time_ns() const { return ps_to_ns(completion_time_ps); }

    friend bool operator==(const RunStats&, const RunStats&) = default;
};

}  // namespace disturbsim
