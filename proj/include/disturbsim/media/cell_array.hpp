#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "disturbsim/core/config.hpp"
#include "disturbsim/core/data_line.hpp"
#include "disturbsim/core/geometry.hpp"
#include "disturbsim/core/time.hpp"
#include "disturbsim/kernels/bitops.hpp"

namespace disturbsim {

enum class WriteMode { Differential, Full };

struct WdeEvent {
    LineAddress addr;
    std::uint16_t bit = 0;

    friend bool operator==(const WdeEvent&, const WdeEvent&) = default;
};

struct WriteOutcome {
    std::uint32_t reset_pulses = 0;
    std::uint32_t set_pulses = 0;
    std::vector<WdeEvent> wde_events;
    TimePs latency = 0;
};

struct Divergence {
    LineAddress addr;
    std::uint32_t bits = 0;
};

/// Bank occupancy of a write: SET latency if any SET pulse was emitted, otherwise the
/// RESET latency (a write that programs nothing still holds the bank for one slot).
TimePs write_latency(const WriteOutcome& outcome, const Timing& timing);

/// Ground-truth cell state of the whole module. Bit value 0 is the amorphous (RESET)
/// state. Each RESET pulse on a cell adds one unit of disturbance to the same bit of the
/// same column one row above and below; a 0-cell whose disturbance reaches the limit
/// crystallises to 1. Programming a cell clears its own disturbance.
///
/// Lines are materialised lazily; untouched lines hold the configured fill pattern.
class CellArray {
public:
    explicit CellArray(const SimConfig& cfg);

    WriteOutcome apply_write(const LineAddress& addr, const DataLine& data, WriteMode mode);

    /// Physical contents; the fill pattern for untouched lines.
    DataLine read_line(const LineAddress& addr) const;

    /// The data last written to the line by a write, disturbance notwithstanding.
    DataLine intended(const LineAddress& addr) const;

    /// nullptr for untouched lines (all counters zero).
    const PulseCounters* counters(const LineAddress& addr) const;

    /// Lines whose physical contents differ from the intended shadow, ordered by address.
    std::vector<Divergence> scrub_divergence() const;

    std::size_t materialized_lines() const { return lines_.size(); }
    const Geometry& geometry() const { return geometry_; }

private:
    struct LineState {
        DataLine physical;
        DataLine intended;
        PulseCounters accum{};
    };

    LineState& materialize(const LineAddress& addr);
    const LineState* find(const LineAddress& addr) const;
    void disturb(const LineAddress& victim, const DataLine& pulses, WriteOutcome& out);

    Geometry geometry_;
    Timing timing_;
    std::uint16_t limit_;
    DataLine fill_;
    std::unordered_map<std::uint64_t, LineState> lines_;
};

}  // namespace disturbsim
