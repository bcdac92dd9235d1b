#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "disturbsim/core/data_line.hpp"

namespace disturbsim {

/// One saturating disturbance counter per cell of a line.
using PulseCounters = std::array<std::uint16_t, kLineBits>;

namespace kernels {

/// The data-parallel inner loops of the simulator. Every backend must produce results
/// identical to the scalar reference.
struct BitKernels {
    std::string_view name;

    /// count[i] = popcount(old.words[i] & ~next.words[i])
    WordCounts (*count_one_to_zero)(const DataLine& old, const DataLine& next);
    /// count[i] = 64 - popcount(d.words[i])
    WordCounts (*count_zeros)(const DataLine& d);
    /// counters[k] = min(counters[k] + 1, cap) for every k set in mask
    void (*add_pulses)(PulseCounters& counters, const DataLine& mask, std::uint16_t cap);
    /// counters[k] = 0 for every k set in mask
    void (*clear_counters)(PulseCounters& counters, const DataLine& mask);
    /// Bit k set iff physical bit k is 0 and counters[k] >= limit.
    DataLine (*disturbed_cells)(const PulseCounters& counters, const DataLine& physical,
                                std::uint16_t limit);
};

const BitKernels& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/POPCNT.
const BitKernels* avx2_kernels();

/// Backend chosen at first use: DISTURBSIM_KERNELS=scalar|avx2 if set, else the widest
/// one the CPU supports.
const BitKernels& active();

/// Overrides the active backend (tests and benchmarks). Not thread-safe with running
/// simulations.
void set_active(const BitKernels& k);

}  // namespace kernels

inline WordCounts count_one_to_zero(const DataLine& old, const DataLine& next) {
    return kernels::active().count_one_to_zero(old, next);
}

inline WordCounts count_zeros(const DataLine& d) { return kernels::active().count_zeros(d); }

}  // namespace disturbsim
