#pragma once

#include <cstdint>
#include <string_view>

#include "disturbsim/core/geometry.hpp"
#include "disturbsim/core/rng.hpp"
#include "disturbsim/traces/trace.hpp"

namespace disturbsim {

/// Alternates all-ones / all-zeros writes to `target`: 2 * rounds records, `gap_ns`
/// apart. Every all-zeros write that follows an all-ones one delivers one RESET pulse
/// per bit.
Trace gen_hammer(std::uint64_t target, std::uint64_t rounds, std::uint64_t gap_ns = 10,
                 std::uint64_t start_ns = 0);

struct SlowFlipParams {
    std::uint32_t victims = 1;     ///< aggressor lines visited round-robin
    std::uint32_t interleave = 0;  ///< pressure writes after each aggressor visit
    std::uint32_t rounds = 0;
    std::uint32_t flip_bits = 8;   ///< bits an aggressor pulls 1 -> 0 per visit
    /// Zero bits per word in an aggressor's resting pattern.
    std::uint32_t aggressor_zero_bits = 32;
    /// Zero bits per word in a pressure write.
    std::uint32_t pressure_zero_bits = 4;
    std::uint32_t pressure_lines = 4096;  ///< distinct lines the pressure writes use
    std::uint32_t bank = 0;               ///< flat bank index holding every line
    std::uint64_t gap_ns = 10;
    std::uint64_t start_ns = 0;
};

/// Slow, gradual 1 -> 0 attack. Aggressor i lives at row 3*(i / cols) + 1, so its
/// victims (rows either side) are never themselves aggressors. Each visit writes the
/// aggressor's resting pattern with a fixed pseudo-random set of its 1-bits cleared,
/// then restores the pattern, then issues `interleave` writes to random pressure lines
/// placed past the aggressor rows.
Trace gen_slow_flip(const SlowFlipParams& params, const Geometry& g, Rng& rng);

enum class SyntheticKind { Uniform, Hotspot, PmixProxy };

SyntheticKind parse_synthetic_kind(std::string_view name);

struct SyntheticParams {
    SyntheticKind kind = SyntheticKind::Uniform;
    std::uint64_t n = 0;
    std::uint64_t footprint_lines = 1u << 16;  ///< clipped to module capacity
    std::uint32_t read_percent = 0;
    std::uint64_t gap_ns = 10;
};

/// uniform: iid lines and data. hotspot: 90% of writes go to the first 10% of the
/// footprint (exactly: 9 of every 10). pmix-proxy: fresh-node allocations walking the
/// footprint sequentially mixed with small-churn updates of a few hot header lines.
Trace gen_synthetic(const SyntheticParams& params, const Geometry& g, Rng& rng);

/// A uniformly random line with exactly `zeros` zero bits in every word.
DataLine random_line_with_zeros(Rng& rng, std::uint32_t zeros);

}  // namespace disturbsim
