#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "disturbsim/core/data_line.hpp"
#include "disturbsim/core/geometry.hpp"
#include "disturbsim/core/rng.hpp"
#include "disturbsim/core/time.hpp"

namespace disturbsim {

enum class Strategy { None, Vnc, Siwc, Imdb };

std::string_view to_string(Strategy s);
/// Throws ConfigError for unknown names.
Strategy parse_strategy(std::string_view name);

struct Timing {
    std::uint64_t read_ns = 100;
    std::uint64_t set_ns = 150;
    std::uint64_t reset_ns = 100;
};

/// Per-event energy in picojoules. The defaults are placeholders, not extracted values.
struct EnergyParams {
    double pcm_read_pj = 0.0;
    double pcm_set_pj_per_bit = 0.0;
    double pcm_reset_pj_per_bit = 0.0;
    double sram_search_pj = 0.0;
    double sram_access_pj = 0.0;
    double bb_access_pj = 0.0;

    void validate() const;
};

/// Which sizing rule picks the SIWC entry count when siwc.entries is left at 0.
enum class SiwcParity { Entry, Size };

struct SiwcParams {
    Rational q_insert{1, 2};
    Rational q_evict{1, 2};
    std::uint32_t entries = 0;  ///< 0: derive from parity
    SiwcParity parity = SiwcParity::Entry;
};

enum class InitialFill { Ones, Zeros };

struct SimConfig {
    Geometry geometry;
    Timing timing;

    std::uint32_t disturb_limit = 1024;
    std::uint32_t threshold = 511;
    Rational insert_prob{1, 128};
    std::uint32_t n_mt = 256;
    std::uint32_t n_b = 8;
    std::uint32_t n_groups = 8;
    bool prior_knowledge = true;
    std::uint32_t hit_cycles = 2;
    std::uint32_t insert_cycles = 2;  ///< plus ceil(log2(n_groups)) for a replacement

    std::uint32_t queue_depth = 64;
    std::optional<std::uint32_t> drain_low_watermark;  ///< default queue_depth / 2
    std::uint64_t controller_clock_hz = 800'000'000;

    InitialFill initial_fill = InitialFill::Ones;
    EnergyParams energy;
    SiwcParams siwc;
    std::uint64_t seed = 1;
    Strategy strategy = Strategy::None;

    /// Throws ConfigError on the first violated invariant.
    void validate() const;

    std::uint32_t watermark() const { return drain_low_watermark.value_or(queue_depth / 2); }
    DataLine fill_line() const {
        return initial_fill == InitialFill::Ones ? DataLine::ones() : DataLine::zeros();
    }
    /// Controller cycles expressed in simulated time, rounded up to whole picoseconds.
    TimePs cycles_to_ps(std::uint64_t cycles) const;
};

/// Desk-scale geometry helper for tests and experiments.
Geometry small_geometry(std::uint32_t rows, std::uint32_t cols, std::uint32_t ranks = 1,
                        std::uint32_t banks_per_rank = 1);

}  // namespace disturbsim
