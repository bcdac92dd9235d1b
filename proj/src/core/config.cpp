#include "disturbsim/core/config.hpp"

#include <cmath>
#include <string>

#include "disturbsim/core/error.hpp"

namespace disturbsim {

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::None: return "none";
        case Strategy::Vnc: return "vnc";
        case Strategy::Siwc: return "siwc";
        case Strategy::Imdb: return "imdb";
    }
    return "?";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "none") return Strategy::None;
    if (name == "vnc") return Strategy::Vnc;
    if (name == "siwc") return Strategy::Siwc;
    if (name == "imdb") return Strategy::Imdb;
    throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

void EnergyParams::validate() const {
    for (double v : {pcm_read_pj, pcm_set_pj_per_bit, pcm_reset_pj_per_bit, sram_search_pj,
                     sram_access_pj, bb_access_pj}) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("energy parameters must be >= 0");
    }
}

namespace {

void check_probability(const Rational& p, const char* name) {
    if (p.den == 0) throw ConfigError(std::string(name) + ": zero denominator");
    if (p.num > p.den) throw ConfigError(std::string(name) + " must be <= 1");
}

}  // namespace

void SimConfig::validate() const {
    geometry.validate();
    if (timing.read_ns == 0 || timing.set_ns == 0 || timing.reset_ns == 0)
        throw ConfigError("timing values must be > 0");
    if (disturb_limit < 1 || disturb_limit > 0xffff)
        throw ConfigError("disturb_limit must be in [1, 65535]");
    if (threshold > 511) throw ConfigError("threshold must fit the 9-bit ZeroFlipCntr (<= 511)");
    if (2ull * threshold >= disturb_limit)
        throw ConfigError("2*threshold must be < disturb_limit");
    check_probability(insert_prob, "insert_prob");
    if (n_mt == 0) throw ConfigError("n_mt must be >= 1");
    if (n_groups == 0) throw ConfigError("n_groups must be >= 1");
    if (n_mt % n_groups != 0) throw ConfigError("n_groups must divide n_mt");
    if (queue_depth == 0) throw ConfigError("queue_depth must be >= 1");
    if (watermark() >= queue_depth) throw ConfigError("drain_low_watermark must be < queue_depth");
    if (controller_clock_hz == 0) throw ConfigError("controller_clock_hz must be > 0");
    energy.validate();
    check_probability(siwc.q_insert, "siwc.q_insert");
    check_probability(siwc.q_evict, "siwc.q_evict");
}

TimePs SimConfig::cycles_to_ps(std::uint64_t cycles) const {
    const Uint128 num = static_cast<Uint128>(cycles) * 1'000'000'000'000ull;
    return static_cast<TimePs>((num + controller_clock_hz - 1) / controller_clock_hz);
}

Geometry small_geometry(std::uint32_t rows, std::uint32_t cols, std::uint32_t ranks,
                        std::uint32_t banks_per_rank) {
    Geometry g;
    g.ranks = ranks;
    g.banks_per_rank = banks_per_rank;
    g.rows_per_bank = rows;
    g.cols_per_row = cols;
    return g;
}

}  // namespace disturbsim
