#pragma once

#include <compare>
#include <cstdint>
#include <optional>

#include "disturbsim/core/data_line.hpp"

namespace disturbsim {

/// Module organisation. Each column holds exactly one 64-byte line.
struct Geometry {
    std::uint32_t ranks = 2;
    std::uint32_t banks_per_rank = 2;
    std::uint32_t rows_per_bank = 1u << 19;
    std::uint32_t cols_per_row = 64;

    std::uint32_t banks() const { return ranks * banks_per_rank; }
    std::uint64_t lines_per_bank() const {
        return std::uint64_t{rows_per_bank} * cols_per_row;
    }
    std::uint64_t capacity_bytes() const { return lines_per_bank() * banks() * kLineBytes; }

    /// Throws ConfigError when any count is zero or rows_per_bank < 2.
    void validate() const;

    friend bool operator==(const Geometry&, const Geometry&) = default;
};

struct LineAddress {
    std::uint32_t rank = 0;
    std::uint32_t bank = 0;
    std::uint32_t row = 0;
    std::uint32_t col = 0;

    friend auto operator<=>(const LineAddress&, const LineAddress&) = default;
};

/// Flat bank index in [0, g.banks()).
inline std::uint32_t bank_index(const LineAddress& a, const Geometry& g) {
    return a.rank * g.banks_per_rank + a.bank;
}

/// Row & Col packed as row * cols + col; 25 bits for the full-size module.
inline std::uint32_t pack_row_col(const LineAddress& a, const Geometry& g) {
    return a.row * g.cols_per_row + a.col;
}

/// Dense key over the whole module, used by sparse per-line maps.
inline std::uint64_t line_key(const LineAddress& a, const Geometry& g) {
    return std::uint64_t{bank_index(a, g)} * g.lines_per_bank() + pack_row_col(a, g);
}

/// Throws RangeError naming the first field that exceeds its bound.
void check_address(const LineAddress& a, const Geometry& g);

/// Byte address -> line address. Bit layout from low to high: byte-in-line, col, bank,
/// rank, row. Throws RangeError for addresses at or beyond module capacity.
LineAddress decompose_address(std::uint64_t byte_addr, const Geometry& g);

/// Inverse of decompose_address; yields the line-aligned byte address.
std::uint64_t compose_address(const LineAddress& a, const Geometry& g);

/// Same-column neighbour one row above/below, if it exists.
std::optional<LineAddress> row_neighbor(const LineAddress& a, const Geometry& g, int delta);

}  // namespace disturbsim
