#include "disturbsim/core/geometry.hpp"

#include <string>

#include "disturbsim/core/error.hpp"

namespace disturbsim {

void Geometry::validate() const {
    if (ranks == 0) throw ConfigError("geometry.ranks must be >= 1");
    if (banks_per_rank == 0) throw ConfigError("geometry.banks_per_rank must be >= 1");
    if (rows_per_bank < 2) throw ConfigError("geometry.rows_per_bank must be >= 2");
    if (cols_per_row == 0) throw ConfigError("geometry.cols_per_row must be >= 1");
}

namespace {

[[noreturn]] void out_of_range(const char* field, std::uint64_t value, std::uint64_t bound) {
    throw RangeError(std::string(field) + " " + std::to_string(value) + " out of range (bound " +
                     std::to_string(bound) + ")");
}

}  // namespace

void check_address(const LineAddress& a, const Geometry& g) {
    if (a.rank >= g.ranks) out_of_range("rank", a.rank, g.ranks);
    if (a.bank >= g.banks_per_rank) out_of_range("bank", a.bank, g.banks_per_rank);
    if (a.row >= g.rows_per_bank) out_of_range("row", a.row, g.rows_per_bank);
    if (a.col >= g.cols_per_row) out_of_range("col", a.col, g.cols_per_row);
}

LineAddress decompose_address(std::uint64_t byte_addr, const Geometry& g) {
    std::uint64_t line = byte_addr / kLineBytes;
    LineAddress a;
    a.col = static_cast<std::uint32_t>(line % g.cols_per_row);
    line /= g.cols_per_row;
    a.bank = static_cast<std::uint32_t>(line % g.banks_per_rank);
    line /= g.banks_per_rank;
    a.rank = static_cast<std::uint32_t>(line % g.ranks);
    line /= g.ranks;
    if (line >= g.rows_per_bank) out_of_range("row", line, g.rows_per_bank);
    a.row = static_cast<std::uint32_t>(line);
    return a;
}

std::uint64_t compose_address(const LineAddress& a, const Geometry& g) {
    check_address(a, g);
    std::uint64_t line = a.row;
    line = line * g.ranks + a.rank;
    line = line * g.banks_per_rank + a.bank;
    line = line * g.cols_per_row + a.col;
    return line * kLineBytes;
}

std::optional<LineAddress> row_neighbor(const LineAddress& a, const Geometry& g, int delta) {
    const std::int64_t row = static_cast<std::int64_t>(a.row) + delta;
    if (row < 0 || row >= static_cast<std::int64_t>(g.rows_per_bank)) return std::nullopt;
    LineAddress n = a;
    n.row = static_cast<std::uint32_t>(row);
    return n;
}

}  // namespace disturbsim
