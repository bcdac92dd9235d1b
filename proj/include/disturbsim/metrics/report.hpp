#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "disturbsim/core/config.hpp"
#include "disturbsim/metrics/run_stats.hpp"

namespace disturbsim {

inline constexpr std::string_view kReportSchema = "disturbsim-report/1";

/// Linear combination of event counts and per-event energies.
EnergyBreakdown energy_total(const RunStats& stats, const EnergyParams& params);

/// Bounds from the simplified cost function; rows outside them are flagged, not dropped.
inline constexpr std::uint32_t kMaxGroups = 32;
inline constexpr std::uint32_t kMaxBarrierEntries = 64;

struct TradeoffRow {
    std::string label;
    Strategy strategy = Strategy::Imdb;
    std::uint32_t n_mt = 0;
    std::uint32_t n_b = 0;
    std::uint32_t n_groups = 0;
    std::uint64_t wde = 0;      ///< W: raw WDE events
    std::uint64_t area_bits = 0;  ///< A: total SRAM bits across banks
    double speedup = 0.0;       ///< S: baseline completion / this completion
    std::vector<std::string> flags;
};

struct SweepEntry {
    std::string label;
    SimConfig config;
    RunStats stats;
};

/// One row per sweep entry in input order. The first entry whose strategy is `none`
/// is the speedup baseline; its absence raises ReportError("missing baseline").
std::vector<TradeoffRow> tradeoff_report(const std::vector<SweepEntry>& sweep);

enum class ReportFormat { Csv, Json };

/// Throws ConfigError for anything but "csv" or "json".
ReportFormat parse_report_format(std::string_view name);

struct LabeledStats {
    std::string label;
    Strategy strategy = Strategy::None;
    RunStats stats;
};

/// Stable column order, schema header, deterministic number formatting.
void emit_stats_report(std::ostream& out, const std::vector<LabeledStats>& rows, ReportFormat fmt,
                       std::string_view notes = {});
void emit_tradeoff_report(std::ostream& out, const std::vector<TradeoffRow>& rows, ReportFormat fmt);

/// Column names of the run/compare report, in emission order.
std::vector<std::string> stats_columns();

}  // namespace disturbsim
