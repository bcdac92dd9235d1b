#include <cstdio>
#include <functional>
#include <ostream>
#include <string>

#include "disturbsim/core/error.hpp"
#include "disturbsim/imdb/tables.hpp"
#include "disturbsim/metrics/report.hpp"
#include "json.hpp"

namespace disturbsim {

namespace {

using Json = nlohmann::ordered_json;

struct Column {
    const char* name;
    std::function<std::uint64_t(const RunStats&)> count;  // empty for real-valued columns
    std::function<double(const RunStats&)> real;
};

#define DS_COUNT(field) Column{#field, [](const RunStats& s) { return s.field; }, {}}
#define DS_REAL(name, expr) Column{name, {}, [](const RunStats& s) { return expr; }}

const std::vector<Column>& columns() {
    static const std::vector<Column> cols = {
        DS_COUNT(wde_raw),
        DS_COUNT(wde_exposed),
        DS_COUNT(wde_exposed_reads),
        DS_COUNT(wde_exposed_scrub),
        DS_COUNT(host_reads),
        DS_COUNT(host_writes),
        DS_COUNT(absorbed_writes),
        DS_COUNT(table_reads),
        DS_COUNT(rewrites),
        DS_COUNT(merges),
        DS_COUNT(pre_write_reads),
        DS_COUNT(media_reads),
        DS_COUNT(media_writes),
        DS_COUNT(vnc_corrections),
        DS_COUNT(mt_hits),
        DS_COUNT(bb_hits),
        DS_COUNT(insertions),
        DS_COUNT(bypasses),
        DS_COUNT(evictions),
        DS_COUNT(writebacks),
        DS_COUNT(set_pulses),
        DS_COUNT(reset_pulses),
        DS_COUNT(sram_searches),
        DS_COUNT(sram_accesses),
        DS_COUNT(bb_accesses),
        DS_REAL("completion_time_ns", s.completion_time_ns()),
        DS_REAL("energy_pcm_read_pj", s.energy.pcm_read_pj),
        DS_REAL("energy_pcm_set_pj", s.energy.pcm_set_pj),
        DS_REAL("energy_pcm_reset_pj", s.energy.pcm_reset_pj),
        DS_REAL("energy_sram_search_pj", s.energy.sram_search_pj),
        DS_REAL("energy_sram_access_pj", s.energy.sram_access_pj),
        DS_REAL("energy_bb_access_pj", s.energy.bb_access_pj),
        DS_REAL("energy_total_pj", s.energy.total()),
    };
    return cols;
}

#undef DS_COUNT
#undef DS_REAL

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (const auto& f : flags) {
        if (!out.empty()) out += ';';
        out += f;
    }
    return out;
}

}  // namespace

std::vector<std::string> stats_columns() {
    std::vector<std::string> names = {"schema", "label", "strategy"};
    for (const auto& c : columns()) names.emplace_back(c.name);
    return names;
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw ConfigError("unknown report format '" + std::string(name) + "'");
}

void emit_stats_report(std::ostream& out, const std::vector<LabeledStats>& rows, ReportFormat fmt,
                       std::string_view notes) {
    if (fmt == ReportFormat::Csv) {
        if (!notes.empty()) out << "# " << notes << '\n';
        const auto names = stats_columns();
        for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
        out << '\n';
        for (const auto& r : rows) {
            out << kReportSchema << ',' << csv_escape(r.label) << ',' << to_string(r.strategy);
            for (const auto& c : columns()) {
                out << ',';
                if (c.count)
                    out << c.count(r.stats);
                else
                    out << fixed3(c.real(r.stats));
            }
            out << '\n';
        }
        return;
    }
    Json doc;
    doc["schema"] = kReportSchema;
    doc["notes"] = std::string(notes);
    doc["rows"] = Json::array();
    for (const auto& r : rows) {
        Json row;
        row["label"] = r.label;
        row["strategy"] = std::string(to_string(r.strategy));
        for (const auto& c : columns()) {
            if (c.count)
                row[c.name] = c.count(r.stats);
            else
                row[c.name] = c.real(r.stats);
        }
        doc["rows"].push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
}

std::vector<TradeoffRow> tradeoff_report(const std::vector<SweepEntry>& sweep) {
    const SweepEntry* baseline = nullptr;
    for (const auto& e : sweep)
        if (e.config.strategy == Strategy::None) {
            baseline = &e;
            break;
        }
    if (!baseline) throw ReportError("missing baseline");

    std::vector<TradeoffRow> rows;
    rows.reserve(sweep.size());
    for (const auto& e : sweep) {
        TradeoffRow r;
        r.label = e.label;
        r.strategy = e.config.strategy;
        r.n_mt = e.config.n_mt;
        r.n_b = e.config.n_b;
        r.n_groups = e.config.n_groups;
        r.wde = e.stats.wde_raw;
        r.area_bits = e.config.strategy == Strategy::Imdb
                          ? imdb::sram_capacity(e.config.n_mt, e.config.n_b, e.config.geometry.banks()).total_bits()
                          : 0;
        const auto base_t = baseline->stats.completion_time_ps;
        const auto t = e.stats.completion_time_ps;
        r.speedup = t == 0 ? (base_t == 0 ? 1.0 : 0.0) : static_cast<double>(base_t) / static_cast<double>(t);
        if (e.config.strategy == Strategy::Imdb) {
            if (r.n_groups > kMaxGroups) r.flags.push_back("exceeds Ng<=32");
            if (r.n_b > kMaxBarrierEntries) r.flags.push_back("exceeds Nb<=64");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_tradeoff_report(std::ostream& out, const std::vector<TradeoffRow>& rows, ReportFormat fmt) {
    if (fmt == ReportFormat::Csv) {
        out << "schema,label,strategy,n_mt,n_b,n_groups,wde,area_bits,speedup,flags\n";
        for (const auto& r : rows) {
            out << kReportSchema << ',' << csv_escape(r.label) << ',' << to_string(r.strategy) << ','
                << r.n_mt << ',' << r.n_b << ',' << r.n_groups << ',' << r.wde << ',' << r.area_bits
                << ',' << fixed3(r.speedup) << ',' << csv_escape(join_flags(r.flags)) << '\n';
        }
        return;
    }
    Json doc;
    doc["schema"] = kReportSchema;
    doc["rows"] = Json::array();
    for (const auto& r : rows) {
        Json row;
        row["label"] = r.label;
        row["strategy"] = std::string(to_string(r.strategy));
        row["n_mt"] = r.n_mt;
        row["n_b"] = r.n_b;
        row["n_groups"] = r.n_groups;
        row["wde"] = r.wde;
        row["area_bits"] = r.area_bits;
        row["speedup"] = r.speedup;
        row["flags"] = r.flags;
        doc["rows"].push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace disturbsim
