#include "disturbsim/media/cell_array.hpp"

#include <algorithm>
#include <bit>

#include "disturbsim/core/error.hpp"

namespace disturbsim {

TimePs write_latency(const WriteOutcome& outcome, const Timing& timing) {
    if (outcome.set_pulses > 0) return ns_to_ps(timing.set_ns);
    return ns_to_ps(timing.reset_ns);
}

CellArray::CellArray(const SimConfig& cfg)
    : geometry_(cfg.geometry),
      timing_(cfg.timing),
      limit_(static_cast<std::uint16_t>(cfg.disturb_limit)),
      fill_(cfg.fill_line()) {
    geometry_.validate();
}

CellArray::LineState& CellArray::materialize(const LineAddress& addr) {
    auto [it, inserted] = lines_.try_emplace(line_key(addr, geometry_));
    if (inserted) {
        it->second.physical = fill_;
        it->second.intended = fill_;
    }
    return it->second;
}

const CellArray::LineState* CellArray::find(const LineAddress& addr) const {
    auto it = lines_.find(line_key(addr, geometry_));
    return it == lines_.end() ? nullptr : &it->second;
}

void CellArray::disturb(const LineAddress& victim, const DataLine& pulses, WriteOutcome& out) {
    const auto& k = kernels::active();
    LineState& v = materialize(victim);
    k.add_pulses(v.accum, pulses, limit_);
    const DataLine flipped = k.disturbed_cells(v.accum, v.physical, limit_);
    if (flipped.none()) return;
    v.physical = v.physical | flipped;
    k.clear_counters(v.accum, flipped);
    for (std::size_t w = 0; w < kWordsPerLine; ++w) {
        for (std::uint64_t bits = flipped.words[w]; bits != 0; bits &= bits - 1) {
            const auto b = w * kBitsPerWord + static_cast<std::size_t>(std::countr_zero(bits));
            out.wde_events.push_back({victim, static_cast<std::uint16_t>(b)});
        }
    }
}

WriteOutcome CellArray::apply_write(const LineAddress& addr, const DataLine& data,
                                    WriteMode mode) {
    check_address(addr, geometry_);
    LineState& s = materialize(addr);
    const DataLine programmed = mode == WriteMode::Full ? DataLine::ones() : (s.physical ^ data);
    const DataLine resets = programmed & ~data;
    const DataLine sets = programmed & data;

    WriteOutcome out;
    out.reset_pulses = static_cast<std::uint32_t>(resets.popcount());
    out.set_pulses = static_cast<std::uint32_t>(sets.popcount());

    s.physical = data;
    s.intended = data;
    kernels::active().clear_counters(s.accum, programmed);

    if (!resets.none()) {
        for (int delta : {-1, +1}) {
            if (auto n = row_neighbor(addr, geometry_, delta)) disturb(*n, resets, out);
        }
    }
    out.latency = write_latency(out, timing_);
    return out;
}

DataLine CellArray::read_line(const LineAddress& addr) const {
    check_address(addr, geometry_);
    const LineState* s = find(addr);
    return s ? s->physical : fill_;
}

DataLine CellArray::intended(const LineAddress& addr) const {
    check_address(addr, geometry_);
    const LineState* s = find(addr);
    return s ? s->intended : fill_;
}

const PulseCounters* CellArray::counters(const LineAddress& addr) const {
    check_address(addr, geometry_);
    const LineState* s = find(addr);
    return s ? &s->accum : nullptr;
}

std::vector<Divergence> CellArray::scrub_divergence() const {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed;
    for (const auto& [key, s] : lines_) {
        if (s.physical != s.intended)
            keyed.emplace_back(key, static_cast<std::uint32_t>((s.physical ^ s.intended).popcount()));
    }
    std::sort(keyed.begin(), keyed.end());

    std::vector<Divergence> out;
    out.reserve(keyed.size());
    const std::uint64_t per_bank = geometry_.lines_per_bank();
    for (const auto& [key, bits] : keyed) {
        const auto bank = static_cast<std::uint32_t>(key / per_bank);
        const auto rc = key % per_bank;
        LineAddress a;
        a.rank = bank / geometry_.banks_per_rank;
        a.bank = bank % geometry_.banks_per_rank;
        a.row = static_cast<std::uint32_t>(rc / geometry_.cols_per_row);
        a.col = static_cast<std::uint32_t>(rc % geometry_.cols_per_row);
        out.push_back({a, bits});
    }
    return out;
}

}  // namespace disturbsim
