#include "disturbsim/traces/generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "disturbsim/core/error.hpp"

namespace disturbsim {

Trace gen_hammer(std::uint64_t target, std::uint64_t rounds, std::uint64_t gap_ns,
                 std::uint64_t start_ns) {
    Trace t;
    t.reserve(2 * rounds);
    std::uint64_t now = start_ns;
    for (std::uint64_t r = 0; r < rounds; ++r) {
        t.push_back(TraceRecord::write(now, target, DataLine::ones()));
        now += gap_ns;
        t.push_back(TraceRecord::write(now, target, DataLine::zeros()));
        now += gap_ns;
    }
    return t;
}

namespace {

// Partial Fisher-Yates: `count` distinct positions out of [0, n).
std::vector<std::uint32_t> pick_positions(Rng& rng, std::uint32_t n, std::uint32_t count) {
    std::vector<std::uint32_t> pos(n);
    std::iota(pos.begin(), pos.end(), 0u);
    count = std::min(count, n);
    for (std::uint32_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::uint32_t>(rng.uniform(n - i));
        std::swap(pos[i], pos[j]);
    }
    pos.resize(count);
    return pos;
}

std::uint64_t byte_address(const Geometry& g, std::uint32_t flat_bank, std::uint32_t row,
                           std::uint32_t col) {
    LineAddress a;
    a.rank = flat_bank / g.banks_per_rank;
    a.bank = flat_bank % g.banks_per_rank;
    a.row = row;
    a.col = col;
    return compose_address(a, g);
}

DataLine random_line(Rng& rng) {
    DataLine d;
    for (auto& w : d.words) w = rng.next();
    return d;
}

}  // namespace

DataLine random_line_with_zeros(Rng& rng, std::uint32_t zeros) {
    DataLine d = DataLine::ones();
    for (std::size_t w = 0; w < kWordsPerLine; ++w)
        for (auto b : pick_positions(rng, kBitsPerWord, zeros)) d.words[w] &= ~(std::uint64_t{1} << b);
    return d;
}

Trace gen_slow_flip(const SlowFlipParams& p, const Geometry& g, Rng& rng) {
    Trace t;
    if (p.rounds == 0 || p.victims == 0) return t;
    if (p.bank >= g.banks()) throw RangeError("slow-flip bank " + std::to_string(p.bank) + " out of range");

    const std::uint32_t cols = g.cols_per_row;
    const std::uint32_t aggressor_row_span = 3 * ((p.victims + cols - 1) / cols);
    const std::uint32_t pressure_rows = p.interleave == 0 ? 0 : (p.pressure_lines + cols - 1) / cols;
    if (std::uint64_t{aggressor_row_span} + pressure_rows > g.rows_per_bank)
        throw RangeError("slow-flip pattern needs " + std::to_string(aggressor_row_span + pressure_rows) +
                         " rows; bank has " + std::to_string(g.rows_per_bank));

    struct Aggressor {
        std::uint64_t addr;
        DataLine rest;
        DataLine flipped;
    };
    std::vector<Aggressor> aggressors;
    aggressors.reserve(p.victims);
    for (std::uint32_t i = 0; i < p.victims; ++i) {
        Aggressor a;
        a.addr = byte_address(g, p.bank, 3 * (i / cols) + 1, i % cols);
        a.rest = random_line_with_zeros(rng, std::min<std::uint32_t>(p.aggressor_zero_bits, 64));
        std::vector<std::uint32_t> ones;
        for (std::uint32_t b = 0; b < kLineBits; ++b)
            if (a.rest.bit(b)) ones.push_back(b);
        a.flipped = a.rest;
        for (auto idx : pick_positions(rng, static_cast<std::uint32_t>(ones.size()), p.flip_bits))
            a.flipped.set_bit(ones[idx], false);
        aggressors.push_back(a);
    }

    const std::uint32_t pressure_base_row = aggressor_row_span;
    const std::uint32_t pressure_count = p.interleave == 0 ? 0 : p.pressure_lines;
    std::uint64_t now = p.start_ns;
    auto emit = [&](std::uint64_t addr, const DataLine& d) {
        t.push_back(TraceRecord::write(now, addr, d));
        now += p.gap_ns;
    };

    for (std::uint32_t r = 0; r < p.rounds; ++r) {
        for (const auto& a : aggressors) {
            emit(a.addr, a.flipped);
            emit(a.addr, a.rest);
            for (std::uint32_t k = 0; k < p.interleave; ++k) {
                const auto line = static_cast<std::uint32_t>(rng.uniform(pressure_count));
                const std::uint64_t addr =
                    byte_address(g, p.bank, pressure_base_row + line / cols, line % cols);
                emit(addr, random_line_with_zeros(rng, std::min<std::uint32_t>(p.pressure_zero_bits, 64)));
            }
        }
    }
    return t;
}

SyntheticKind parse_synthetic_kind(std::string_view name) {
    if (name == "uniform") return SyntheticKind::Uniform;
    if (name == "hotspot") return SyntheticKind::Hotspot;
    if (name == "pmix-proxy") return SyntheticKind::PmixProxy;
    throw ConfigError("unknown synthetic kind '" + std::string(name) + "'");
}

Trace gen_synthetic(const SyntheticParams& p, const Geometry& g, Rng& rng) {
    Trace t;
    t.reserve(p.n);
    const std::uint64_t total_lines = g.capacity_bytes() / kLineBytes;
    const std::uint64_t footprint = std::max<std::uint64_t>(1, std::min(p.footprint_lines, total_lines));
    std::uint64_t now = 0;
    auto push = [&](std::uint64_t line, const DataLine* d) {
        const std::uint64_t addr = line * kLineBytes;
        if (d)
            t.push_back(TraceRecord::write(now, addr, *d));
        else
            t.push_back(TraceRecord::read(now, addr));
        now += p.gap_ns;
    };
    auto is_read = [&] { return p.read_percent > 0 && rng.uniform(100) < p.read_percent; };

    switch (p.kind) {
        case SyntheticKind::Uniform:
            for (std::uint64_t i = 0; i < p.n; ++i) {
                const std::uint64_t line = rng.uniform(footprint);
                if (is_read()) {
                    push(line, nullptr);
                } else {
                    const DataLine d = random_line(rng);
                    push(line, &d);
                }
            }
            break;
        case SyntheticKind::Hotspot: {
            const std::uint64_t hot = std::max<std::uint64_t>(1, footprint / 10);
            std::uint64_t writes = 0;
            for (std::uint64_t i = 0; i < p.n; ++i) {
                if (is_read()) {
                    push(rng.uniform(footprint), nullptr);
                    continue;
                }
                const bool to_hot = writes++ % 10 != 9;
                const std::uint64_t line = to_hot ? rng.uniform(hot) : rng.uniform(footprint);
                const DataLine d = random_line(rng);
                push(line, &d);
            }
            break;
        }
        case SyntheticKind::PmixProxy: {
            // A handful of structure headers updated in place, plus nodes allocated
            // sequentially through the remaining footprint.
            const std::uint64_t headers = std::min<std::uint64_t>(16, footprint);
            std::vector<DataLine> header_data(headers);
            for (auto& h : header_data) h = random_line(rng);
            std::uint64_t next_node = headers;
            for (std::uint64_t i = 0; i < p.n; ++i) {
                if (is_read()) {
                    push(rng.uniform(footprint), nullptr);
                    continue;
                }
                if (rng.uniform(2) == 0 && footprint > headers) {
                    const DataLine d = random_line(rng);
                    push(next_node, &d);
                    next_node = next_node + 1 < footprint ? next_node + 1 : headers;
                } else {
                    const auto h = rng.uniform(headers);
                    const auto churn = 1 + rng.uniform(4);
                    for (std::uint64_t c = 0; c < churn; ++c) {
                        const auto bit = static_cast<std::size_t>(rng.uniform(kLineBits));
                        header_data[h].set_bit(bit, !header_data[h].bit(bit));
                    }
                    push(h, &header_data[h]);
                }
            }
            break;
        }
    }
    return t;
}

}  // namespace disturbsim
