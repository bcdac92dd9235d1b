#include "disturbsim/baselines/siwc.hpp"

#include "disturbsim/imdb/tables.hpp"

namespace disturbsim {

std::uint32_t siwc_entries(const SimConfig& cfg) {
    if (cfg.siwc.entries != 0) return cfg.siwc.entries;
    if (cfg.siwc.parity == SiwcParity::Entry) return cfg.n_mt + cfg.n_b;
    const auto bits = imdb::sram_capacity(cfg.n_mt, cfg.n_b, 1).per_bank_bits();
    return static_cast<std::uint32_t>(bits / imdb::kBarrierEntryBits);
}

WriteCache::WriteCache(std::size_t entries, Rational q_insert, Rational q_evict,
                       std::uint64_t seed)
    : slots_(entries), q_insert_(q_insert), q_evict_(q_evict), rng_(seed) {}

bool WriteCache::contains(const LineAddress& addr, const Geometry& g) const {
    return index_.contains(line_key(addr, g));
}

StrategyOutcome WriteCache::process_write(const LineAddress& addr, const DataLine& data,
                                          const Geometry& g) {
    const std::uint64_t key = line_key(addr, g);
    StrategyOutcome out;
    if (auto it = index_.find(key); it != index_.end()) {
        slots_[it->second].data = data;
        ++counters_.hits;
        out.absorbed = true;
        return out;
    }
    if (slots_.empty() || !rng_.bernoulli(q_insert_)) {
        ++counters_.bypasses;
        return out;
    }

    std::size_t slot = slots_.size();
    if (index_.size() < slots_.size()) {
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (!slots_[i].valid) {
                slot = i;
                break;
            }
    } else {
        if (!rng_.bernoulli(q_evict_)) {
            ++counters_.bypasses;
            return out;
        }
        slot = static_cast<std::size_t>(rng_.uniform(slots_.size()));
        const WriteCacheEntry& victim = slots_[slot];
        out.writeback = Writeback{victim.addr, victim.data};
        index_.erase(line_key(victim.addr, g));
        ++counters_.evictions;
    }
    slots_[slot] = WriteCacheEntry{true, addr, data};
    index_[key] = slot;
    ++counters_.insertions;
    out.absorbed = true;
    return out;
}

std::optional<DataLine> WriteCache::process_read(const LineAddress& addr, const Geometry& g) {
    auto it = index_.find(line_key(addr, g));
    if (it == index_.end()) return std::nullopt;
    ++counters_.read_hits;
    return slots_[it->second].data;
}

}  // namespace disturbsim
