#include "disturbsim/imdb/tables.hpp"

#include <algorithm>
#include <string>

#include "disturbsim/core/error.hpp"
#include "disturbsim/kernels/bitops.hpp"

namespace disturbsim::imdb {

std::uint8_t argmax_index(const ZfcArray& zfc) {
    return static_cast<std::uint8_t>(std::max_element(zfc.begin(), zfc.end()) - zfc.begin());
}

ZfcArray prior_init(const DataLine& data) {
    const WordCounts z = count_zeros(data);
    ZfcArray out{};
    for (std::size_t i = 0; i < kWordsPerLine; ++i)
        out[i] = static_cast<std::uint16_t>(std::min<std::uint32_t>(z[i], kZfcMax));
    return out;
}

void MainTableEntry::accumulate(const WordCounts& flips) {
    for (std::size_t i = 0; i < kWordsPerLine; ++i)
        zfc[i] = static_cast<std::uint16_t>(std::min<std::uint32_t>(zfc[i] + flips[i], kZfcMax));
    max_zfc_idx = argmax_index(zfc);
}

void MainTableEntry::reset_counters(const ZfcArray& init) {
    zfc = init;
    max_zfc_idx = argmax_index(zfc);
}

template <typename Entry>
void Table<Entry>::put(std::size_t slot, Entry e) {
    Entry& cur = slots_.at(slot);
    auto existing = index_.find(e.row_col);
    if (existing != index_.end() && existing->second != slot)
        throw ConsistencyError("row_col " + std::to_string(e.row_col) + " already held in slot " +
                               std::to_string(existing->second));
    if (cur.valid) index_.erase(cur.row_col);
    e.valid = true;
    cur = e;
    index_[cur.row_col] = slot;
}

template <typename Entry>
void Table<Entry>::invalidate(std::size_t slot) {
    Entry& cur = slots_.at(slot);
    if (!cur.valid) return;
    index_.erase(cur.row_col);
    cur.valid = false;
}

template class Table<MainTableEntry>;
template class Table<BarrierEntry>;

LookupResult lookup(const MainTable& mt, const BarrierBuffer& bb, std::uint32_t row_col) {
    const auto in_bb = bb.find(row_col);
    const auto in_mt = mt.find(row_col);
    if (in_bb && in_mt)
        throw ConsistencyError("row_col " + std::to_string(row_col) +
                               " valid in both the main table and the barrier buffer");
    if (in_bb) return {LookupResult::Kind::BarrierHit, *in_bb};
    if (in_mt) return {LookupResult::Kind::MainTableHit, *in_mt};
    return {};
}

SramCapacity sram_capacity(std::uint64_t n_mt, std::uint64_t n_b, std::uint64_t banks) {
    return {n_mt * kMainEntryBits, n_b * kBarrierEntryBits, banks};
}

}  // namespace disturbsim::imdb
