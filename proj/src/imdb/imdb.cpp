#include "disturbsim/imdb/imdb.hpp"

#include <algorithm>

#include "disturbsim/core/error.hpp"
#include "disturbsim/kernels/bitops.hpp"

namespace disturbsim::imdb {

ImdbParams ImdbParams::from(const SimConfig& cfg) {
    ImdbParams p;
    p.n_mt = cfg.n_mt;
    p.n_b = cfg.n_b;
    p.threshold = cfg.threshold;
    p.insert_prob = cfg.insert_prob;
    p.prior_knowledge = cfg.prior_knowledge;
    p.hit_cycles = cfg.hit_cycles;
    p.insert_cycles = cfg.insert_cycles;
    return p;
}

Imdb::Imdb(const ImdbParams& params, const Geometry& geometry, std::uint32_t rank,
           std::uint32_t bank, std::unique_ptr<VictimPolicy> policy, std::uint64_t seed)
    : params_(params),
      geometry_(geometry),
      rank_(rank),
      bank_(bank),
      mt_(params.n_mt),
      bb_(params.n_b),
      policy_(std::move(policy)),
      rng_(seed) {
    if (!policy_) throw PreconditionError("Imdb requires a victim policy");
}

std::unique_ptr<VictimPolicy> Imdb::default_policy(const SimConfig& cfg) {
    if (cfg.n_groups == cfg.n_mt) return std::make_unique<ExactPolicy>(cfg.n_mt);
    return std::make_unique<ApplePolicy>(cfg.n_groups);
}

ZfcArray Imdb::initial_counters(const DataLine& data) const {
    return params_.prior_knowledge ? prior_init(data) : ZfcArray{};
}

LineAddress Imdb::unpack(std::uint32_t row_col) const {
    return {rank_, bank_, row_col / geometry_.cols_per_row, row_col % geometry_.cols_per_row};
}

std::uint32_t Imdb::pack(const LineAddress& addr) const {
    if (addr.rank != rank_ || addr.bank != bank_)
        throw PreconditionError("address routed to the wrong bank's IMDB");
    check_address(addr, geometry_);
    return pack_row_col(addr, geometry_);
}

bool Imdb::barrier_holds(const LineAddress& addr) const { return bb_.find(pack(addr)).has_value(); }

std::pair<std::size_t, bool> Imdb::insert(const LineAddress& addr, const DataLine& data) {
    bool replaced = false;
    std::size_t slot;
    if (auto free = mt_.free_slot()) {
        slot = *free;
    } else {
        slot = policy_->select(mt_, rng_);
        replaced = true;
        ++counters_.evictions;
    }
    MainTableEntry e;
    e.row_col = pack(addr);
    e.reset_counters(initial_counters(data));
    mt_.put(slot, e);
    policy_->touch(slot);
    ++counters_.insertions;
    ++counters_.mt_accesses;
    return {slot, replaced};
}

ImdbOutcome Imdb::process_write(const LineAddress& addr, const std::optional<DataLine>& old_data,
                                const DataLine& new_data, WriteSource source) {
    if (!old_data) throw ProtocolError("write reached the IMDB without pre-write read data");
    const std::uint32_t key = pack(addr);
    ImdbOutcome out;
    out.occupancy_cycles = params_.hit_cycles;
    ++counters_.searches;

    const LookupResult hit = lookup(mt_, bb_, key);
    switch (hit.kind) {
        case LookupResult::Kind::BarrierHit: {
            out.classification = Classification::BarrierHit;
            ++counters_.bb_hits;
            if (source == WriteSource::Host) {
                BarrierEntry& e = bb_[hit.slot];
                e.data = new_data;
                e.freq_cntr = static_cast<std::uint8_t>(std::min<std::uint32_t>(e.freq_cntr + 1u, kCounter8Max));
                ++counters_.bb_accesses;
                out.absorbed = true;
            }
            return out;
        }
        case LookupResult::Kind::MainTableHit: {
            out.classification = Classification::MainTableHit;
            ++counters_.mt_hits;
            ++counters_.mt_accesses;
            MainTableEntry& e = mt_[hit.slot];
            e.accumulate(count_one_to_zero(*old_data, new_data));
            policy_->touch(hit.slot);
            if (e.max_zfc() < params_.threshold) return out;
            if (source == WriteSource::Internal) return out;

            ++counters_.rewrite_triggers;
            e.rewrite_cntr = static_cast<std::uint8_t>(std::min<std::uint32_t>(e.rewrite_cntr + 1u, kCounter8Max));
            for (int delta : {-1, +1})
                if (auto n = row_neighbor(addr, geometry_, delta)) out.rewrites.push_back(*n);
            if (params_.n_b > 0) {
                out.writeback = promote_and_demote(hit.slot, new_data);
                out.absorbed = source == WriteSource::Host;
            } else {
                e.reset_counters(initial_counters(new_data));
            }
            return out;
        }
        case LookupResult::Kind::Miss:
            break;
    }

    if (!rng_.bernoulli(params_.insert_prob)) {
        out.classification = Classification::MissBypassed;
        ++counters_.bypasses;
        return out;
    }
    out.classification = Classification::MissInserted;
    const auto [slot, replaced] = insert(addr, new_data);
    (void)slot;
    out.occupancy_cycles = params_.insert_cycles + (replaced ? policy_->latency_cycles() : 0);
    return out;
}

std::optional<DataLine> Imdb::process_read(const LineAddress& addr) {
    ++counters_.searches;
    const auto slot = bb_.find(pack(addr));
    if (!slot) return std::nullopt;
    BarrierEntry& e = bb_[*slot];
    e.freq_cntr = static_cast<std::uint8_t>(std::min<std::uint32_t>(e.freq_cntr + 1u, kCounter8Max));
    ++counters_.bb_hits;
    ++counters_.bb_accesses;
    return e.data;
}

std::optional<Writeback> Imdb::promote_and_demote(std::size_t mt_slot, const DataLine& write_data) {
    const MainTableEntry promoted = mt_[mt_slot];
    if (!promoted.valid) throw PreconditionError("promotion of an invalid main-table slot");
    if (bb_.capacity() == 0) throw PreconditionError("promotion without a barrier buffer");
    mt_.invalidate(mt_slot);
    ++counters_.promotions;
    ++counters_.bb_accesses;

    BarrierEntry incoming;
    incoming.row_col = promoted.row_col;
    incoming.data = write_data;
    incoming.rewrite_cntr = promoted.rewrite_cntr;
    incoming.freq_cntr = 0;

    if (auto free = bb_.free_slot()) {
        bb_.put(*free, incoming);
        return std::nullopt;
    }

    std::size_t lfu = 0;
    for (std::size_t i = 1; i < bb_.capacity(); ++i)
        if (bb_[i].freq_cntr < bb_[lfu].freq_cntr) lfu = i;
    const BarrierEntry victim = bb_[lfu];
    bb_.put(lfu, incoming);

    MainTableEntry demoted;
    demoted.row_col = victim.row_col;
    demoted.rewrite_cntr = victim.rewrite_cntr;
    demoted.reset_counters(initial_counters(victim.data));
    mt_.put(mt_slot, demoted);
    policy_->touch(mt_slot);
    ++counters_.demotions;
    ++counters_.mt_accesses;
    return Writeback{unpack(victim.row_col), victim.data};
}

}  // namespace disturbsim::imdb
