#include "disturbsim/controller/engine.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "disturbsim/baselines/vnc.hpp"
#include "disturbsim/core/error.hpp"
#include "disturbsim/metrics/report.hpp"

namespace disturbsim {

std::string_view to_string(CommandKind k) {
    switch (k) {
        case CommandKind::HostRead: return "HostRead";
        case CommandKind::HostWrite: return "HostWrite";
        case CommandKind::PreWriteRead: return "PreWriteRead";
        case CommandKind::Rewrite: return "Rewrite";
        case CommandKind::Writeback: return "Writeback";
    }
    return "?";
}

Command* BankQueues::latest_write(const LineAddress& addr) {
    for (auto it = writes.rbegin(); it != writes.rend(); ++it)
        if (it->addr == addr) return &*it;
    return nullptr;
}

const Command* BankQueues::latest_write(const LineAddress& addr) const {
    return const_cast<BankQueues*>(this)->latest_write(addr);
}

bool BankQueues::has_host_write(const LineAddress& addr) const {
    return std::any_of(writes.begin(), writes.end(), [&](const Command& c) {
        return c.kind == CommandKind::HostWrite && c.addr == addr;
    });
}

std::optional<Selection> select_next(BankQueues& q, std::uint32_t depth, std::uint32_t watermark) {
    if (q.writes.size() >= depth) q.draining = true;
    if (q.draining && q.writes.size() <= watermark) q.draining = false;

    auto first_write = [&](auto pred) -> std::optional<Selection> {
        for (std::size_t i = 0; i < q.writes.size(); ++i)
            if (pred(q.writes[i])) return Selection{true, i};
        return std::nullopt;
    };
    auto first_read = [&](CommandKind kind) -> std::optional<Selection> {
        for (std::size_t i = 0; i < q.reads.size(); ++i) {
            const Command& c = q.reads[i];
            if (c.kind != kind) continue;
            if (kind == CommandKind::PreWriteRead) {
                const bool blocked = std::any_of(q.writes.begin(), q.writes.end(), [&](const Command& w) {
                    return w.addr == c.addr && w.seq < c.paired_seq;
                });
                if (blocked) continue;
            }
            return Selection{false, i};
        }
        return std::nullopt;
    };
    auto ready_write = [](const Command& c) { return c.ready(); };

    if (auto s = first_write([](const Command& c) { return c.kind == CommandKind::Rewrite; })) return s;
    if (auto s = first_read(CommandKind::HostRead)) return s;
    if (q.draining)
        if (auto s = first_write(ready_write)) return s;
    if (auto s = first_read(CommandKind::PreWriteRead)) return s;
    return first_write(ready_write);
}

Engine::Engine(const SimConfig& cfg, EngineHooks hooks)
    : cfg_(cfg), hooks_(std::move(hooks)), media_(cfg) {
    cfg_.validate();
    const Geometry& g = cfg_.geometry;
    banks_.resize(g.banks());
    for (std::uint32_t i = 0; i < g.banks(); ++i) {
        Bank& b = banks_[i];
        if (cfg_.strategy == Strategy::Imdb) {
            auto policy = hooks_.policy_factory ? hooks_.policy_factory(cfg_) : imdb::Imdb::default_policy(cfg_);
            b.imdb = std::make_unique<imdb::Imdb>(imdb::ImdbParams::from(cfg_), g, i / g.banks_per_rank,
                                                  i % g.banks_per_rank, std::move(policy),
                                                  derive_seed(cfg_.seed, i));
        } else if (cfg_.strategy == Strategy::Siwc) {
            b.cache = std::make_unique<WriteCache>(siwc_entries(cfg_), cfg_.siwc.q_insert, cfg_.siwc.q_evict,
                                                   derive_seed(cfg_.seed, g.banks() + i));
        }
    }
}

void Engine::complete(TimePs t) { stats_.completion_time_ps = std::max(stats_.completion_time_ps, t); }

void Engine::enqueue(Bank& b, Command cmd, TimePs now) {
    cmd.enqueue_time = now;
    if (cmd.seq == 0) cmd.seq = next_seq_++;
    ++stats_.commands_admitted;
    (cmd.is_write() ? b.queues.writes : b.queues.reads).push_back(std::move(cmd));
}

SubmitStatus Engine::submit(const TraceRecord& record, TimePs now) {
    const Geometry& g = cfg_.geometry;
    const LineAddress addr = decompose_address(record.byte_addr, g);
    Bank& b = banks_[bank_index(addr, g)];
    BankQueues& q = b.queues;
    const TimePs hit_done = now + cfg_.cycles_to_ps(cfg_.hit_cycles);

    if (record.op == TraceOp::Read) {
        const bool table_hit = (b.imdb && b.imdb->barrier_holds(addr)) || (b.cache && b.cache->contains(addr, g));
        if (!table_hit && q.reads.size() >= cfg_.queue_depth) return SubmitStatus::Backpressure;
        ++stats_.host_reads;
        if (b.imdb) {
            if (b.imdb->process_read(addr)) {
                ++stats_.table_reads;
                complete(hit_done);
                return SubmitStatus::Served;
            }
        } else if (b.cache) {
            ++siwc_searches_;
            if (b.cache->process_read(addr, g)) {
                ++siwc_accesses_;
                ++stats_.table_reads;
                complete(hit_done);
                return SubmitStatus::Served;
            }
        }
        Command c;
        c.kind = CommandKind::HostRead;
        c.addr = addr;
        enqueue(b, std::move(c), now);
        return SubmitStatus::Queued;
    }

    if (!record.data) throw PreconditionError("write record without data");
    const DataLine& data = *record.data;
    const bool line_queued = q.latest_write(addr) != nullptr;

    if (b.imdb && !line_queued && b.imdb->barrier_holds(addr)) {
        const auto slot = b.imdb->barrier().find(pack_row_col(addr, g));
        const DataLine held = b.imdb->barrier()[*slot].data;
        const auto out = b.imdb->process_write(addr, held, data, imdb::WriteSource::Host);
        if (!out.absorbed) throw InvariantError("barrier-buffer hit was not absorbed");
        ++stats_.host_writes;
        ++stats_.absorbed_writes;
        complete(hit_done);
        return SubmitStatus::Absorbed;
    }
    if (b.cache && !line_queued && b.cache->contains(addr, g)) {
        ++siwc_searches_;
        ++siwc_accesses_;
        b.cache->process_write(addr, data, g);
        ++stats_.host_writes;
        ++stats_.absorbed_writes;
        complete(hit_done);
        return SubmitStatus::Absorbed;
    }

    const bool needs_prepare = b.imdb != nullptr;
    if (q.writes.size() >= cfg_.queue_depth || (needs_prepare && q.reads.size() >= cfg_.queue_depth))
        return SubmitStatus::Backpressure;
    ++stats_.host_writes;

    Command w;
    w.kind = CommandKind::HostWrite;
    w.addr = addr;
    w.data = data;
    w.seq = next_seq_++;
    if (needs_prepare) {
        Command r;
        r.kind = CommandKind::PreWriteRead;
        r.addr = addr;
        r.paired_seq = w.seq;
        enqueue(b, std::move(w), now);
        enqueue(b, std::move(r), now);
    } else {
        w.prepared = true;
        w.old_data = media_.read_line(addr);
        enqueue(b, std::move(w), now);
    }
    return SubmitStatus::Queued;
}

bool Engine::merge_rewrite(const LineAddress& addr, TimePs now) {
    Bank& b = banks_[bank_index(addr, cfg_.geometry)];
    ++stats_.rewrites;
    if (Command* w = b.queues.latest_write(addr)) {
        w->mode = WriteMode::Full;
        ++stats_.commands_admitted;
        ++merged_;
        return true;
    }
    Command c;
    c.kind = CommandKind::Rewrite;
    c.addr = addr;
    c.mode = WriteMode::Full;
    c.prepared = true;
    enqueue(b, std::move(c), now);
    return false;
}

void Engine::enqueue_writeback(const Writeback& wb, TimePs now) {
    Bank& b = banks_[bank_index(wb.addr, cfg_.geometry)];
    ++stats_.writebacks;
    if (b.queues.has_host_write(wb.addr)) {
        ++stats_.commands_admitted;
        ++merged_;
        return;
    }
    Command c;
    c.kind = CommandKind::Writeback;
    c.addr = wb.addr;
    c.data = wb.data;
    c.prepared = true;
    enqueue(b, std::move(c), now);
}

TimePs Engine::media_write(const LineAddress& addr, const DataLine& data, WriteMode mode) {
    const WriteOutcome out = media_.apply_write(addr, data, mode);
    ++stats_.media_writes;
    stats_.set_pulses += out.set_pulses;
    stats_.reset_pulses += out.reset_pulses;
    stats_.wde_raw += out.wde_events.size();
    return out.latency;
}

TimePs Engine::barrier_write(Bank& b, const Command& cmd, const DataLine& old, TimePs now,
                             imdb::WriteSource source, bool& absorbed) {
    const imdb::ImdbOutcome out = b.imdb->process_write(cmd.addr, old, *cmd.data, source);
    absorbed = out.absorbed;
    if (absorbed) ++stats_.absorbed_writes;
    for (const auto& n : out.rewrites) merge_rewrite(n, now);
    if (out.writeback) enqueue_writeback(*out.writeback, now);
    return cfg_.cycles_to_ps(out.occupancy_cycles);
}

TimePs Engine::service_host_write(Bank& b, Command& cmd, TimePs now) {
    if (!cmd.data) throw InvariantError("host write without data");
    switch (cfg_.strategy) {
        case Strategy::None:
            return media_write(cmd.addr, *cmd.data, cmd.mode);
        case Strategy::Vnc: {
            const VncResult r = vnc_wrap_write(media_, cmd.addr, *cmd.data, cmd.mode);
            TimePs lat = static_cast<TimePs>(r.outcome.extra_reads.size()) * ns_to_ps(cfg_.timing.read_ns);
            stats_.media_reads += r.outcome.extra_reads.size();
            stats_.vnc_corrections += r.outcome.extra_writes.size();
            for (const auto& w : r.media_writes) {
                ++stats_.media_writes;
                stats_.set_pulses += w.set_pulses;
                stats_.reset_pulses += w.reset_pulses;
                stats_.wde_raw += w.wde_events.size();
                lat += w.latency;
            }
            return lat;
        }
        case Strategy::Siwc: {
            ++siwc_searches_;
            const StrategyOutcome out = b.cache->process_write(cmd.addr, *cmd.data, cfg_.geometry);
            TimePs lat = cfg_.cycles_to_ps(cfg_.hit_cycles);
            if (out.writeback) enqueue_writeback(*out.writeback, now);
            if (out.absorbed) {
                ++siwc_accesses_;
                ++stats_.absorbed_writes;
                return lat;
            }
            return lat + media_write(cmd.addr, *cmd.data, cmd.mode);
        }
        case Strategy::Imdb: {
            if (!cmd.prepared || !cmd.old_data)
                throw ProtocolError("host write issued without pre-write read data");
            bool absorbed = false;
            TimePs lat = barrier_write(b, cmd, *cmd.old_data, now, imdb::WriteSource::Host, absorbed);
            if (!absorbed) lat += media_write(cmd.addr, *cmd.data, cmd.mode);
            return lat;
        }
    }
    return 0;
}

TimePs Engine::service(Bank& b, Command& cmd, TimePs now) {
    const TimePs read_ps = ns_to_ps(cfg_.timing.read_ns);
    switch (cmd.kind) {
        case CommandKind::HostRead:
            ++stats_.media_reads;
            if (media_.read_line(cmd.addr) != media_.intended(cmd.addr)) ++stats_.wde_exposed_reads;
            return read_ps;
        case CommandKind::PreWriteRead: {
            ++stats_.media_reads;
            ++stats_.pre_write_reads;
            auto it = std::find_if(b.queues.writes.begin(), b.queues.writes.end(),
                                   [&](const Command& w) { return w.seq == cmd.paired_seq; });
            if (it == b.queues.writes.end()) throw InvariantError("pre-write read lost its write");
            it->prepared = true;
            it->old_data = media_.read_line(cmd.addr);
            return read_ps;
        }
        case CommandKind::HostWrite:
            return service_host_write(b, cmd, now);
        case CommandKind::Rewrite:
        case CommandKind::Writeback: {
            if (cmd.kind == CommandKind::Rewrite) cmd.data = media_.intended(cmd.addr);
            TimePs lat = 0;
            if (b.imdb) {
                ++stats_.media_reads;
                lat += read_ps;
                bool absorbed = false;
                lat += barrier_write(b, cmd, media_.read_line(cmd.addr), now, imdb::WriteSource::Internal,
                                     absorbed);
            }
            return lat + media_write(cmd.addr, *cmd.data, cmd.mode);
        }
    }
    return 0;
}

bool Engine::issue_next(std::uint32_t bank, TimePs now) {
    Bank& b = banks_.at(bank);
    if (b.busy_until > now) return false;
    const auto sel = select_next(b.queues, cfg_.queue_depth, cfg_.watermark());
    if (!sel) return false;
    auto& queue = sel->from_writes ? b.queues.writes : b.queues.reads;
    if (hooks_.on_issue) hooks_.on_issue(bank, queue[sel->index], b.queues);
    Command cmd = std::move(queue[sel->index]);
    queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(sel->index));
    ++stats_.commands_serviced;
    const TimePs lat = service(b, cmd, now);
    b.busy_until = now + lat;
    complete(b.busy_until);
    return true;
}

RunStats Engine::run(const Trace& trace) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        try {
            (void)decompose_address(trace[i].byte_addr, cfg_.geometry);
        } catch (const RangeError& e) {
            throw RangeError("record " + std::to_string(i + 1) + ": " + e.what());
        }
    }

    constexpr TimePs kNever = std::numeric_limits<TimePs>::max();
    TimePs now = 0;
    std::size_t next = 0;
    for (;;) {
        for (bool changed = true; changed;) {
            changed = false;
            while (next < trace.size() && ns_to_ps(trace[next].time_ns) <= now) {
                if (submit(trace[next], now) == SubmitStatus::Backpressure) break;
                ++next;
                changed = true;
            }
            for (std::uint32_t i = 0; i < banks_.size(); ++i)
                while (issue_next(i, now)) changed = true;
        }

        const bool idle = std::all_of(banks_.begin(), banks_.end(), [](const Bank& b) { return b.queues.empty(); });
        if (next == trace.size() && idle) break;

        TimePs wake = kNever;
        if (next < trace.size() && ns_to_ps(trace[next].time_ns) > now) wake = ns_to_ps(trace[next].time_ns);
        for (const Bank& b : banks_)
            if (b.busy_until > now) wake = std::min(wake, b.busy_until);
        if (wake == kNever) throw InvariantError("scheduler stalled with pending commands");
        now = wake;
    }
    return finish();
}

RunStats Engine::finish() {
    RunStats s = stats_;
    s.wde_exposed_scrub = media_.scrub_divergence().size();
    s.wde_exposed = s.wde_exposed_reads + s.wde_exposed_scrub;
    s.merges = merged_;
    for (const Bank& b : banks_) {
        if (b.imdb) {
            const auto& c = b.imdb->counters();
            s.mt_hits += c.mt_hits;
            s.bb_hits += c.bb_hits;
            s.insertions += c.insertions;
            s.bypasses += c.bypasses;
            s.evictions += c.evictions;
            s.sram_searches += c.searches;
            s.sram_accesses += c.mt_accesses;
            s.bb_accesses += c.bb_accesses;
        }
        if (b.cache) {
            const auto& c = b.cache->counters();
            s.bb_hits += c.hits + c.read_hits;
            s.insertions += c.insertions;
            s.bypasses += c.bypasses;
            s.evictions += c.evictions;
        }
        if (!b.queues.empty()) throw InvariantError("commands left in a queue at end of run");
    }
    s.sram_searches += siwc_searches_;
    s.bb_accesses += siwc_accesses_;
    if (s.commands_admitted != s.commands_serviced + merged_)
        throw InvariantError("queue conservation violated: " + std::to_string(s.commands_admitted) +
                             " admitted, " + std::to_string(s.commands_serviced) + " serviced, " +
                             std::to_string(merged_) + " merged");
    s.energy = energy_total(s, cfg_.energy);
    return s;
}

RunStats run_to_completion(const SimConfig& cfg, const Trace& trace, const EngineHooks& hooks) {
    Engine engine(cfg, hooks);
    return engine.run(trace);
}

}  // namespace disturbsim
