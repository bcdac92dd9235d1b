#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "disturbsim/baselines/siwc.hpp"
#include "disturbsim/core/config.hpp"
#include "disturbsim/core/time.hpp"
#include "disturbsim/imdb/imdb.hpp"
#include "disturbsim/media/cell_array.hpp"
#include "disturbsim/metrics/run_stats.hpp"
#include "disturbsim/traces/trace.hpp"

namespace disturbsim {

enum class CommandKind { HostRead, HostWrite, PreWriteRead, Rewrite, Writeback };

std::string_view to_string(CommandKind k);

struct Command {
    CommandKind kind = CommandKind::HostRead;
    LineAddress addr;
    std::optional<DataLine> data;
    WriteMode mode = WriteMode::Differential;
    bool prepared = false;
    std::optional<DataLine> old_data;
    TimePs enqueue_time = 0;
    std::uint64_t seq = 0;
    std::uint64_t paired_seq = 0;  ///< the HostWrite a PreWriteRead prepares

    bool is_write() const {
        return kind == CommandKind::HostWrite || kind == CommandKind::Rewrite ||
               kind == CommandKind::Writeback;
    }
    /// Rewrites and writebacks are always ready; host writes once prepared.
    bool ready() const { return kind != CommandKind::HostWrite || prepared; }
};

/// Read queue holds HostRead and PreWriteRead, write queue the three write kinds. Both
/// are kept in arrival order.
struct BankQueues {
    std::deque<Command> reads;
    std::deque<Command> writes;
    bool draining = false;

    bool empty() const { return reads.empty() && writes.empty(); }
    /// Latest queued write of any kind to `addr`.
    Command* latest_write(const LineAddress& addr);
    const Command* latest_write(const LineAddress& addr) const;
    bool has_host_write(const LineAddress& addr) const;
};

struct Selection {
    bool from_writes = false;
    std::size_t index = 0;
};

/// Priority pick for an idle bank: Rewrite, HostRead, PreWriteRead, ready write; FCFS
/// inside each class. Reaching `depth` writes starts a drain that ranks ready writes
/// above PreWriteRead until at most `watermark` writes remain. A PreWriteRead waits
/// while an older write to its line is still queued.
std::optional<Selection> select_next(BankQueues& q, std::uint32_t depth, std::uint32_t watermark);

/// Test and experiment seams.
struct EngineHooks {
    /// Called with the queues as they were when `cmd` was picked.
    std::function<void(std::uint32_t bank, const Command& cmd, const BankQueues& queues)> on_issue;
    /// Replaces the production victim policy of every bank's IMDB.
    std::function<std::unique_ptr<imdb::VictimPolicy>(const SimConfig&)> policy_factory;
};

enum class SubmitStatus { Queued, Absorbed, Served, Backpressure };

/// Discrete-event model of the module: per-bank queues and timelines over one cell
/// array, with the configured mitigation strategy in front of it.
class Engine {
public:
    explicit Engine(const SimConfig& cfg, EngineHooks hooks = {});

    /// Admits one host request at `now`. Backpressure leaves all state untouched.
    SubmitStatus submit(const TraceRecord& record, TimePs now);

    /// Folds a rewrite of `addr` into the latest queued write to that line (which
    /// becomes a Full write) or enqueues a fresh Rewrite. Returns whether it merged.
    bool merge_rewrite(const LineAddress& addr, TimePs now);

    /// Picks, removes and services the next command of an idle bank. Returns false when
    /// nothing is eligible.
    bool issue_next(std::uint32_t bank, TimePs now);

    /// Replays the trace open-loop and returns the final statistics.
    RunStats run(const Trace& trace);

    /// Final scrub, conservation check and energy; call once after the last command.
    RunStats finish();

    const BankQueues& queues(std::uint32_t bank) const { return banks_.at(bank).queues; }
    TimePs busy_until(std::uint32_t bank) const { return banks_.at(bank).busy_until; }
    const CellArray& media() const { return media_; }
    const imdb::Imdb* barrier(std::uint32_t bank) const { return banks_.at(bank).imdb.get(); }
    const WriteCache* write_cache(std::uint32_t bank) const { return banks_.at(bank).cache.get(); }
    const RunStats& stats() const { return stats_; }

private:
    struct Bank {
        BankQueues queues;
        TimePs busy_until = 0;
        std::unique_ptr<imdb::Imdb> imdb;
        std::unique_ptr<WriteCache> cache;
    };

    void enqueue(Bank& b, Command cmd, TimePs now);
    void enqueue_writeback(const Writeback& wb, TimePs now);
    TimePs service(Bank& b, Command& cmd, TimePs now);
    TimePs service_host_write(Bank& b, Command& cmd, TimePs now);
    TimePs media_write(const LineAddress& addr, const DataLine& data, WriteMode mode);
    TimePs barrier_write(Bank& b, const Command& cmd, const DataLine& old, TimePs now,
                         imdb::WriteSource source, bool& absorbed);
    void complete(TimePs t);

    SimConfig cfg_;
    EngineHooks hooks_;
    CellArray media_;
    std::vector<Bank> banks_;
    RunStats stats_;
    std::uint64_t next_seq_ = 1;
    std::uint64_t merged_ = 0;
    std::uint64_t siwc_searches_ = 0;
    std::uint64_t siwc_accesses_ = 0;
};

/// Runs a whole trace under `cfg`. Trace addresses outside the geometry raise
/// RangeError naming the record number.
RunStats run_to_completion(const SimConfig& cfg, const Trace& trace, const EngineHooks& hooks = {});

}  // namespace disturbsim
