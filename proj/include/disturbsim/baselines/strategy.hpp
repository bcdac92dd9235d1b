#pragma once

#include <optional>
#include <vector>

#include "disturbsim/core/data_line.hpp"
#include "disturbsim/core/geometry.hpp"
#include "disturbsim/imdb/imdb.hpp"
#include "disturbsim/media/cell_array.hpp"

namespace disturbsim {

using imdb::Writeback;

struct ExtraWrite {
    LineAddress addr;
    DataLine data;
    WriteMode mode = WriteMode::Full;
};

/// What a baseline mitigation did around one host write.
struct StrategyOutcome {
    std::vector<LineAddress> extra_reads;
    std::vector<ExtraWrite> extra_writes;
    bool absorbed = false;
    std::optional<Writeback> writeback;
};

}  // namespace disturbsim
