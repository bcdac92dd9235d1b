#pragma once

#include <vector>

#include "disturbsim/baselines/strategy.hpp"
#include "disturbsim/media/cell_array.hpp"

namespace disturbsim {

struct VncResult {
    StrategyOutcome outcome;
    /// The host write first, then every corrective write, in issue order.
    std::vector<WriteOutcome> media_writes;
};

/// Verify-and-correct around one write: read both row neighbours, write, read them
/// again, and rewrite (Full) any line whose cells no longer match its intended data.
/// A correction is itself verified the same way, so the wrapped write leaves no
/// divergence behind.
VncResult vnc_wrap_write(CellArray& media, const LineAddress& addr, const DataLine& data,
                         WriteMode mode = WriteMode::Differential);

}  // namespace disturbsim
